"""Command line interface.

Exit codes: 0 success, 1 a property or verdict failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .adjoint import compare_constructions, l_powerset, l_quotient
from .caba import enumerate_complete_homs, free_caba, free_extend, validate_complete_hom
from .csl import validate_csl_hom
from .documents import (
    Document,
    algebra_document,
    dumps,
    format_element,
    frame_document,
    parse,
    parse_element,
    require_kind,
)
from .duality import find_cama_iso, find_frame_iso
from .errors import (
    AmbientMismatch,
    BoundExceeded,
    ConstructionMismatch,
    MeetViolation,
    NotAHomomorphism,
    NotComplete,
    SchemaError,
    TopViolation,
    ValidationError,
)
from .finset import FinMap, check_bound
from .generators import standard_set
from .modal import (
    Verdict,
    box_from_relation,
    check_coalg_morphism,
    check_halg_morphism,
    check_pmorphism,
    coalgebra_of_frame,
    halgebra_of_modal,
    relation_from_box,
)
from .suites import SUITES, SuiteConfig, run_suites, to_jsonable

INPUT_ERRORS = (SchemaError, ValidationError, BoundExceeded, AmbientMismatch, OSError)


def _load(path: str) -> Document:
    return parse(Path(path).read_text(encoding="utf-8"))


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))


def _verdict(v: Verdict) -> int:
    _emit({"ok": v.ok, "witness": to_jsonable(v.witness), "reason": v.reason})
    return 0 if v.ok else 1


# --- subcommands ----------------------------------------------------------------------


def cmd_validate(args) -> int:
    doc = _load(args.file)
    print(f"ok: valid {doc.kind} document")
    return 0


def cmd_dual(args) -> int:
    doc = _load(args.file)
    require_kind(doc, "kripke_frame", "modal_algebra")
    if doc.kind == "kripke_frame":
        out = algebra_document(box_from_relation(doc.value))
    else:
        out = frame_document(relation_from_box(doc.value))
    text = dumps(out)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_roundtrip(args) -> int:
    doc = _load(args.file)
    require_kind(doc, "kripke_frame", "modal_algebra")
    if doc.kind == "kripke_frame":
        back = relation_from_box(box_from_relation(doc.value))
        iso = find_frame_iso(doc.value, back)
        graph = None if iso is None else dict(iso.graph)
        result = frame_document(back)
    else:
        back = box_from_relation(relation_from_box(doc.value))
        alpha = find_cama_iso(doc.value, back)
        graph = None if alpha is None else {x: alpha.dual(x) for x in back.base.atoms}
        result = algebra_document(back)
    _emit({"kind": doc.kind, "double_dual": json.loads(dumps(result)), "iso": graph})
    return 0 if graph is not None else 1


def cmd_check_map(args) -> int:
    d1, d2, dm = _load(args.first), _load(args.second), _load(args.map)
    require_kind(dm, "map")
    pairs = dm.value
    if args.kind in ("pmorphism", "coalg"):
        require_kind(d1, "kripke_frame")
        require_kind(d2, "kripke_frame")
        F1, F2 = d1.value, d2.value
        f = FinMap(F1.worlds, F2.worlds, pairs)
        if args.kind == "pmorphism":
            return _verdict(check_pmorphism(F1, F2, f))
        return _verdict(check_coalg_morphism(coalgebra_of_frame(F1), coalgebra_of_frame(F2), f))
    if args.kind == "cslhom":
        require_kind(d1, "csl")
        require_kind(d2, "csl")
        try:
            validate_csl_hom(d1.value, d2.value, pairs)
        except (TopViolation, MeetViolation) as exc:
            return _verdict(Verdict(False, exc.witness, str(exc)))
        return _verdict(Verdict(True))
    require_kind(d1, "modal_algebra")
    require_kind(d2, "modal_algebra")
    MA1, MA2 = d1.value, d2.value
    A, B = MA1.base, MA2.base
    table = {}
    for key, value in pairs.items():
        table[parse_element(A, key, f".pairs[{key!r}]")] = parse_element(B, value, f".pairs[{key!r}]")
    try:
        alpha = validate_complete_hom(A, B, table)
    except (NotAHomomorphism, NotComplete) as exc:
        return _verdict(Verdict(False, exc.witness, str(exc)))
    if args.kind == "cabahom":
        return _verdict(Verdict(True))
    return _verdict(check_halg_morphism(halgebra_of_modal(MA1), halgebra_of_modal(MA2), alpha, full=True))


def cmd_left_adjoint(args) -> int:
    doc = _load(args.file)
    require_kind(doc, "csl")
    M = doc.value
    out: dict = {"elements": list(M.elements), "method": args.method}
    if args.method in ("powerset", "both"):
        L = l_powerset(M)
        out["powerset"] = {
            "atoms": list(L.algebra.atoms),
            "size": L.algebra.size,
            "iota": {m: sorted(L.iota(m)) for m in M},
        }
    if args.method in ("congruence", "both"):
        Q = l_quotient(M)
        out["congruence"] = {
            "valuations": len(Q.valuations),
            "kernel_atoms": sorted(Q.kernel_element),
            "atoms": list(Q.algebra.atoms),
            "size": Q.algebra.size,
            "box": {m: sorted(Q.box(m)) for m in M},
        }
    if args.method == "both":
        w = compare_constructions(M)
        out["iso"] = {
            "atoms": {v: w.hom.dual.inverse()(v) for v in w.quotient.algebra.atoms},
            "generators": {m: {"box": sorted(b), "down": sorted(d)} for m, (b, d) in w.generator_map.items()},
        }
    _emit(out)
    return 0


def cmd_free_caba(args) -> int:
    check_bound(args.n, 4, "generator set")
    X = standard_set(args.n)
    F = free_caba(X)
    out: dict = {
        "generators": list(X),
        "atoms": list(F.algebra.atoms),
        "size": F.algebra.size,
        "gen": {x: sorted(F.gen(x)) for x in X},
    }
    if (args.target is None) != (args.gen is None):
        raise SchemaError("--target and --gen must be given together", location="arguments")
    status = 0
    if args.target is not None:
        dt, dg = _load(args.target), _load(args.gen)
        require_kind(dt, "modal_algebra")
        require_kind(dg, "map")
        A = dt.value.base
        for x in dg.value:
            X.require(x)
        missing = [x for x in X if x not in dg.value]
        if missing:
            raise SchemaError(f"generator map is missing {missing}", location=".pairs")
        g = {x: parse_element(A, dg.value[x], f".pairs[{x!r}]") for x in X}
        found = [h for h in enumerate_complete_homs(F.algebra, A) if all(h(F.gen(x)) == g[x] for x in X)]
        psi = free_extend(X, A, g)
        unique = found == [psi]
        out["extension"] = {
            "count": len(found),
            "unique": unique,
            "dual": {a: psi.dual(a) for a in A.atoms},
            "images": {v: format_element(psi(frozenset((v,)))) for v in F.algebra.atoms},
        }
        status = 0 if unique else 1
    _emit(out)
    return status


def cmd_suite(args) -> int:
    cfg = SuiteConfig(seed=args.seed, max_size=args.max_size, cases=args.cases)
    names = [args.only] if args.only else None
    reports = list(run_suites(names, cfg, timing=args.timing))
    if args.json:
        print(json.dumps([r.as_dict() for r in reports], indent=2, sort_keys=True, ensure_ascii=False))
    else:
        for r in reports:
            status = "PASS" if r.ok else "FAIL"
            timing = f" {r.ms} ms" if r.ms is not None else ""
            print(f"{status} {r.suite}: {r.cases} cases, {len(r.failures)} failures{timing}")
            for failure in r.failures[:5]:
                print(f"    {failure['case']}: {json.dumps(failure['witness'], ensure_ascii=False)}")
    return 0 if all(r.ok for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="finduality", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="parse and validate a document")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("dual", help="frame to modal algebra or back")
    s.add_argument("file")
    s.add_argument("--out")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("roundtrip", help="dualize twice and report the isomorphism")
    s.add_argument("file")
    s.set_defaults(func=cmd_roundtrip)

    s = sub.add_parser("check-map", help="check a morphism between two documents")
    s.add_argument("--kind", required=True, choices=["pmorphism", "cslhom", "cabahom", "coalg", "halg"])
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("map")
    s.set_defaults(func=cmd_check_map)

    s = sub.add_parser("left-adjoint", help="summarize L(M) for a csl document")
    s.add_argument("file")
    s.add_argument("--method", choices=["powerset", "congruence", "both"], default="powerset")
    s.set_defaults(func=cmd_left_adjoint)

    s = sub.add_parser("free-caba", help="free CABA on N generators")
    s.add_argument("n", type=int)
    s.add_argument("--target")
    s.add_argument("--gen")
    s.set_defaults(func=cmd_free_caba)

    s = sub.add_parser("suite", help="run the property suites")
    s.add_argument("--only", choices=list(SUITES))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-size", type=int)
    s.add_argument("--cases", type=int)
    s.add_argument("--json", action="store_true")
    s.add_argument("--timing", action="store_true", help="record wall time (reports stop being reproducible)")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ConstructionMismatch as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
