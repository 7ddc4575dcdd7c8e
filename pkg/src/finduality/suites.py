"""Seeded property suites, one per acceptance criterion.

Each suite walks its exhaustive tier (and, where it samples, a random tier
seeded per case from ``f"{seed}:{suite}:{i}"``) and returns a
:class:`SuiteReport`. Reports depend only on (suite, seed, bounds); wall
time is recorded only when asked for.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from .adjoint import (
    compare_constructions,
    k_functor_finite,
    l_powerset,
    universal_extend,
    violates_fast,
    violates_naive,
)
from .caba import (
    Caba,
    CabaHom,
    check_canonical_extension,
    enumerate_complete_homs,
    free_caba,
    free_extend,
    validate_complete_hom,
)
from .csl import all_csl_homs, caba_lattice, csl_characters, sl_characters, character_label
from .duality import (
    algebra_round_trip,
    atoms_composite,
    check_square_HwP,
    coalgebra_round_trip,
    epsilon_natural,
    halgebra_round_trip,
    k_algebra_of_modal,
    powerset_composite,
    set_round_trip,
    sigma_on_algebras,
    tarski_dual_of_hom,
    tarski_dual_of_map,
    theta_natural,
    vietoris_finite,
    vietoris_map,
    zeta,
    zeta_natural,
)
from .errors import FinDualityError
from .finset import FinMap, FinSet, all_maps, powerset, powerset_map
from .generators import (
    all_box_tables,
    all_frames,
    all_lattices,
    frame_algebras,
    frames_up_to_iso,
    random_lattice,
    random_map,
    standard_caba,
    standard_set,
)
from .modal import (
    box_from_relation,
    check_cama_morphism,
    check_coalg_morphism,
    check_halg_morphism,
    check_pmorphism,
    coalgebra_of_frame,
    frame_of_coalgebra,
    halgebra_of_modal,
    is_valid_modal_algebra,
    ModalAlgebra,
    modal_of_halgebra,
    relation_from_box,
)


def to_jsonable(value: Any) -> Any:
    """Witnesses as plain JSON: sets become sorted lists, maps become dicts."""
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (frozenset, set)):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, FinMap):
        return {x: value(x) for x in value.dom}
    return repr(value)


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int = 0
    failures: list[dict] = field(default_factory=list)
    ms: float | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, case: str, ok: bool, witness: Any = None) -> None:
        self.cases += 1
        if not ok:
            self.failures.append({"case": case, "witness": to_jsonable(witness)})

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "failures": self.failures,
            "ms": self.ms,
        }


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    max_size: int | None = None
    cases: int | None = None

    def size(self, default: int) -> int:
        return default if self.max_size is None else self.max_size

    def count(self, default: int) -> int:
        return default if self.cases is None else self.cases

    def rng(self, suite: str, i: int) -> random.Random:
        return random.Random(f"{self.seed}:{suite}:{i}")


def _check(report: SuiteReport, case: str | Callable[[], str], thunk: Callable[[], Any]) -> None:
    """Run one case; a falsy result or a package error is a failure.

    ``case`` may be a callable so hot loops only format names on failure.
    """
    try:
        result = thunk()
    except FinDualityError as exc:
        ok, witness = False, {"error": type(exc).__name__, "message": str(exc)}
    else:
        ok = bool(result)
        witness = getattr(result, "witness", None) if not isinstance(result, bool) else None
    if not ok and callable(case):
        case = case()
    report.record(case, ok, witness)


def _name(obj: Any) -> str:
    if isinstance(obj, Caba):
        return f"caba{list(obj.atoms)}"
    if isinstance(obj, FinSet):
        return f"set{list(obj)}"
    if isinstance(obj, FinMap):
        return f"map{[obj(x) for x in obj.dom]}"
    return repr(obj)


# --- 1. Tarski duality ----------------------------------------------------------------


def suite_tarski(cfg: SuiteConfig) -> SuiteReport:
    r = SuiteReport("tarski", cfg.seed)
    n_max = cfg.size(4)
    for n in range(n_max + 1):
        X, A = standard_set(n), standard_caba(n)
        _check(r, f"epsilon {_name(X)}", lambda: set_round_trip(X).isomorphism)
        _check(r, f"theta {_name(A)}", lambda: algebra_round_trip(A).isomorphism)
        _check(r, f"vietoris {_name(X)}", lambda: vietoris_finite(X) == powerset(X))
    small = min(n_max, 3)
    for m, n in itertools.product(range(small + 1), repeat=2):
        X, Y = standard_set(m), standard_set(n)
        for f in all_maps(X, Y):
            case = f"{_name(X)}->{_name(Y)} {_name(f)}"
            _check(r, f"epsilon natural {case}", lambda: epsilon_natural(f))
            _check(r, f"double dual {case}", lambda: tarski_dual_of_hom(tarski_dual_of_map(f)) == f)
            _check(r, f"vietoris map {case}", lambda: vietoris_map(f) == powerset_map(f))
        A, B = standard_caba(m), standard_caba(n)
        for alpha in enumerate_complete_homs(A, B):
            case = f"{_name(A)}->{_name(B)} {_name(alpha.dual)}"
            _check(r, f"theta natural {case}", lambda: theta_natural(alpha))
            _check(r, f"table agrees {case}", lambda: _validated_equals(alpha))
    for i in range(cfg.count(20)):
        rng = cfg.rng("tarski", i)
        X, Y = standard_set(n_max), standard_set(rng.randint(1, n_max))
        f = random_map(rng, X, Y)
        _check(r, f"random epsilon natural {_name(f)}", lambda: epsilon_natural(f))
        _check(r, f"random theta natural {_name(f)}", lambda: theta_natural(tarski_dual_of_map(f)))
    return r


def _validated_equals(alpha: CabaHom) -> bool:
    return validate_complete_hom(alpha.dom, alpha.cod, alpha.table()) == alpha


# --- 2. L -| U ---------------------------------------------------------------------


def suite_adjunction(cfg: SuiteConfig) -> SuiteReport:
    r = SuiteReport("adjunction", cfg.seed)
    for M in all_lattices(cfg.size(4)):
        L = l_powerset(M)
        for k in range(3):
            A = standard_caba(k)
            case = f"{list(M.elements)}/{_name(A)}"
            _check(r, f"hom counts {case}", lambda: _hom_counts_agree(M, L, A))
            for gamma in all_csl_homs(M, caba_lattice(A)):
                _check(r, f"unique extension {case} {_name(gamma.graph)}", lambda: _unique_extension(L, A, gamma))
    return r


def _hom_counts_agree(M, L, A) -> bool:
    left = sum(1 for _ in all_csl_homs(M, caba_lattice(A)))
    right = 0
    for alpha in enumerate_complete_homs(L.algebra, A):
        validate_complete_hom(alpha.dom, alpha.cod, alpha.table())
        right += 1
    return left == right


def _unique_extension(L, A, gamma) -> bool:
    tau = universal_extend(L, A, gamma)
    M = L.source
    matches = [
        alpha
        for alpha in enumerate_complete_homs(L.algebra, A)
        if all(A.label(alpha(L.iota(m))) == gamma(m) for m in M)
    ]
    return matches == [tau]


# --- 3. two constructions of L ---------------------------------------------------------


def suite_constructions(cfg: SuiteConfig) -> SuiteReport:
    r = SuiteReport("constructions", cfg.seed)
    for M in all_lattices(cfg.size(5)):
        _check(r, f"exhaustive {list(M.elements)} {sorted(M.covers())}", lambda: _constructions_agree(M))
    for i in range(cfg.count(200)):
        M = random_lattice(cfg.rng("constructions", i), 8)
        _check(r, f"random {i} {list(M.elements)} {sorted(M.covers())}", lambda: _constructions_agree(M))
    return r


def _constructions_agree(M) -> bool:
    w = compare_constructions(M)
    P = w.powerset
    return w.hom.is_isomorphism() and all(
        w.hom(w.quotient.box(m)) == P.iota(m) == image for m, (_, image) in w.generator_map.items()
    )


# --- 4. free CABA -------------------------------------------------------------------


def suite_free(cfg: SuiteConfig) -> SuiteReport:
    r = SuiteReport("free", cfg.seed)
    for n in range(cfg.size(2) + 1):
        X = standard_set(n)
        F = free_caba(X)
        for k in range(3):
            A = standard_caba(k)
            carrier = list(A.elements())
            for images in itertools.product(carrier, repeat=n):
                g = dict(zip(X.elements, images))
                case = f"{_name(X)}->{_name(A)} {[A.label(a) for a in images]}"
                _check(r, case, lambda: _exactly_one_extension(X, F, A, g))
    return r


def _exactly_one_extension(X, F, A, g) -> bool:
    found = [h for h in enumerate_complete_homs(F.algebra, A) if all(h(F.gen(x)) == g[x] for x in X)]
    return found == [free_extend(X, A, g)]


# --- 5. H P = P P -------------------------------------------------------------------


def suite_hwp(cfg: SuiteConfig) -> SuiteReport:
    r = SuiteReport("hwp", cfg.seed)
    small = min(cfg.size(3), 3)
    for m, n in itertools.product(range(small + 1), repeat=2):
        X, Y = standard_set(m), standard_set(n)
        for f in all_maps(X, Y):
            _check(r, f"{_name(X)}->{_name(Y)} {_name(f)}", lambda: check_square_HwP(f))
    if cfg.size(3) >= 3:
        X4 = standard_set(4)
        for i in range(cfg.count(100)):
            rng = cfg.rng("hwp", i)
            X = X4 if rng.random() < 0.5 else standard_set(rng.randint(1, 4))
            Y = X4 if X != X4 else standard_set(rng.randint(1, 4))
            f = random_map(rng, X, Y)
            _check(r, f"sampled {_name(X)}->{_name(Y)} {_name(f)}", lambda: check_square_HwP(f))
    return r


# --- 6. category isomorphisms ----------------------------------------------------------


def suite_isomorphisms(cfg: SuiteConfig) -> SuiteReport:
    r = SuiteReport("isomorphisms", cfg.seed)
    worlds = cfg.size(3)
    for n in range(worlds + 1):
        for F in all_frames(n):
            _check(r, lambda: f"R->rho->R {F!r}", lambda: frame_of_coalgebra(coalgebra_of_frame(F)) == F)
            C = coalgebra_of_frame(F)
            _check(r, lambda: f"rho->R->rho {F!r}", lambda: coalgebra_of_frame(frame_of_coalgebra(C)) == C)
    reps = [F for n in range(worlds + 1) for F in frames_up_to_iso(n)]
    for F1, F2 in itertools.product(reps, repeat=2):
        C1, C2 = coalgebra_of_frame(F1), coalgebra_of_frame(F2)
        for f in all_maps(F1.worlds, F2.worlds):
            _check(
                r,
                lambda: f"pmorphism vs coalgebra {F1!r} {F2!r} {_name(f)}",
                lambda: bool(check_pmorphism(F1, F2, f)) == bool(check_coalg_morphism(C1, C2, f)),
            )
    valid = []
    for k in range(min(cfg.size(3), 2) + 1):
        for MA in all_box_tables(standard_caba(k)):
            if is_valid_modal_algebra(MA):
                valid.append(MA)
    for MA in valid:
        _check(r, f"box->tau->box {_box_name(MA)}", lambda: modal_of_halgebra(halgebra_of_modal(MA)) == MA)
        H = halgebra_of_modal(MA)
        _check(r, f"tau->box->tau {_box_name(MA)}", lambda: halgebra_of_modal(modal_of_halgebra(H)) == H)
    for MA1, MA2 in itertools.product(valid, repeat=2):
        H1, H2 = halgebra_of_modal(MA1), halgebra_of_modal(MA2)
        for alpha in enumerate_complete_homs(MA1.base, MA2.base):
            case = lambda: f"cama vs halg {_box_name(MA1)} {_box_name(MA2)} {_name(alpha.dual)}"  # noqa: E731
            _check(r, case, lambda: _morphism_notions_agree(MA1, MA2, H1, H2, alpha))
    return r


def _box_name(MA) -> str:
    A = MA.base
    return "{" + ", ".join(f"{A.label(a)}:{A.label(MA(a))}" for a in A.elements()) + "}"


def _morphism_notions_agree(MA1, MA2, H1, H2, alpha) -> bool:
    cama = bool(check_cama_morphism(MA1, MA2, alpha))
    on_generators = bool(check_halg_morphism(H1, H2, alpha))
    full = bool(check_halg_morphism(H1, H2, alpha, full=True))
    return cama == on_generators == full


# --- 7. lifted duality and Thomason composites --------------------------------------


def suite_thomason(cfg: SuiteConfig) -> SuiteReport:
    r = SuiteReport("thomason", cfg.seed)
    for n in range(cfg.size(4) + 1):
        for F in all_frames(n):
            MA = box_from_relation(F)
            _check(r, lambda: f"M.lift_wp.C {F!r}", lambda: powerset_composite(F) == MA)
            _check(r, lambda: f"at of P-dual {F!r}", lambda: relation_from_box(MA) == F)
    atoms = min(cfg.size(4), 3)
    for MA in frame_algebras(atoms):
        _check(r, f"F.lift_at.A {_box_name(MA)}", lambda: atoms_composite(MA) == relation_from_box(MA))
        _check(r, f"P of at-dual {_box_name(MA)}", lambda: box_from_relation(relation_from_box(MA)) == MA)
        H = halgebra_of_modal(MA)
        _check(r, f"lifted round trip H {_box_name(MA)}", lambda: halgebra_round_trip(H))
        C = coalgebra_of_frame(relation_from_box(MA))
        _check(r, f"lifted round trip C {_box_name(MA)}", lambda: coalgebra_round_trip(C))
    for m, n in itertools.product(range(atoms + 1), repeat=2):
        A, B = standard_caba(m), standard_caba(n)
        _check(r, f"zeta bijective {_name(A)}", lambda: zeta(A).is_bijective())
        for alpha in enumerate_complete_homs(A, B):
            _check(r, f"zeta natural {_name(A)}->{_name(B)} {_name(alpha.dual)}", lambda: zeta_natural(alpha))
    return r


# --- 8. kernel oracle --------------------------------------------------------------------


def suite_kernel(cfg: SuiteConfig) -> SuiteReport:
    r = SuiteReport("kernel", cfg.seed)
    for M in all_lattices(cfg.size(5)):
        elems = M.elements.elements
        for bits in itertools.product((False, True), repeat=len(elems)):
            ones = frozenset(x for x, b in zip(elems, bits) if b)
            case = f"{list(elems)} {sorted(M.covers())} ones={sorted(ones)}"
            _check(r, case, lambda: violates_fast(M, ones) == violates_naive(M, ones))
    return r


# --- 9. finite shadows ----------------------------------------------------------------


def suite_shadows(cfg: SuiteConfig) -> SuiteReport:
    r = SuiteReport("shadows", cfg.seed)
    for k in range(4):
        A = standard_caba(k)
        _check(r, f"K = H {_name(A)}", lambda: k_functor_finite(A).iso_to_h.is_isomorphism())
    for M in all_lattices(cfg.size(6)):
        _check(r, f"sl = csl {list(M.elements)} {sorted(M.covers())}", lambda: _characters_agree(M))
    for k in range(5):
        A = standard_caba(k)
        _check(r, f"canonical extension {_name(A)}", lambda: check_canonical_extension(A).ok)
    for k in range(3):
        A = standard_caba(k)
        K = k_functor_finite(A)
        for alpha in enumerate_complete_homs(K.algebra, A):
            _check(r, f"sigma {_name(A)} {_name(alpha.dual)}", lambda: sigma_on_algebras(A, alpha).ok)
        for F in all_frames(k):
            MA = _relabel(box_from_relation(F), A)
            _check(r, f"sigma via box {_box_name(MA)}", lambda: sigma_on_algebras(A, k_algebra_of_modal(MA)).ok)
    return r


def _relabel(MA, A):
    """Frames use worlds 0, 1, ...; move the box onto the standard atoms of A."""
    rename = dict(zip(MA.base.atoms.elements, A.atoms.elements))

    def move(a):
        return frozenset(rename[x] for x in a)

    return ModalAlgebra(A, {move(a): move(b) for a, b in MA.box.items()})


def _characters_agree(M) -> bool:
    sl = [character_label(chi) for _, chi in sl_characters(M).characters]
    cs = [character_label(chi) for _, chi in csl_characters(M)]
    return sl == cs


SUITES: dict[str, Callable[[SuiteConfig], SuiteReport]] = {
    "tarski": suite_tarski,
    "adjunction": suite_adjunction,
    "constructions": suite_constructions,
    "free": suite_free,
    "hwp": suite_hwp,
    "isomorphisms": suite_isomorphisms,
    "thomason": suite_thomason,
    "kernel": suite_kernel,
    "shadows": suite_shadows,
}


def run_suite(name: str, cfg: SuiteConfig, timing: bool = False) -> SuiteReport:
    start = time.perf_counter()
    report = SUITES[name](cfg)
    if timing:
        report.ms = round((time.perf_counter() - start) * 1000, 1)
    return report


def run_suites(names: list[str] | None, cfg: SuiteConfig, timing: bool = False) -> Iterator[SuiteReport]:
    for name in names or list(SUITES):
        yield run_suite(name, cfg, timing)
