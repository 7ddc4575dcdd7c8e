"""JSON documents: schemas, parsing into validated objects, canonical printing.

Four kinds::

    {"kind": "kripke_frame", "worlds": [...], "relation": [["w", "v"], ...]}
    {"kind": "modal_algebra", "atoms": [...], "box": {"<elem>": "<elem>"}}
    {"kind": "csl", "elements": [...], "leq": [["a", "b"], ...]}
    {"kind": "map", "pairs": [["x", "y"], ...]}

Modal algebra elements are comma-joined sorted atom lists; the empty string
is bottom.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import jsonschema

from .caba import Caba
from .csl import CslLattice, validate_csl
from .errors import NotAFunction, SchemaError
from .finset import FinSet
from .modal import KripkeFrame, ModalAlgebra, validate_modal_algebra

_LABEL = {"type": "string"}
_PAIR = {"type": "array", "items": _LABEL, "minItems": 2, "maxItems": 2}
_LABELS = {"type": "array", "items": _LABEL}

SCHEMAS: dict[str, dict] = {
    "kripke_frame": {
        "type": "object",
        "properties": {
            "kind": {"const": "kripke_frame"},
            "worlds": _LABELS,
            "relation": {"type": "array", "items": _PAIR},
        },
        "required": ["kind", "worlds", "relation"],
        "additionalProperties": False,
    },
    "modal_algebra": {
        "type": "object",
        "properties": {
            "kind": {"const": "modal_algebra"},
            "atoms": {"type": "array", "items": {"type": "string", "pattern": "^[^,]+$"}},
            "box": {"type": "object", "additionalProperties": _LABEL},
        },
        "required": ["kind", "atoms", "box"],
        "additionalProperties": False,
    },
    "csl": {
        "type": "object",
        "properties": {
            "kind": {"const": "csl"},
            "elements": _LABELS,
            "leq": {"type": "array", "items": _PAIR},
        },
        "required": ["kind", "elements", "leq"],
        "additionalProperties": False,
    },
    "map": {
        "type": "object",
        "properties": {
            "kind": {"const": "map"},
            "pairs": {"type": "array", "items": _PAIR},
        },
        "required": ["kind", "pairs"],
        "additionalProperties": False,
    },
}


@dataclass(frozen=True)
class Document:
    kind: str
    value: Any  # KripkeFrame | ModalAlgebra | CslLattice | dict[str, str]


def _location(path) -> str:
    return "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in path) or "<root>"


def _check_schema(raw: Any) -> str:
    if not isinstance(raw, dict):
        raise SchemaError("document must be a JSON object", location="<root>")
    kind = raw.get("kind")
    if kind not in SCHEMAS:
        raise SchemaError(f"unknown kind {kind!r}; expected one of {sorted(SCHEMAS)}", location=".kind")
    errors = sorted(jsonschema.Draft202012Validator(SCHEMAS[kind]).iter_errors(raw), key=lambda e: list(e.path))
    if errors:
        raise SchemaError(errors[0].message, location=_location(errors[0].path))
    return kind


def parse_element(A: Caba, text: str, location: str = "") -> frozenset:
    if text == "":
        return frozenset()
    parts = text.split(",")
    for x in parts:
        if x not in A.atoms:
            raise SchemaError(f"{x!r} is not an atom", location=location)
    if len(set(parts)) != len(parts):
        raise SchemaError(f"element {text!r} repeats an atom", location=location)
    return frozenset(parts)


def format_element(a: frozenset) -> str:
    return ",".join(sorted(a))


def from_json(raw: Any) -> Document:
    """Validate a decoded JSON value against its schema and its module validator."""
    kind = _check_schema(raw)
    if kind == "kripke_frame":
        W = FinSet(raw["worlds"])
        for i, (x, y) in enumerate(raw["relation"]):
            for w in (x, y):
                if w not in W:
                    raise SchemaError(f"edge [{x!r}, {y!r}] mentions unknown world {w!r}", location=f".relation[{i}]")
        return Document(kind, KripkeFrame(W, map(tuple, raw["relation"])))
    if kind == "modal_algebra":
        A = Caba(FinSet(raw["atoms"]))
        box = {}
        for key, value in raw["box"].items():
            a = parse_element(A, key, f".box[{key!r}]")
            if a in box:
                raise SchemaError(f"element {key!r} is listed twice", location=f".box[{key!r}]")
            box[a] = parse_element(A, value, f".box[{key!r}]")
        return Document(kind, validate_modal_algebra(ModalAlgebra(A, box)))
    if kind == "csl":
        return Document(kind, validate_csl(raw["elements"], map(tuple, raw["leq"])))
    graph: dict[str, str] = {}
    for x, y in raw["pairs"]:
        if x in graph and graph[x] != y:
            raise NotAFunction(f"{x!r} is sent to both {graph[x]!r} and {y!r}", witness=x)
        graph[x] = y
    return Document(kind, graph)


def parse(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg}", location=f"line {exc.lineno} column {exc.colno}") from exc
    return from_json(raw)


def to_json(doc: Document) -> dict:
    """The canonical JSON value: sorted labels, sorted edge lists."""
    v = doc.value
    if doc.kind == "kripke_frame":
        return {"kind": doc.kind, "worlds": list(v.worlds), "relation": [list(e) for e in v.edges()]}
    if doc.kind == "modal_algebra":
        box = {format_element(a): format_element(v(a)) for a in v.base.elements()}
        return {"kind": doc.kind, "atoms": list(v.base.atoms), "box": dict(sorted(box.items()))}
    if doc.kind == "csl":
        M: CslLattice = v
        return {"kind": doc.kind, "elements": list(M.elements), "leq": [list(p) for p in M.covers()]}
    return {"kind": doc.kind, "pairs": [[x, y] for x, y in sorted(v.items())]}


def dumps(doc: Document) -> str:
    return json.dumps(to_json(doc), indent=2, ensure_ascii=False) + "\n"


def frame_document(F: KripkeFrame) -> Document:
    return Document("kripke_frame", F)


def algebra_document(MA: ModalAlgebra) -> Document:
    return Document("modal_algebra", MA)


def require_kind(doc: Document, *kinds: str) -> None:
    if doc.kind not in kinds:
        raise SchemaError(f"expected a {' or '.join(kinds)} document, got {doc.kind}", location=".kind")

