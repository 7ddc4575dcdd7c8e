import json

import pytest
from hypothesis import given, settings

from finduality.csl import chain, diamond
from finduality.documents import Document, dumps, parse, to_json
from finduality.errors import BoxViolation, DuplicateLabel, NotAFunction, NotAPoset, SchemaError
from finduality.modal import KripkeFrame, box_from_relation

from conftest import frames, lattices


def text(obj):
    return json.dumps(obj)


class TestParse:
    def test_minimal_frame(self):
        doc = parse(text({"kind": "kripke_frame", "worlds": ["w"], "relation": []}))
        assert doc.value == KripkeFrame(["w"], [])

    def test_unknown_world_names_edge(self):
        with pytest.raises(SchemaError) as info:
            parse(text({"kind": "kripke_frame", "worlds": ["0"], "relation": [["0", "0"], ["0", "9"]]}))
        assert info.value.location == ".relation[1]"
        assert "'9'" in str(info.value)

    def test_cycle_in_csl(self):
        with pytest.raises(NotAPoset) as info:
            parse(text({"kind": "csl", "elements": ["a", "b", "1"], "leq": [["a", "b"], ["b", "a"]]}))
        assert set(info.value.witness) == {"a", "b"}

    def test_schema_errors(self):
        with pytest.raises(SchemaError):
            parse("[1, 2]")
        with pytest.raises(SchemaError):
            parse(text({"kind": "lattice"}))
        with pytest.raises(SchemaError) as info:
            parse(text({"kind": "csl", "elements": ["a"], "leq": [["a"]]}))
        assert info.value.location == ".leq[0]"
        with pytest.raises(SchemaError):
            parse("{not json")

    def test_duplicate_world(self):
        with pytest.raises(DuplicateLabel):
            parse(text({"kind": "kripke_frame", "worlds": ["a", "a"], "relation": []}))

    def test_modal_algebra(self):
        doc = parse(text({"kind": "modal_algebra", "atoms": ["p"], "box": {"": "", "p": "p"}}))
        assert doc.value(frozenset()) == frozenset()

    def test_invalid_box(self):
        with pytest.raises(BoxViolation):
            parse(text({"kind": "modal_algebra", "atoms": ["p"], "box": {"": "", "p": ""}}))

    def test_unknown_atom(self):
        with pytest.raises(SchemaError):
            parse(text({"kind": "modal_algebra", "atoms": ["p"], "box": {"": "", "q": "p"}}))

    def test_map(self):
        assert parse(text({"kind": "map", "pairs": [["a", "b"]]})).value == {"a": "b"}
        with pytest.raises(NotAFunction):
            parse(text({"kind": "map", "pairs": [["a", "b"], ["a", "c"]]}))


class TestCanonical:
    @given(frames(4))
    @settings(deadline=None)
    def test_frame_round_trip(self, F):
        out = dumps(Document("kripke_frame", F))
        assert parse(out).value == F
        assert dumps(parse(out)) == out

    @given(frames(3))
    @settings(deadline=None)
    def test_algebra_round_trip(self, F):
        MA = box_from_relation(F)
        out = dumps(Document("modal_algebra", MA))
        assert parse(out).value == MA
        assert dumps(parse(out)) == out

    @given(lattices)
    @settings(deadline=None)
    def test_csl_round_trip(self, M):
        out = dumps(Document("csl", M))
        assert parse(out).value == M
        assert dumps(parse(out)) == out

    def test_canonical_sorting(self):
        raw = {"kind": "kripke_frame", "worlds": ["b", "a"], "relation": [["b", "a"], ["a", "b"]]}
        assert to_json(parse(text(raw))) == {
            "kind": "kripke_frame",
            "worlds": ["a", "b"],
            "relation": [["a", "b"], ["b", "a"]],
        }

    def test_csl_uses_covers(self):
        assert to_json(Document("csl", chain(3)))["leq"] == [["0", "m"], ["m", "1"]]
        assert len(to_json(Document("csl", diamond()))["leq"]) == 4
