import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finduality.caba import Caba
from finduality.csl import (
    TWO,
    all_csl_homs,
    caba_lattice,
    chain,
    character_bijection,
    character_label,
    character_leq,
    csl_characters,
    csl_left_adjoint,
    diamond,
    identity_csl_hom,
    sigma,
    sl_characters,
    validate_csl,
    validate_csl_hom,
)
from finduality.errors import MeetViolation, NoMeet, NoTop, NotAPoset, UnknownLabel
from finduality.generators import all_lattices

from conftest import LATTICES_UP_TO_4, lattices

C3 = chain(3)
D = diamond()
PQ = caba_lattice(Caba.on("pq"))


def brute_meet(M, S):
    lower = [x for x in M if all(M.leq(x, s) for s in S)]
    glb = [g for g in lower if all(M.leq(x, g) for x in lower)]
    assert len(glb) == 1
    return glb[0]


class TestValidateCsl:
    def test_chain(self):
        assert C3.meet("m", "1") == "m" and C3.meet("0", "m") == "0"
        assert C3.top == "1" and C3.bottom == "0"

    def test_no_top(self):
        with pytest.raises(NoTop):
            validate_csl(["0", "a", "b"], [("0", "a"), ("0", "b")])

    def test_diamond(self):
        assert D.meet("x", "y") == brute_meet(D, ["x", "y"]) == "0"
        assert D.join("x", "y") == "1"

    def test_cycle(self):
        with pytest.raises(NotAPoset) as info:
            validate_csl(["a", "b"], [("a", "b"), ("b", "a")])
        assert set(info.value.witness) == {"a", "b"}

    def test_no_meet(self):
        # two incomparable lower bounds under a and b
        labels = ["c", "d", "a", "b", "1"]
        leq = [("c", "a"), ("c", "b"), ("d", "a"), ("d", "b"), ("a", "1"), ("b", "1")]
        with pytest.raises(NoMeet):
            validate_csl(labels, leq)

    def test_unknown_label(self):
        with pytest.raises(UnknownLabel):
            validate_csl(["a"], [("a", "z")])

    @given(lattices)
    @settings(max_examples=60, deadline=None)
    def test_finite_completeness(self, M):
        elems = list(M)
        assert M.meet_all([]) == M.top
        for r in range(1, len(elems) + 1):
            for S in itertools.combinations(elems, r):
                assert M.meet_all(S) == brute_meet(M, S)


class TestCslHom:
    def test_identity(self):
        validate_csl_hom(C3, C3, {x: x for x in C3})

    def test_constant_top(self):
        validate_csl_hom(C3, C3, {x: "1" for x in C3})

    def test_rejects_meet_violation(self):
        with pytest.raises(MeetViolation) as info:
            validate_csl_hom(C3, TWO, {"0": "1", "m": "0", "1": "1"})
        assert set(info.value.witness) == {"0", "m"}


class TestCharacters:
    def test_counts(self):
        assert len(csl_characters(validate_csl(["1"], []))) == 1
        assert len(csl_characters(C3)) == 3
        assert len(csl_characters(D)) == 4

    def test_counts_match_brute_force_homs(self):
        for M in (C3, D):
            assert len(csl_characters(M)) == sum(1 for _ in all_csl_homs(M, TWO))

    def test_bijection_examples(self):
        b = character_bijection(C3)
        assert b("0") == character_label(sigma(C3, "0")) == "{0,1,m}"
        assert b("1") == "{1}"
        assert character_bijection(D).is_bijective()

    @given(lattices)
    @settings(max_examples=40, deadline=None)
    def test_order_reversal(self, M):
        for a, b in itertools.product(M, repeat=2):
            assert M.leq(a, b) == character_leq(sigma(M, b), sigma(M, a))

    @given(lattices)
    @settings(max_examples=40, deadline=None)
    def test_sl_equals_csl(self, M):
        sl = [character_label(chi) for _, chi in sl_characters(M).characters]
        assert sl == [character_label(chi) for _, chi in csl_characters(M)]
        assert len(sl) == len(M)

    def test_sl_up_to_7(self):
        for M in all_lattices(7):
            sl = {character_label(chi) for _, chi in sl_characters(M).characters}
            assert sl == {character_label(chi) for _, chi in csl_characters(M)}

    def test_i_map_on_diamond(self):
        i_map = sl_characters(D).i_map
        assert i_map["x"] == {character_label(sigma(D, a)) for a in D if D.leq(a, "x")}


class TestLeftAdjoint:
    def test_identity(self):
        g = csl_left_adjoint(identity_csl_hom(C3))
        assert dict(g.graph) == {x: x for x in C3}

    def test_chain_into_caba(self):
        gamma = validate_csl_hom(C3, PQ, {"0": "{}", "m": "{p}", "1": "{p,q}"})
        g = csl_left_adjoint(gamma)
        assert (g("{p}"), g("{q}"), g("{}"), g("{p,q}")) == ("m", "1", "0", "1")

    def test_constant_top(self):
        gamma = validate_csl_hom(C3, C3, {x: "1" for x in C3})
        assert set(csl_left_adjoint(gamma).graph.values()) == {"0"}

    @given(st.sampled_from(LATTICES_UP_TO_4), st.sampled_from(LATTICES_UP_TO_4))
    @settings(max_examples=40, deadline=None)
    def test_adjunction(self, M, N):
        for gamma in all_csl_homs(M, N):
            g = csl_left_adjoint(gamma)
            for n, a in itertools.product(N, M):
                assert M.leq(g(n), a) == N.leq(n, gamma(a))
