import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finduality.adjoint import (
    compare_constructions,
    h_functor,
    h_on_morphism,
    k_functor_finite,
    k_on_morphism,
    kernel_generator_naive,
    l_on_morphism,
    l_powerset,
    l_quotient,
    l_quotient_on_morphism,
    singleton_decomposition,
    tau_by_formula,
    universal_extend,
    violates_fast,
    violates_naive,
    xi_iso,
)
from finduality.caba import Caba, compose_homs, enumerate_complete_homs, identity_hom
from finduality.csl import (
    all_csl_homs,
    cabahom_as_cslhom,
    caba_lattice,
    chain,
    compose_csl_homs,
    csl_characters,
    diamond,
    identity_csl_hom,
    validate_csl,
    validate_csl_hom,
)
from finduality.finset import FinMap, FinSet
from finduality.duality import tarski_dual_of_map

from conftest import LATTICES_UP_TO_4, LATTICES_UP_TO_5, lattices

ONE = validate_csl(["1"], [])
C2, C3, D = chain(2), chain(3), diamond()
PQ = Caba.on("pq")


def homs_satisfying_unit(L, A, gamma):
    return [
        alpha
        for alpha in enumerate_complete_homs(L.algebra, A)
        if all(A.label(alpha(L.iota(m))) == gamma(m) for m in L.source)
    ]


class TestLPowerset:
    def test_sizes(self):
        assert l_powerset(ONE).algebra.size == 2
        assert l_powerset(ONE).iota("1") == {"1"}
        assert l_powerset(C3).algebra.size == 8
        assert l_powerset(C3).iota("m") == {"0", "m"}
        assert l_powerset(D).algebra.size == 16

    @given(lattices)
    @settings(max_examples=30, deadline=None)
    def test_iota_preserves_all_meets(self, M):
        L = l_powerset(M)
        elems = list(M)
        for r in range(len(elems) + 1):
            for S in itertools.combinations(elems, r):
                assert L.iota(M.meet_all(S)) == L.algebra.meet_all(L.iota(s) for s in S)

    def test_singleton_decomposition(self):
        assert singleton_decomposition(l_powerset(C3), "0") == {"0"}
        assert singleton_decomposition(l_powerset(C3), "m") == {"m"}
        assert singleton_decomposition(l_powerset(D), "1") == {"1"}

    @given(lattices)
    @settings(max_examples=30, deadline=None)
    def test_singleton_decomposition_everywhere(self, M):
        L = l_powerset(M)
        for a in M:
            assert singleton_decomposition(L, a) == {a}


class TestUniversalExtend:
    def test_unit_extends_to_identity(self):
        L = l_powerset(C3)
        A = L.algebra
        iota = validate_csl_hom(C3, caba_lattice(A), {m: A.label(L.iota(m)) for m in C3})
        assert universal_extend(L, A, iota) == identity_hom(A)

    def test_chain_example(self):
        L = l_powerset(C3)
        gamma = validate_csl_hom(C3, caba_lattice(PQ), {"0": "{}", "m": "{p}", "1": "{p,q}"})
        tau = universal_extend(L, PQ, gamma)
        assert tau(frozenset({"m"})) == {"p"}
        assert tau(frozenset({"m", "1"})) == PQ.top
        assert tau(frozenset()) == PQ.bottom
        assert tau_by_formula(L, PQ, gamma, {"m", "1"}) == PQ.top

    @given(st.sampled_from(LATTICES_UP_TO_4), st.integers(0, 3))
    @settings(max_examples=30, deadline=None)
    def test_unit_law(self, M, k):
        A = Caba.on("pqr"[:k])
        L = l_powerset(M)
        for gamma in all_csl_homs(M, caba_lattice(A)):
            tau = universal_extend(L, A, gamma)
            assert all(A.label(tau(L.iota(m))) == gamma(m) for m in M)

    @given(st.sampled_from([M for M in LATTICES_UP_TO_4 if len(M) <= 3]), st.integers(0, 2))
    @settings(max_examples=20, deadline=None)
    def test_uniqueness_and_hom_counts(self, M, k):
        A = Caba.on("pq"[:k])
        L = l_powerset(M)
        gammas = list(all_csl_homs(M, caba_lattice(A)))
        assert len(gammas) == sum(1 for _ in enumerate_complete_homs(L.algebra, A))
        for gamma in gammas:
            assert homs_satisfying_unit(L, A, gamma) == [universal_extend(L, A, gamma)]


class TestLOnMorphism:
    def test_identity(self):
        assert l_on_morphism(identity_csl_hom(C3)) == identity_hom(l_powerset(C3).algebra)

    def test_collapse(self):
        gamma = validate_csl_hom(C3, C2, {"0": "0", "m": "0", "1": "1"})
        assert l_on_morphism(gamma)(l_powerset(C3).iota("m")) == {"0"}

    @given(st.sampled_from(LATTICES_UP_TO_4), st.sampled_from(LATTICES_UP_TO_4), st.sampled_from(LATTICES_UP_TO_4), st.data())
    @settings(max_examples=25, deadline=None)
    def test_composition(self, M, N, P, data):
        g = data.draw(st.sampled_from(list(all_csl_homs(M, N))))
        h = data.draw(st.sampled_from(list(all_csl_homs(N, P))))
        lhs = l_on_morphism(compose_csl_homs(h, g))
        assert lhs == compose_homs(l_on_morphism(h), l_on_morphism(g))
        Lq = compose_homs(l_quotient_on_morphism(h), l_quotient_on_morphism(g))
        assert Lq == l_quotient_on_morphism(compose_csl_homs(h, g))


class TestQuotient:
    def test_examples(self):
        assert len(l_quotient(ONE).kernel_complement) == 1 and l_quotient(ONE).algebra.size == 2
        assert len(l_quotient(C3).kernel_complement) == 3 and l_quotient(C3).algebra.size == 8
        assert len(l_quotient(D).kernel_complement) == 4 and l_quotient(D).algebra.size == 16

    @given(lattices)
    @settings(max_examples=30, deadline=None)
    def test_kernel_complement_is_characters(self, M):
        Q = l_quotient(M)
        survivors = {frozenset(Q.free.ones(v)) for v in Q.kernel_complement}
        assert survivors == {frozenset(m for m in M if chi(m) == "1") for _, chi in csl_characters(M)}

    @given(st.sampled_from([M for M in LATTICES_UP_TO_5 if len(M) <= 4]))
    @settings(max_examples=20, deadline=None)
    def test_kernel_generator_matches_naive_join(self, M):
        Q = l_quotient(M)
        assert kernel_generator_naive(M, Q.free) == Q.kernel_element

    @given(lattices)
    @settings(max_examples=30, deadline=None)
    def test_generator_classes_preserve_meets(self, M):
        Q = l_quotient(M)
        elems = list(M)
        for r in range(len(elems) + 1):
            for S in itertools.combinations(elems, r):
                assert Q.box(M.meet_all(S)) == Q.algebra.meet_all(Q.box(s) for s in S)

    def test_fast_equals_naive_exhaustive(self):
        for M in LATTICES_UP_TO_5:
            elems = list(M)
            for r in range(len(elems) + 1):
                for ones in itertools.combinations(elems, r):
                    assert violates_fast(M, frozenset(ones)) == violates_naive(M, frozenset(ones))


class TestCompare:
    @pytest.mark.parametrize("M, size", [(ONE, 2), (C3, 8), (D, 16)])
    def test_examples(self, M, size):
        w = compare_constructions(M)
        assert w.hom.is_isomorphism() and w.powerset.algebra.size == size
        for m in M:
            assert w.hom(w.quotient.box(m)) == w.powerset.iota(m)

    @given(lattices)
    @settings(max_examples=30, deadline=None)
    def test_random(self, M):
        assert compare_constructions(M).hom.is_isomorphism()


class TestH:
    def test_sizes(self):
        assert h_functor(Caba.on([])).algebra.size == 2
        assert h_functor(Caba.on("w")).algebra.size == 4
        assert h_functor(Caba.on("01")).algebra.size == 16

    def test_identity(self):
        A = Caba.on("01")
        assert h_on_morphism(identity_hom(A)) == identity_hom(h_functor(A).algebra)

    @given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.data())
    @settings(max_examples=25, deadline=None)
    def test_composition(self, i, j, k, data):
        A, B, C = Caba.on("pq"[:i]), Caba.on("pq"[:j]), Caba.on("pq"[:k])
        ab, bc = list(enumerate_complete_homs(A, B)), list(enumerate_complete_homs(B, C))
        if not ab or not bc:
            return
        f, g = data.draw(st.sampled_from(ab)), data.draw(st.sampled_from(bc))
        lhs = h_on_morphism(compose_homs(g, f))
        assert lhs == compose_homs(h_on_morphism(g), h_on_morphism(f))
        H = h_functor(A).algebra
        assert all(lhs(S) == h_on_morphism(g)(h_on_morphism(f)(S)) for S in H.elements())

    def test_generators_sent_to_generators(self):
        A = Caba.on("pq")
        for alpha in enumerate_complete_homs(A, Caba.on("r")):
            HA, HB = h_functor(A), h_functor(alpha.cod)
            for a in A.elements():
                assert h_on_morphism(alpha)(HA.down(a)) == HB.down(alpha(a))


class TestXi:
    def test_empty(self):
        assert xi_iso(FinSet()).hom.is_isomorphism()

    def test_singleton_generators(self):
        xi = xi_iso(FinSet("a"))
        assert xi.hom.is_isomorphism()
        assert {m: sorted(d) for m, (_, d) in xi.generators.items()} == {"{}": ["{}"], "{a}": ["{a}", "{}"]}

    def test_naturality(self):
        f = FinMap(FinSet("a"), FinSet("b"), {"a": "b"})
        xa, xb = xi_iso(f.dom), xi_iso(f.cod)
        on_h = h_on_morphism(tarski_dual_of_map(f))
        on_q = l_quotient_on_morphism(cabahom_as_cslhom(tarski_dual_of_map(f)))
        for S in xb.hom.dom.elements():
            assert xa.hom(on_q(S)) == on_h(xb.hom(S))


class TestK:
    def test_sizes(self):
        assert k_functor_finite(Caba.on([])).algebra.size == 2
        assert k_functor_finite(Caba.on("w")).algebra.size == 4
        K = k_functor_finite(Caba.on("01"))
        assert K.algebra.size == 16 and K.iso_to_h.is_isomorphism()

    def test_identity(self):
        A = Caba.on("01")
        assert k_on_morphism(identity_hom(A)) == identity_hom(k_functor_finite(A).algebra)

    def test_iso_natural(self):
        A, B = Caba.on("pq"), Caba.on("r")
        for alpha in enumerate_complete_homs(A, B):
            KA, KB = k_functor_finite(A), k_functor_finite(B)
            lhs = compose_homs(KB.iso_to_h, k_on_morphism(alpha))
            rhs = compose_homs(h_on_morphism(alpha), KA.iso_to_h)
            assert lhs == rhs
