import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finduality.caba import (
    Caba,
    adjoint_by_meets,
    check_canonical_extension,
    compose_homs,
    enumerate_complete_homs,
    free_caba,
    free_extend,
    identity_hom,
    is_ultrafilter,
    left_adjoint,
    minimal_nonzero,
    stone_hom,
    tarski_unit_alg,
    theta,
    ultrafilters,
    validate_complete_hom,
)
from finduality.errors import BoundExceeded, NotAHomomorphism
from finduality.finset import FinMap, FinSet

from conftest import cabas, labelled_cabas


def all_tables(dom, cod):
    carrier, targets = list(dom.elements()), list(cod.elements())
    for images in itertools.product(targets, repeat=len(carrier)):
        yield dict(zip(carrier, images))


def valid_homs_by_tables(dom, cod):
    out = []
    for table in all_tables(dom, cod):
        try:
            out.append(validate_complete_hom(dom, cod, table))
        except NotAHomomorphism:
            pass
    return out


P01 = Caba.on(["0", "1"])
PW = Caba.on(["w"])
PQ = Caba.on(["p", "q"])


class TestAtoms:
    def test_trivial_algebra_has_no_atoms(self):
        assert minimal_nonzero(Caba.on([])) == []

    def test_two_atoms(self):
        assert set(PQ.atoms) == {"p", "q"}

    def test_powerset_of_three_has_singleton_atoms(self):
        A = Caba.on("abc")
        assert sorted(minimal_nonzero(A)) == sorted(frozenset((x,)) for x in "abc")


class TestValidateCompleteHom:
    def test_identity(self):
        table = {a: a for a in PQ.elements()}
        assert validate_complete_hom(PQ, PQ, table) == identity_hom(PQ)

    def test_everything_to_top_rejected(self):
        table = {a: PQ.top for a in PQ.elements()}
        with pytest.raises(NotAHomomorphism):
            validate_complete_hom(PQ, PQ, table)

    def test_inverse_image_of_constant(self):
        # w -> 0, so T -> {w} iff 0 in T
        table = {T: frozenset({"w"}) if "0" in T else frozenset() for T in P01.elements()}
        alpha = validate_complete_hom(P01, PW, table)
        assert alpha.dual("w") == "0"

    def test_only_one_table_from_4_to_2_matches_dual(self):
        homs = valid_homs_by_tables(P01, PW)
        assert sorted(h.dual("w") for h in homs) == ["0", "1"]

    @given(cabas(2), cabas(2))
    @settings(max_examples=20, deadline=None)
    def test_atom_enumeration_equals_table_enumeration(self, A, B):
        by_atoms = set(enumerate_complete_homs(A, B))
        assert by_atoms == set(valid_homs_by_tables(A, B))


class TestLeftAdjoint:
    def test_identity(self):
        assert left_adjoint(identity_hom(PQ)) == FinMap(PQ.atoms, PQ.atoms, {"p": "p", "q": "q"})

    def test_constant_inverse_image(self):
        alpha = validate_complete_hom(PW, P01, {S: P01.top if S else P01.bottom for S in PW.elements()})
        assert dict(left_adjoint(alpha).graph) == {"0": "w", "1": "w"}

    @given(cabas(3), cabas(3), st.data())
    @settings(max_examples=30, deadline=None)
    def test_adjunction_pointwise(self, A, B, data):
        homs = list(enumerate_complete_homs(A, B))
        if not homs:
            return
        alpha = data.draw(st.sampled_from(homs))
        for b in B.elements():
            lower = adjoint_by_meets(alpha, b)
            assert lower == alpha.lower(b)
            for a in A.elements():
                assert (lower <= a) == (b <= alpha(a))

    @given(cabas(2), cabas(2), cabas(2), st.data())
    @settings(max_examples=20, deadline=None)
    def test_composition(self, A, B, C, data):
        ab = list(enumerate_complete_homs(A, B))
        bc = list(enumerate_complete_homs(B, C))
        if not ab or not bc:
            return
        f, g = data.draw(st.sampled_from(ab)), data.draw(st.sampled_from(bc))
        h = compose_homs(g, f)
        assert all(h(a) == g(f(a)) for a in A.elements())


class TestTarskiUnit:
    def test_examples(self):
        assert theta(PQ, PQ.bottom) == frozenset()
        assert theta(PQ, PQ.atom("p")) == {"p"}
        assert theta(PQ, PQ.top) == {"p", "q"}

    @given(labelled_cabas(4))
    @settings(deadline=None)
    def test_isomorphism(self, A):
        th = tarski_unit_alg(A)
        assert th.is_isomorphism()
        assert all(th(a) == theta(A, a) for a in A.elements())


class TestUltrafilters:
    def brute_ultrafilters(self, A):
        carrier = list(A.elements())
        found = []
        for r in range(len(carrier) + 1):
            for fam in itertools.combinations(carrier, r):
                if is_ultrafilter(A, fam):
                    found.append(frozenset(fam))
        return found

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_count_matches_brute_force(self, n):
        A = Caba.on("pqr"[:n])
        space = ultrafilters(A)
        assert len(space.points) == n
        assert sorted(map(sorted, self.brute_ultrafilters(A))) == sorted(
            sorted(space.filter(u)) for u in space.points
        )

    def test_stone_of_atom(self):
        space = ultrafilters(PQ)
        assert space.stone(PQ.atom("p")) == {"↑p"}

    def test_stone_hom_is_iso(self):
        assert stone_hom(Caba.on("pqr")).is_isomorphism()


class TestCanonicalExtension:
    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_holds(self, n):
        report = check_canonical_extension(Caba.on("pqrs"[:n]))
        assert report.ok, report.failures

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            check_canonical_extension(Caba.on("pqrst"))


class TestFreeCaba:
    def test_empty(self):
        F = free_caba(FinSet())
        assert len(F.algebra.atoms) == 1 and F.algebra.size == 2

    def test_one_generator(self):
        F = free_caba(FinSet("x"))
        assert len(F.algebra.atoms) == 2
        assert len(F.gen("x")) == 1

    def test_two_generators(self):
        F = free_caba(FinSet("xy"))
        assert len(F.algebra.atoms) == 4
        assert F.gen("x") & F.gen("y") == {"v11"}

    def test_extend_empty(self):
        psi = free_extend(FinSet(), PQ, {})
        F = free_caba(FinSet())
        assert psi(F.algebra.bottom) == PQ.bottom and psi(F.algebra.top) == PQ.top

    @pytest.mark.parametrize("image", [frozenset({"p"}), frozenset({"p", "q"})])
    def test_extend_unique(self, image):
        X = FinSet("x")
        F = free_caba(X)
        psi = free_extend(X, PQ, {"x": image})
        assert psi(F.gen("x")) == image
        matches = [h for h in valid_homs_by_tables(F.algebra, PQ) if h(F.gen("x")) == image]
        assert matches == [psi]

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            free_caba(FinSet("abcde"))
