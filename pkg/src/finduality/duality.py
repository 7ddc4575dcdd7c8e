"""Tarski duality, its lift to Alg(H) / Coalg(P), and Thomason duality.

Everything here is finite: Stone spaces are discrete, clopens are all
subsets, and the Vietoris functor coincides with P.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .adjoint import h_functor, h_on_morphism, k_functor_finite
from .caba import (
    Caba,
    CabaHom,
    compose_homs,
    hom_from_dual,
    is_ultrafilter,
    minimal_nonzero,
    powerset_caba,
    tarski_unit_alg,
    ultrafilters,
    validate_complete_hom,
)
from .errors import AmbientMismatch, BoundExceeded, ConstructionMismatch
from .finset import (
    FinMap,
    FinSet,
    check_bound,
    compose,
    decode_subset,
    encode_subset,
    iter_subsets,
    powerset,
    powerset_map,
    tarski_unit_set,
)
from .modal import (
    HAlgebra,
    KripkeFrame,
    ModalAlgebra,
    PCoalgebra,
    Verdict,
    PASS,
    check_coalg_morphism,
    check_halg_morphism,
    check_cama_morphism,
    coalgebra_of_frame,
    frame_of_coalgebra,
    halgebra_of_modal,
    is_frame_isomorphism,
    modal_of_halgebra,
    relation_from_box,
    box_from_relation,
)

# --- Tarski duality -------------------------------------------------------------------


def tarski_dual_of_hom(alpha: CabaHom) -> FinMap:
    """``at(alpha) = alpha* : at(B) -> at(A)``."""
    return alpha.dual


def tarski_dual_of_map(f: FinMap) -> CabaHom:
    """``P(f) = f^{-1} : P(Y) -> P(X)``; its dual atom map is f itself."""
    return CabaHom(powerset_caba(f.cod), powerset_caba(f.dom), f)


def inverse_image_hom(f: FinMap) -> CabaHom:
    """``f^{-1}`` built from its element table and validated (independent route)."""
    dom, cod = powerset_caba(f.cod), powerset_caba(f.dom)
    table = {T: frozenset(x for x in f.dom if f(x) in T) for T in dom.elements()}
    return validate_complete_hom(dom, cod, table)


@dataclass(frozen=True)
class DualityWitness:
    obj: object
    double_dual: object
    unit: object  # FinMap (epsilon) or CabaHom (theta)
    isomorphism: bool


def set_round_trip(X: FinSet) -> DualityWitness:
    """``epsilon_X : X -> at(P(X))`` and a check that it hits exactly the atoms."""
    A = powerset_caba(X)
    eps = tarski_unit_set(X)
    atoms_found = set(minimal_nonzero(A))
    singletons = {A.atom(eps(x)) for x in X}
    iso = eps.is_bijective() and eps.cod == A.atoms and atoms_found == singletons
    iso = iso and all(A.atom(eps(x)) == frozenset((x,)) for x in X)
    return DualityWitness(X, A.atoms, eps, iso)


def algebra_round_trip(A: Caba) -> DualityWitness:
    th = tarski_unit_alg(A)
    return DualityWitness(A, th.cod, th, th.is_isomorphism())


def epsilon_natural(f: FinMap) -> Verdict:
    """``at(P(f)) . epsilon_X = epsilon_Y . f`` with P(f) validated from its table."""
    at_pf = inverse_image_hom(f).dual
    lhs = compose(at_pf, tarski_unit_set(f.dom))
    rhs = compose(tarski_unit_set(f.cod), f)
    if lhs != rhs:
        x = next(x for x in f.dom if lhs(x) != rhs(x))
        return Verdict(False, x, "epsilon is not natural")
    return PASS


def theta_natural(alpha: CabaHom) -> Verdict:
    """``P(at(alpha)) . theta_A = theta_B . alpha`` on every element."""
    A, B = alpha.dom, alpha.cod
    th_a, th_b = tarski_unit_alg(A), tarski_unit_alg(B)
    p_at = inverse_image_hom(tarski_dual_of_hom(alpha))
    for a in A.elements():
        if p_at(th_a(a)) != th_b(alpha(a)):
            return Verdict(False, sorted(a), "theta is not natural")
    return PASS


# --- H P = P P -----------------------------------------------------------------------


def _evaluate_all(hom: CabaHom) -> np.ndarray:
    """The hom on every element of its domain, elements as bitmasks over sorted atoms."""
    n = len(hom.dom.atoms)
    arr = np.arange(1 << n, dtype=np.int64)
    out = np.zeros_like(arr)
    for j, y in enumerate(hom.cod.atoms):
        i = hom.dom.atoms.index(hom.dual(y))
        out |= ((arr >> i) & 1) << j
    return out


def check_square_HwP(f: FinMap) -> Verdict:
    """``H(P(f)) = P(P(f))`` as literal equality of objects and of maps."""
    if max(len(f.dom), len(f.cod)) > 4:
        raise BoundExceeded("double powersets are materialized only for sets of size <= 4")
    for X in (f.dom, f.cod):
        if h_functor(powerset_caba(X)).algebra != powerset_caba(powerset(X)):
            return Verdict(False, list(X), "H(P(X)) and P(P(X)) differ as objects")
    via_h = h_on_morphism(tarski_dual_of_map(f))
    via_p = tarski_dual_of_map(powerset_map(f))
    if via_h.dom != via_p.dom or via_h.cod != via_p.cod:
        return Verdict(False, None, "the two maps have different (co)domains")
    pre = {S: frozenset(x for x in f.dom if f(x) in S) for S in iter_subsets(f.cod)}
    for S, fS in pre.items():
        gen = frozenset(encode_subset(T) for T in iter_subsets(S))
        target = frozenset(encode_subset(T) for T in iter_subsets(fS))
        if via_h(gen) != target or via_p(gen) != target:
            return Verdict(False, sorted(S), "generator down S is not sent to down f^-1(S)")
    lhs, rhs = _evaluate_all(via_h), _evaluate_all(via_p)
    if not np.array_equal(lhs, rhs):
        bad = int(np.flatnonzero(lhs != rhs)[0])
        return Verdict(False, bad, "H(P(f)) and P(P(f)) disagree on the carrier")
    return PASS


# --- zeta --------------------------------------------------------------------------


def zeta(A: Caba) -> FinMap:
    """``zeta_A({a}) = {x in at(A) | x <= a}`` from at(H(A)) to P(at(A)).

    Cross-checked against the inverse of ``at(H(theta_A)) . epsilon``.
    """
    H = h_functor(A)
    P_at = powerset(A.atoms)
    z = FinMap(H.algebra.atoms, P_at, {A.label(a): encode_subset(x for x in A.atoms if x in a) for a in A.elements()})
    composite = compose(h_on_morphism(tarski_unit_alg(A)).dual, tarski_unit_set(P_at))
    if not composite.is_bijective() or composite.inverse() != z:
        raise ConstructionMismatch("zeta is not the inverse of at(H(theta)) . epsilon")
    return z


def zeta_natural(alpha: CabaHom) -> Verdict:
    """``zeta_A . at(H(alpha)) = P(at(alpha)) . zeta_B``."""
    A, B = alpha.dom, alpha.cod
    za, zb = zeta(A), zeta(B)
    at_h = h_on_morphism(alpha).dual
    for s in h_functor(B).algebra.atoms:
        lhs = za(at_h(s))
        rhs = encode_subset(alpha.dual(y) for y in decode_subset(zb(s)))
        if lhs != rhs:
            return Verdict(False, s, "zeta is not natural")
    return PASS


# --- lifted functors ------------------------------------------------------------------


def lift_at(H: HAlgebra) -> PCoalgebra:
    """``(at(A), zeta_A . at(tau))``."""
    A = H.base
    z = zeta(A)
    at_tau = H.as_hom().dual
    return PCoalgebra(A.atoms, {x: decode_subset(z(at_tau(x))) for x in A.atoms})


def lift_wp(C: PCoalgebra) -> HAlgebra:
    """``(P(X), P(rho))``, using ``H(P(X)) = P(P(X))``."""
    X = C.carrier
    rho = FinMap(X, powerset(X), {x: encode_subset(C.rho[x]) for x in X})
    tau = tarski_dual_of_map(rho)
    if tau.dom != h_functor(powerset_caba(X)).algebra:
        raise ConstructionMismatch("P(rho) does not start at H(P(X))")
    H = HAlgebra(powerset_caba(X), {x: C.rho[x] for x in X})
    if H.as_hom() != tau:
        raise ConstructionMismatch("stored trace does not reproduce P(rho)")
    return H


def lift_at_morphism(alpha: CabaHom) -> FinMap:
    return tarski_dual_of_hom(alpha)


def lift_wp_morphism(h: FinMap) -> CabaHom:
    return tarski_dual_of_map(h)


def halgebra_round_trip(H: HAlgebra) -> Verdict:
    """theta_A must be an Alg(H) isomorphism ``H -> lift_wp(lift_at(H))``."""
    back = lift_wp(lift_at(H))
    th = tarski_unit_alg(H.base)
    if not th.is_isomorphism():
        return Verdict(False, None, "theta is not bijective")
    return check_halg_morphism(H, back, th)


def coalgebra_round_trip(C: PCoalgebra) -> Verdict:
    """epsilon_X must be a coalgebra isomorphism ``C -> lift_at(lift_wp(C))``."""
    back = lift_at(lift_wp(C))
    eps = tarski_unit_set(C.carrier)
    if not eps.is_bijective():
        return Verdict(False, None, "epsilon is not bijective")
    return check_coalg_morphism(C, back, eps)


# --- Thomason composites ------------------------------------------------------------


def powerset_composite(F: KripkeFrame) -> ModalAlgebra:
    """``M . lift_wp . C`` applied to a frame."""
    return modal_of_halgebra(lift_wp(coalgebra_of_frame(F)))


def atoms_composite(MA: ModalAlgebra) -> KripkeFrame:
    """``F . lift_at . A`` applied to a CAMA."""
    return frame_of_coalgebra(lift_at(halgebra_of_modal(MA)))


def thomason_composites(F: KripkeFrame, MA: ModalAlgebra) -> tuple[Verdict, Verdict]:
    direct = box_from_relation(F)
    via = powerset_composite(F)
    if via != direct:
        a = next(a for a in direct.base.elements() if via(a) != direct(a))
        first = Verdict(False, sorted(a), "M.lift_wp.C(F) differs from (P(X), box_R)")
    else:
        first = PASS
    rel = relation_from_box(MA)
    frame = atoms_composite(MA)
    if frame != rel:
        diff = sorted(frame.relation ^ rel.relation)
        second = Verdict(False, diff[0], "F.lift_at.A(MA) differs from (at(A), R_box)")
    else:
        second = PASS
    return first, second


# --- isomorphism search --------------------------------------------------------------


def _degrees(F: KripkeFrame, x: str) -> tuple[int, int, bool]:
    indeg = sum(1 for (_, y) in F.relation if y == x)
    return (len(F.successors(x)), indeg, (x, x) in F.relation)


def find_frame_iso(F1: KripkeFrame, F2: KripkeFrame) -> FinMap | None:
    if len(F1.worlds) != len(F2.worlds) or len(F1.relation) != len(F2.relation):
        return None
    d1 = {x: _degrees(F1, x) for x in F1.worlds}
    d2 = {y: _degrees(F2, y) for y in F2.worlds}
    if sorted(d1.values()) != sorted(d2.values()):
        return None
    xs = F1.worlds.elements
    for perm in itertools.permutations(F2.worlds.elements):
        if any(d1[x] != d2[y] for x, y in zip(xs, perm)):
            continue
        f = FinMap(F1.worlds, F2.worlds, dict(zip(xs, perm)))
        if is_frame_isomorphism(F1, F2, f):
            return f
    return None


def find_cama_iso(MA1: ModalAlgebra, MA2: ModalAlgebra) -> CabaHom | None:
    """Search atom bijections, pruned by the degree profile of R_box."""
    A1, A2 = MA1.base, MA2.base
    if len(A1.atoms) != len(A2.atoms):
        return None
    f = find_frame_iso(relation_from_box(MA2), relation_from_box(MA1))
    if f is None:
        return None
    alpha = hom_from_dual(A1, A2, dict(f.graph))
    return alpha if check_cama_morphism(MA1, MA2, alpha) else None


def find_halgebra_iso(H1: HAlgebra, H2: HAlgebra) -> CabaHom | None:
    A1, A2 = H1.base, H2.base
    if len(A1.atoms) != len(A2.atoms):
        return None
    F1, F2 = frame_of_coalgebra(lift_at(H1)), frame_of_coalgebra(lift_at(H2))
    d1 = {x: _degrees(F1, x) for x in F1.worlds}
    d2 = {y: _degrees(F2, y) for y in F2.worlds}
    ys = A2.atoms.elements
    for perm in itertools.permutations(A1.atoms.elements):
        if any(d2[y] != d1[x] for y, x in zip(ys, perm)):
            continue
        alpha = hom_from_dual(A1, A2, dict(zip(ys, perm)))
        if check_halg_morphism(H1, H2, alpha):
            return alpha
    return None


# --- Stone side, finite shadow ------------------------------------------------------


def finite_stone_unit(X: FinSet, bound: int = 12) -> FinMap:
    """``eta_X(x) = {U in clop(X) | x in U}``, matched to the points of uf(P(X))."""
    check_bound(len(X), bound)
    A = powerset_caba(X)
    space = ultrafilters(A)
    by_filter = {space.filter(p): p for p in space.points}
    graph = {}
    for x in X:
        eta = frozenset(U for U in A.elements() if x in U)
        if not is_ultrafilter(A, eta) or eta not in by_filter:
            raise ConstructionMismatch(f"eta({x}) is not an ultrafilter of P(X)", witness=x)
        graph[x] = by_filter[eta]
    return FinMap(X, space.points, graph)


def vietoris_finite(X: FinSet) -> FinSet:
    """Closed subsets of the discrete space X, i.e. all of P(X)."""
    return powerset(X)


def vietoris_map(f: FinMap) -> FinMap:
    """``V(f)(G) = f[G]`` on closed sets."""
    graph = {}
    for label in vietoris_finite(f.dom):
        graph[label] = encode_subset(f(x) for x in decode_subset(label))
    return FinMap(vietoris_finite(f.dom), vietoris_finite(f.cod), graph)


# --- canonical extension on algebras ----------------------------------------------------


def k_algebra_of_modal(MA: ModalAlgebra) -> CabaHom:
    """The K-algebra ``K(A) -> A`` with ``i(a) -> box a``."""
    K = k_functor_finite(MA.base)
    return compose_homs(halgebra_of_modal(MA).as_hom(), K.iso_to_h)


@dataclass(frozen=True)
class SigmaResult:
    extension: HAlgebra  # over P(uf(A))
    direct: HAlgebra  # (A, alpha) read through K = H
    iso: CabaHom | None

    @property
    def ok(self) -> bool:
        return self.iso is not None


def sigma_on_algebras(A: Caba, alpha: CabaHom) -> SigmaResult:
    """``(A, alpha)^sigma = lift_wp . U . lift_uf (A, alpha)`` at finite scale.

    Steps, each explicit: ``uf(alpha) : uf(A) -> uf(K(A))`` sends the principal
    ultrafilter on x to the one on ``alpha*(x)``; the character ``sigma_a`` of
    K(A) is identified with the clopen ``beta_A(a)`` of uf(A), so uf(K(A)) is
    read as P(uf(A)); the forgetful step is the identity; then lift_wp.
    """
    K = k_functor_finite(A)
    if alpha.dom != K.algebra or alpha.cod != A:
        raise AmbientMismatch("alpha must be a K-algebra structure K(A) -> A")
    space = ultrafilters(A)
    M = K.lattice
    rho = {}
    for u in space.points:
        chi = alpha.dual(space.atom_of(u))
        a = A.from_label(M.meet_all(decode_subset(chi)))
        rho[u] = space.stone(a)
    coalgebra = PCoalgebra(space.points, rho)
    extension = lift_wp(coalgebra)
    tau = compose_homs(alpha, K.iso_to_h.inverse())
    direct = HAlgebra(A, {x: A.from_label(tau.dual(x)) for x in A.atoms})
    return SigmaResult(extension, direct, find_halgebra_iso(direct, extension))
