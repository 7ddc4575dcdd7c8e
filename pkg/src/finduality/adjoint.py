"""The left adjoint L : CSL -> CABA, built two ways, and the functors H and K.

Powerset route: ``L(M) = P(M)`` with unit ``iota(m) = down(m)``.
Quotient route: the free CABA on the underlying set of M, cut down to the
valuations that respect every meet (relativization to the complement of
the kernel generator).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .caba import (
    Caba,
    CabaHom,
    FreeCaba,
    free_caba,
    hom_from_dual,
    powerset_caba,
)
from .csl import (
    CslHom,
    CslLattice,
    SlDual,
    cabahom_as_cslhom,
    caba_lattice,
    character_label,
    csl_characters,
    csl_left_adjoint,
    sigma,
    sl_characters,
)
from .errors import AmbientMismatch, BoundExceeded, ConstructionMismatch
from .finset import DEFAULT_BOUND, FinSet, check_bound, decode_subset, encode_subset

# --- powerset construction -------------------------------------------------------


@dataclass(frozen=True)
class LPowerset:
    source: CslLattice
    algebra: Caba

    def iota(self, m: str) -> frozenset[str]:
        return self.source.down(m)


@lru_cache(maxsize=None)
def _l_powerset(M: CslLattice) -> LPowerset:
    L = LPowerset(M, Caba(M.elements))
    if L.iota(M.top) != L.algebra.top:
        raise ConstructionMismatch("iota does not preserve top")
    for a, b in itertools.combinations(M.elements, 2):
        if L.iota(M.meet(a, b)) != L.iota(a) & L.iota(b):
            raise ConstructionMismatch(f"iota does not preserve the meet of {a!r}, {b!r}")
    return L


def l_powerset(M: CslLattice, bound: int = DEFAULT_BOUND) -> LPowerset:
    check_bound(len(M), bound, "lattice")
    return _l_powerset(M)


def singleton_decomposition(L: LPowerset, a: str) -> frozenset[str]:
    """Evaluate ``iota(a) & ~join{iota(b) | b < a}``; it must be the atom ``{a}``."""
    M, A = L.source, L.algebra
    below = A.join_all(L.iota(b) for b in M if M.lt(b, a))
    value = A.meet(L.iota(a), A.complement(below))
    if value != A.atom(a):
        raise ConstructionMismatch(f"singleton decomposition fails at {a!r}", witness=a)
    return value


def tau_by_formula(L: LPowerset, A: Caba, gamma: CslHom, S) -> frozenset[str]:
    """The atom-free extension ``tau(S) = join_a (gamma(a) & ~join_{b<a} gamma(b))``."""
    M = L.source
    g = {m: A.from_label(gamma(m)) for m in M}
    out = A.bottom
    for a in S:
        below = A.join_all(g[b] for b in M if M.lt(b, a))
        out = out | (g[a] & A.complement(below))
    return out


def universal_extend(L: LPowerset, A: Caba, gamma: CslHom, check_all: int = 10) -> CabaHom:
    """The unique complete hom ``tau : L(M) -> A`` with ``tau . iota = gamma``.

    Built as ``theta_A^{-1} . P(gamma*)``: the atom ``x`` of A is sent back to
    ``gamma*(x)``. The atom-free formula is evaluated alongside on every
    singleton (and on the whole carrier when ``|M| <= check_all``).
    """
    if gamma.dom != L.source or gamma.cod != caba_lattice(A):
        raise AmbientMismatch("gamma must map L.source into the lattice of A")
    g_star = csl_left_adjoint(gamma)
    tau = hom_from_dual(L.algebra, A, {x: g_star(A.label(A.atom(x))) for x in A.atoms})
    M = L.source
    if len(M) <= check_all:
        family = L.algebra.elements()
    else:
        family = (frozenset((a,)) for a in M)
    for S in family:
        if tau(S) != tau_by_formula(L, A, gamma, S):
            raise ConstructionMismatch("the two formulas for tau disagree", witness=S)
    for m in M:
        if A.label(tau(L.iota(m))) != gamma(m):
            raise ConstructionMismatch(f"tau . iota != gamma at {m!r}", witness=m)
    return tau


def l_on_morphism(gamma: CslHom) -> CabaHom:
    """``L(gamma) : P(M) -> P(N)``, the preimage map under ``gamma*``."""
    LM, LN = _l_powerset(gamma.dom), _l_powerset(gamma.cod)
    g_star = csl_left_adjoint(gamma)
    hom = CabaHom(LM.algebra, LN.algebra, g_star)
    for a in gamma.dom:
        if hom(LM.iota(a)) != LN.iota(gamma(a)):
            raise ConstructionMismatch(f"L(gamma)(down {a!r}) != down gamma({a!r})", witness=a)
    return hom


# --- quotient construction --------------------------------------------------------

QUOTIENT_BOUND = 10


def violates_fast(M: CslLattice, ones: frozenset[str]) -> bool:
    """A valuation fails some meet relation iff its 1-set is not a principal up-set."""
    if not ones:
        return True
    return M.up(M.meet_all(ones)) != ones


def violates_naive(M: CslLattice, ones: frozenset[str]) -> bool:
    """Literal check of ``v(meet S) = min v[S]`` over every ``S`` (oracle)."""
    elems = M.elements.elements
    for r in range(len(elems) + 1):
        for S in itertools.combinations(elems, r):
            lhs = M.meet_all(S) in ones
            rhs = all(s in ones for s in S)
            if lhs != rhs:
                return True
    return False


@dataclass(frozen=True)
class LQuotient:
    source: CslLattice
    free: FreeCaba
    kernel_element: frozenset[str]
    kernel_complement: frozenset[str]
    algebra: Caba

    @property
    def valuations(self) -> FinSet:
        return self.free.algebra.atoms

    def project(self, T: frozenset[str]) -> frozenset[str]:
        """The quotient map: relativize to the complement of the kernel generator."""
        return T & self.kernel_complement

    def box(self, m: str) -> frozenset[str]:
        """The generator class ``[f_M(m)]``."""
        return self.project(self.free.gen(m))


def kernel_generator_naive(M: CslLattice, F: FreeCaba) -> frozenset[str]:
    """``join over S of f(meet S) xor meet{f(s) | s in S}`` in the free CABA."""
    A = F.algebra
    x = A.bottom
    elems = M.elements.elements
    for r in range(len(elems) + 1):
        for S in itertools.combinations(elems, r):
            lhs = F.gen(M.meet_all(S))
            rhs = A.meet_all(F.gen(s) for s in S)
            x = x | (lhs ^ rhs)
    return x


@lru_cache(maxsize=None)
def _l_quotient(M: CslLattice) -> LQuotient:
    F = free_caba(M.elements, bound=QUOTIENT_BOUND)
    bad = frozenset(v for v in F.algebra.atoms if violates_fast(M, F.ones(v)))
    keep = frozenset(F.algebra.atoms) - bad
    return LQuotient(M, F, bad, keep, Caba(FinSet(keep)))


def l_quotient(M: CslLattice, bound: int = QUOTIENT_BOUND) -> LQuotient:
    if len(M) > bound:
        raise BoundExceeded(f"valuation space 2^{len(M)} exceeds the bound 2^{bound}")
    return _l_quotient(M)


def l_quotient_on_morphism(gamma: CslHom) -> CabaHom:
    """``L(gamma)`` on the quotient side: valuations pull back along gamma."""
    QM, QN = l_quotient(gamma.dom), l_quotient(gamma.cod)
    dual = {}
    for v in QN.algebra.atoms:
        ones = frozenset(a for a in gamma.dom if gamma(a) in QN.free.ones(v))
        label = QM.free.valuation_label(ones)
        if label not in QM.kernel_complement:
            raise ConstructionMismatch("pulled-back valuation violates a meet relation")
        dual[v] = label
    hom = hom_from_dual(QM.algebra, QN.algebra, dual)
    for a in gamma.dom:
        if hom(QM.box(a)) != QN.box(gamma(a)):
            raise ConstructionMismatch(f"L(gamma)(box {a!r}) != box gamma({a!r})", witness=a)
    return hom


@dataclass(frozen=True)
class ConstructionIso:
    quotient: LQuotient
    powerset: LPowerset
    hom: CabaHom  # quotient.algebra -> powerset.algebra
    generator_map: dict  # m -> (box_m, its image)


def compare_constructions(M: CslLattice) -> ConstructionIso:
    """The isomorphism induced by ``v -> meet v^{-1}(1)``, checked on generators."""
    Q, P = l_quotient(M), l_powerset(M)
    forward = {v: M.meet_all(Q.free.ones(v)) for v in Q.algebra.atoms}
    dual = {a: Q.free.valuation_label(M.up(a)) for a in M}
    for a, v in dual.items():
        if v not in Q.kernel_complement or forward[v] != a:
            raise ConstructionMismatch(f"sigma_{a} is not a surviving valuation", witness=a)
    hom = hom_from_dual(Q.algebra, P.algebra, dual)
    if not hom.is_isomorphism():
        raise ConstructionMismatch("valuation/element correspondence is not bijective")
    gens = {}
    for m in M:
        image = hom(Q.box(m))
        if image != P.iota(m):
            raise ConstructionMismatch(f"box_{m} is not sent to down {m}", witness=m)
        gens[m] = (Q.box(m), image)
    return ConstructionIso(Q, P, hom, gens)


# --- H = L U ------------------------------------------------------------------------

H_CARRIER_BOUND = 16


@dataclass(frozen=True)
class HObject:
    base: Caba
    lattice: CslLattice
    lpowerset: LPowerset

    @property
    def algebra(self) -> Caba:
        return self.lpowerset.algebra

    def down(self, a: frozenset[str]) -> frozenset[str]:
        """The generator ``down a`` of H(A), as a set of element labels."""
        return self.lpowerset.iota(self.base.label(a))


def h_functor(A: Caba, bound: int = H_CARRIER_BOUND) -> HObject:
    if A.size > bound:
        raise BoundExceeded(f"carrier of size {A.size} exceeds the H bound {bound}")
    M = caba_lattice(A)
    return HObject(A, M, _l_powerset(M))


def h_on_morphism(alpha: CabaHom) -> CabaHom:
    """``H(alpha) = L(U(alpha))``; on generators ``down a -> down alpha(a)``."""
    for A in (alpha.dom, alpha.cod):
        if A.size > H_CARRIER_BOUND:
            raise BoundExceeded("carrier exceeds the H bound")
    return l_on_morphism(cabahom_as_cslhom(alpha))


@dataclass(frozen=True)
class XiIso:
    X: FinSet
    hom: CabaHom  # quotient description -> powerset description of H P(X)
    generators: dict  # S label -> (box_S, down S)


def xi_iso(X: FinSet) -> XiIso:
    """``xi_X(box_S) = down S`` between the two readings of H(P(X))."""
    M = caba_lattice(powerset_caba(X))
    w = compare_constructions(M)
    return XiIso(X, w.hom, w.generator_map)


# --- K = L_SL U, finite shadow --------------------------------------------------------


@dataclass(frozen=True)
class KObject:
    base: Caba
    lattice: CslLattice
    dual: SlDual
    algebra: Caba  # P(hom_SL(U(A), 2)), clopens of a finite discrete space
    iso_to_h: CabaHom  # K(A) -> H(A)

    def generator(self, a: frozenset[str]) -> frozenset[str]:
        """``i(a) = {chi | chi(a) = 1}``."""
        return self.dual.i_map[self.base.label(a)]


@lru_cache(maxsize=None)
def k_functor_finite(A: Caba) -> KObject:
    if A.size > H_CARRIER_BOUND:
        raise BoundExceeded("carrier exceeds the K bound")
    M = caba_lattice(A)
    dual = sl_characters(M)
    sl = {character_label(chi) for _, chi in dual.characters}
    cs = {character_label(chi) for _, chi in csl_characters(M)}
    if sl != cs:
        raise ConstructionMismatch("finitary and complete characters differ")
    K = Caba(FinSet(sl))
    H = h_functor(A)
    iso = hom_from_dual(K, H.algebra, {a: character_label(sigma(M, a)) for a in M})
    if not iso.is_isomorphism():
        raise ConstructionMismatch("K(A) and H(A) are not isomorphic")
    for a in A.elements():
        if iso(dual.i_map[A.label(a)]) != H.down(a):
            raise ConstructionMismatch("K/H iso does not match generators", witness=a)
    return KObject(A, M, dual, K, iso)


def k_on_morphism(alpha: CabaHom) -> CabaHom:
    """``K(alpha)``: characters of U(B) pull back along U(alpha)."""
    KA, KB = k_functor_finite(alpha.dom), k_functor_finite(alpha.cod)
    u = cabahom_as_cslhom(alpha)
    dual = {}
    for chi_label in KB.algebra.atoms:
        ones = frozenset(m for m in KA.lattice if u(m) in decode_subset(chi_label))
        dual[chi_label] = encode_subset(ones)
    hom = hom_from_dual(KA.algebra, KB.algebra, dual)
    for a in alpha.dom.elements():
        if hom(KA.generator(a)) != KB.generator(alpha(a)):
            raise ConstructionMismatch("K(alpha) does not respect generators", witness=a)
    return hom

