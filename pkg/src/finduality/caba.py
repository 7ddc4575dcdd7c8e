"""Finite complete atomic boolean algebras.

A finite CABA is identified with the powerset of its atoms: an element is a
``frozenset`` of atom labels. Complete homomorphisms are stored by their
dual atom map ``at(cod) -> at(dom)`` (the left adjoint restricted to atoms),
from which the forward action is ``a -> {y | dual(y) in a}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import (
    AmbientMismatch,
    BoundExceeded,
    NotAHomomorphism,
    NotComplete,
    UnknownLabel,
)
from .finset import (
    DEFAULT_BOUND,
    FinMap,
    FinSet,
    check_bound,
    decode_subset,
    encode_subset,
    identity,
)

Element = frozenset

CARRIER_CACHE_ATOMS = 12


@lru_cache(maxsize=None)
def _carrier(atoms: tuple[str, ...]) -> tuple[Element, ...]:
    n = len(atoms)
    return tuple(frozenset(atoms[i] for i in range(n) if mask >> i & 1) for mask in range(1 << n))


@lru_cache(maxsize=None)
def _top(atoms: tuple[str, ...]) -> Element:
    return frozenset(atoms)


@dataclass(frozen=True)
class Caba:
    atoms: FinSet

    @classmethod
    def on(cls, labels: Iterable[str]) -> Caba:
        return cls(FinSet(labels))

    @property
    def top(self) -> Element:
        return _top(self.atoms.elements)

    @property
    def bottom(self) -> Element:
        return frozenset()

    @property
    def size(self) -> int:
        return 1 << len(self.atoms)

    def element(self, labels: Iterable[str]) -> Element:
        a = frozenset(labels)
        for x in a:
            if x not in self.atoms:
                raise UnknownLabel(f"{x!r} is not an atom", witness=x)
        return a

    def is_element(self, a) -> bool:
        return isinstance(a, frozenset) and a <= self.top

    def atom(self, x: str) -> Element:
        return frozenset((self.atoms.require(x),))

    def meet(self, a: Element, b: Element) -> Element:
        return a & b

    def join(self, a: Element, b: Element) -> Element:
        return a | b

    def complement(self, a: Element) -> Element:
        return self.top - a

    def symdiff(self, a: Element, b: Element) -> Element:
        return a ^ b

    def leq(self, a: Element, b: Element) -> bool:
        return a <= b

    def meet_all(self, elements: Iterable[Element]) -> Element:
        out = self.top
        for a in elements:
            out = out & a
        return out

    def join_all(self, elements: Iterable[Element]) -> Element:
        out = self.bottom
        for a in elements:
            out = out | a
        return out

    def elements(self, bound: int = DEFAULT_BOUND) -> Iterator[Element]:
        """The whole carrier in bitmask order over the sorted atoms."""
        check_bound(len(self.atoms), bound, "atom set")
        atoms = self.atoms.elements
        n = len(atoms)
        if n <= CARRIER_CACHE_ATOMS:
            yield from _carrier(atoms)
            return
        for mask in range(1 << n):
            yield frozenset(atoms[i] for i in range(n) if mask >> i & 1)

    def label(self, a: Element) -> str:
        return encode_subset(a)

    def from_label(self, label: str) -> Element:
        return self.element(decode_subset(label))

    def element_labels(self, bound: int = DEFAULT_BOUND) -> FinSet:
        return FinSet(self.label(a) for a in self.elements(bound))


def powerset_caba(X: FinSet) -> Caba:
    """The powerset algebra of X; its atom labelled ``x`` is ``{x}``."""
    return Caba(X)


def atoms_of(A: Caba) -> FinSet:
    return A.atoms


def minimal_nonzero(A: Caba) -> list[Element]:
    """Atoms found order-theoretically over the carrier (used as an oracle)."""
    carrier = [a for a in A.elements() if a]
    return [a for a in carrier if not any(b < a for b in carrier)]


@dataclass(frozen=True)
class CabaHom:
    """A complete boolean homomorphism ``dom -> cod`` kept by its dual map."""

    dom: Caba
    cod: Caba
    dual: FinMap = field(compare=True)

    def __post_init__(self):
        if self.dual.dom != self.cod.atoms or self.dual.cod != self.dom.atoms:
            raise AmbientMismatch("dual map must go from at(cod) to at(dom)")

    def __call__(self, a: Element) -> Element:
        return frozenset(y for y in self.cod.atoms if self.dual(y) in a)

    def table(self, bound: int = DEFAULT_BOUND) -> dict[Element, Element]:
        return {a: self(a) for a in self.dom.elements(bound)}

    def lower(self, b: Element) -> Element:
        """The left adjoint evaluated on an arbitrary element of cod."""
        return frozenset(self.dual(y) for y in b)

    def is_isomorphism(self) -> bool:
        return self.dual.is_bijective()

    def inverse(self) -> CabaHom:
        return CabaHom(self.cod, self.dom, self.dual.inverse())


def identity_hom(A: Caba) -> CabaHom:
    return CabaHom(A, A, identity(A.atoms))


def compose_homs(beta: CabaHom, alpha: CabaHom) -> CabaHom:
    """``beta . alpha``; on atoms the duals compose the other way round."""
    if alpha.cod != beta.dom:
        raise AmbientMismatch("homomorphisms are not composable")
    graph = {y: alpha.dual(beta.dual(y)) for y in beta.cod.atoms}
    return CabaHom(alpha.dom, beta.cod, FinMap(beta.cod.atoms, alpha.dom.atoms, graph))


def hom_from_dual(dom: Caba, cod: Caba, dual: Mapping[str, str]) -> CabaHom:
    return CabaHom(dom, cod, FinMap(cod.atoms, dom.atoms, dual))


def validate_complete_hom(
    dom: Caba, cod: Caba, table: Mapping[Element, Element]
) -> CabaHom:
    """Check a full element table and recover its dual atom map.

    In the finite case binary meets, binary joins, complement, top and bottom
    cover all arbitrary meets and joins. Violations carry a witness pair.
    """
    carrier = list(dom.elements())
    for a in carrier:
        if a not in table:
            raise NotAHomomorphism(f"table has no entry for {dom.label(a)}", witness=(a,))
        if not cod.is_element(table[a]):
            raise NotAHomomorphism(
                f"image of {dom.label(a)} is not an element of the codomain", witness=(a,)
            )
    if table[dom.bottom] != cod.bottom:
        raise NotAHomomorphism("bottom is not preserved", witness=(dom.bottom, dom.bottom))
    if table[dom.top] != cod.top:
        raise NotAHomomorphism("top is not preserved", witness=(dom.top, dom.top))
    for a in carrier:
        if table[dom.complement(a)] != cod.complement(table[a]):
            raise NotAHomomorphism(
                f"complement of {dom.label(a)} is not preserved",
                witness=(a, dom.complement(a)),
            )
    for a, b in itertools.combinations(carrier, 2):
        if table[a & b] != table[a] & table[b]:
            raise NotAHomomorphism(
                f"meet of {dom.label(a)} and {dom.label(b)} is not preserved", witness=(a, b)
            )
        if table[a | b] != table[a] | table[b]:
            raise NotAHomomorphism(
                f"join of {dom.label(a)} and {dom.label(b)} is not preserved", witness=(a, b)
            )
    dual = {}
    for y in cod.atoms:
        lower = dom.meet_all(a for a in carrier if y in table[a])
        if len(lower) != 1:
            raise NotComplete(
                f"atom {y!r} has no preimage atom", witness=(cod.atom(y), lower)
            )
        (dual[y],) = lower
    hom = hom_from_dual(dom, cod, dual)
    for a in carrier:
        if hom(a) != table[a]:
            raise NotAHomomorphism(
                f"table disagrees with its dual map at {dom.label(a)}", witness=(a,)
            )
    return hom


def left_adjoint(alpha: CabaHom) -> FinMap:
    """``alpha*`` restricted to atoms, ``at(cod) -> at(dom)``."""
    return alpha.dual


def adjoint_by_meets(alpha: CabaHom, b: Element) -> Element:
    """``alpha*(b) = meet{a | b <= alpha(a)}`` computed over the whole carrier."""
    return alpha.dom.meet_all(a for a in alpha.dom.elements() if b <= alpha(a))


def enumerate_complete_homs(dom: Caba, cod: Caba) -> Iterator[CabaHom]:
    """All complete homs, one per atom map ``at(cod) -> at(dom)``."""
    for images in itertools.product(dom.atoms.elements, repeat=len(cod.atoms)):
        yield hom_from_dual(dom, cod, dict(zip(cod.atoms.elements, images)))


def tarski_unit_alg(A: Caba) -> CabaHom:
    """The isomorphism ``a -> {x in at(A) | x <= a}`` onto P(at(A))."""
    target = powerset_caba(A.atoms)
    table = {a: frozenset(x for x in A.atoms if A.atom(x) <= a) for a in A.elements()}
    return validate_complete_hom(A, target, table)


def theta(A: Caba, a: Element) -> Element:
    return frozenset(x for x in A.atoms if A.atom(x) <= a)


# --- ultrafilters and the Stone map -----------------------------------------


def uf_label(x: str) -> str:
    return "↑" + x


def is_ultrafilter(A: Caba, family: Iterable[Element]) -> bool:
    """Brute-force test of the ultrafilter axioms on a family of elements."""
    F = frozenset(family)
    if A.top not in F or A.bottom in F:
        return False
    for a in F:
        for b in F:
            if a & b not in F:
                return False
    for a in A.elements():
        if any(b <= a for b in F) and a not in F:
            return False
        if (a in F) == (A.complement(a) in F):
            return False
    return True


@dataclass(frozen=True)
class UltrafilterSpace:
    """uf(A) for a finite A: every ultrafilter is principal on an atom."""

    algebra: Caba
    points: FinSet
    atom_of: FinMap  # uf(A) -> at(A), x |-> the atom generating it

    def point_of(self, x: str) -> str:
        return uf_label(x)

    def filter(self, point: str) -> frozenset[Element]:
        x = self.atom_of(point)
        return frozenset(a for a in self.algebra.elements() if x in a)

    def stone(self, a: Element) -> frozenset[str]:
        """``beta_A(a) = {u in uf(A) | a in u}``."""
        return frozenset(p for p in self.points if self.atom_of(p) in a)

    def stone_table(self) -> dict[Element, frozenset[str]]:
        return {a: self.stone(a) for a in self.algebra.elements()}


def ultrafilters(A: Caba, bound: int = DEFAULT_BOUND) -> UltrafilterSpace:
    check_bound(len(A.atoms), bound, "atom set")
    points = FinSet(uf_label(x) for x in A.atoms)
    atom_of = FinMap(points, A.atoms, {uf_label(x): x for x in A.atoms})
    return UltrafilterSpace(A, points, atom_of)


def stone_hom(A: Caba) -> CabaHom:
    """``beta_A`` as a validated complete hom ``A -> P(uf(A))``."""
    space = ultrafilters(A)
    return validate_complete_hom(A, Caba(space.points), space.stone_table())


# --- canonical extension ------------------------------------------------------


@dataclass
class CanonicalExtensionReport:
    atoms: int
    embedding: bool
    density: bool
    compactness: bool
    isomorphism: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.embedding and self.density and self.compactness and self.isomorphism


def _subset_meets(values: list[int], full: int) -> list[int]:
    """Meet (bitwise and) of every subfamily of ``values``, indexed by mask."""
    out = [full] * (1 << len(values))
    for mask in range(1, len(out)):
        low = mask & -mask
        out[mask] = out[mask ^ low] & values[low.bit_length() - 1]
    return out


def _subset_joins(values: list[int]) -> list[int]:
    out = [0] * (1 << len(values))
    for mask in range(1, len(out)):
        low = mask & -mask
        out[mask] = out[mask ^ low] | values[low.bit_length() - 1]
    return out


def check_canonical_extension(A: Caba, max_atoms: int = 4) -> CanonicalExtensionReport:
    """Exhaustively check that ``beta_A : A -> P(uf(A))`` is a canonical extension.

    Density and compactness quantify over all families ``S, T`` of elements of
    A. Families are enumerated in full (``2^|A|`` of them) and the pair
    (meet in the extension, meet in A) is recorded per family, so the
    compactness test ranges over every (S, T) while only comparing distinct
    value pairs.
    """
    n = len(A.atoms)
    if n > max_atoms:
        raise BoundExceeded(f"exhaustive canonical-extension check limited to {max_atoms} atoms")
    space = ultrafilters(A)
    ext = Caba(space.points)
    carrier = list(A.elements())
    atom_bit = {x: 1 << i for i, x in enumerate(A.atoms)}
    point_bit = {p: 1 << i for i, p in enumerate(ext.atoms)}

    def amask(a):
        return sum(atom_bit[x] for x in a)

    def pmask(u):
        return sum(point_bit[p] for p in u)

    e = {a: space.stone(a) for a in carrier}
    failures = []

    embedding = len(set(e.values())) == len(carrier)
    if not embedding:
        failures.append({"check": "embedding", "witness": "not injective"})
    for a in carrier:
        if e[A.complement(a)] != ext.complement(e[a]):
            embedding = False
            failures.append({"check": "embedding", "witness": [A.label(a)]})
        for b in carrier:
            if e[a & b] != e[a] & e[b] or e[a | b] != e[a] | e[b]:
                embedding = False
                failures.append({"check": "embedding", "witness": [A.label(a), A.label(b)]})

    a_vals = [amask(a) for a in carrier]
    e_vals = [pmask(e[a]) for a in carrier]
    a_full, e_full = (1 << n) - 1, (1 << len(ext.atoms)) - 1
    meets_e = _subset_meets(e_vals, e_full)
    meets_a = _subset_meets(a_vals, a_full)
    joins_e = _subset_joins(e_vals)
    joins_a = _subset_joins(a_vals)

    # density: every x is the join of the meets of e[A] below it
    meet_values = set(meets_e)
    density = True
    for x in range(e_full + 1):
        j = 0
        for m in meet_values:
            if m & ~x == 0:
                j |= m
        if j != x:
            density = False
            failures.append({"check": "density", "witness": x})

    # compactness: meet e[S] <= join e[T] implies meet S <= join T (S, T finite)
    meet_pairs = set(zip(meets_e, meets_a))
    join_pairs = set(zip(joins_e, joins_a))
    compactness = True
    for ms, ma in meet_pairs:
        for jt, ja in join_pairs:
            if ms & ~jt == 0 and ma & ~ja != 0:
                compactness = False
                failures.append({"check": "compactness", "witness": [ms, jt]})

    isomorphism = embedding and len(set(e.values())) == ext.size
    return CanonicalExtensionReport(n, embedding, density, compactness, isomorphism, failures)


# --- free CABA -----------------------------------------------------------------


@dataclass(frozen=True)
class FreeCaba:
    """The free CABA on a set X: atoms are valuations ``X -> {0,1}``."""

    generators: FinSet
    algebra: Caba

    def valuation_label(self, ones: Iterable[str]) -> str:
        ones = set(ones)
        return "v" + "".join("1" if x in ones else "0" for x in self.generators)

    def ones(self, label: str) -> frozenset[str]:
        bits = label[1:]
        return frozenset(x for x, b in zip(self.generators, bits) if b == "1")

    def gen(self, x: str) -> Element:
        """The generator ``f(x) = {v | v(x) = 1}``."""
        i = self.generators.index(x)
        return frozenset(v for v in self.algebra.atoms if v[1 + i] == "1")


@lru_cache(maxsize=None)
def _free_caba(X: FinSet) -> FreeCaba:
    n = len(X)
    labels = ("v" + "".join(bits) for bits in itertools.product("01", repeat=n))
    return FreeCaba(X, Caba(FinSet(labels)))


def free_caba(X: FinSet, bound: int = 4) -> FreeCaba:
    check_bound(len(X), bound, "generator set")
    return _free_caba(X)


def free_extend(
    X: FinSet, A: Caba, g: Mapping[str, Element], bound: int = 4
) -> CabaHom:
    """The unique complete hom ``psi`` from free_caba(X) with ``psi(f(x)) = g(x)``.

    Each atom ``a`` of A pulls back to the valuation ``v_a(x) = [a <= g(x)]``.
    """
    F = free_caba(X, bound)
    for x in X:
        if x not in g or not A.is_element(g[x]):
            raise UnknownLabel(f"g is not a total map into A at {x!r}", witness=x)
    dual = {a: F.valuation_label(x for x in X if a in g[x]) for a in A.atoms}
    return hom_from_dual(F.algebra, A, dual)
