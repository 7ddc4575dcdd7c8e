"""Finite complete meet-semilattices and their characters.

A finite meet-semilattice with top is a complete lattice, so a
:class:`CslLattice` exposes joins too (computed as meets of upper bounds).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .caba import Caba, CabaHom
from .errors import (
    BoundExceeded,
    ConstructionMismatch,
    MeetViolation,
    NoMeet,
    NoTop,
    NotAPoset,
    TopViolation,
    UnknownLabel,
)
from .finset import FinMap, FinSet, encode_subset


class CslLattice:
    __slots__ = ("elements", "top", "bottom", "_down", "_up", "_meet", "_pairs")

    def __init__(self, elements, down, up, meet, top, bottom):
        self.elements = elements
        self._down = down
        self._up = up
        self._meet = meet
        self.top = top
        self.bottom = bottom
        self._pairs = frozenset((a, b) for b in elements for a in down[b])

    def __eq__(self, other):
        return (
            isinstance(other, CslLattice)
            and self.elements == other.elements
            and self._pairs == other._pairs
        )

    def __hash__(self):
        return hash((self.elements, self._pairs))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"CslLattice({list(self.elements)!r}, {len(self._pairs)} order pairs)"

    def leq(self, a: str, b: str) -> bool:
        return a in self._down[b]

    def lt(self, a: str, b: str) -> bool:
        return a != b and a in self._down[b]

    def down(self, a: str) -> frozenset[str]:
        return self._down[a]

    def up(self, a: str) -> frozenset[str]:
        return self._up[a]

    def order_pairs(self) -> frozenset[tuple[str, str]]:
        return self._pairs

    def covers(self) -> list[tuple[str, str]]:
        """Hasse diagram edges ``(a, b)`` with ``a`` covered by ``b``."""
        out = []
        for a, b in sorted(self._pairs):
            if a != b and not any(self.lt(a, c) and self.lt(c, b) for c in self.elements):
                out.append((a, b))
        return out

    def meet(self, a: str, b: str) -> str:
        return self._meet[a, b]

    def meet_all(self, items: Iterable[str]) -> str:
        out = self.top
        for a in items:
            out = self._meet[out, a]
        return out

    def join(self, a: str, b: str) -> str:
        return self.meet_all(self._up[a] & self._up[b])

    def join_all(self, items: Iterable[str]) -> str:
        uppers = frozenset(self.elements)
        for a in items:
            uppers &= self._up[a]
        return self.meet_all(uppers)


def _closure(labels, raw):
    succ = {x: {x} for x in labels}
    for a, b in raw:
        succ[a].add(b)
    up = {}
    for x in labels:
        seen, stack = {x}, [x]
        while stack:
            for y in succ[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        up[x] = frozenset(seen)
    return up


def validate_csl(elements: Iterable[str], raw_leq: Iterable[tuple[str, str]]) -> CslLattice:
    """Build a lattice from any relation by reflexive-transitive closure."""
    X = FinSet(elements)
    raw = []
    for a, b in raw_leq:
        for z in (a, b):
            if z not in X:
                raise UnknownLabel(f"order pair mentions unknown element {z!r}", witness=(a, b))
        raw.append((a, b))
    up = _closure(X.elements, raw)
    for a, b in itertools.combinations(X.elements, 2):
        if b in up[a] and a in up[b]:
            raise NotAPoset(f"{a!r} <= {b!r} <= {a!r}: the order has a cycle", witness=(a, b))
    down = {x: frozenset(y for y in X if x in up[y]) for x in X}
    tops = [t for t in X if down[t] == frozenset(X.elements)]
    if not tops:
        raise NoTop("no element lies above every element")
    top = tops[0]
    meet = {}
    for a in X:
        for b in X:
            if (b, a) in meet:
                meet[a, b] = meet[b, a]
                continue
            lower = down[a] & down[b]
            glb = [g for g in lower if lower <= down[g]]
            if not glb:
                raise NoMeet(f"{a!r} and {b!r} have no greatest lower bound", witness=(a, b))
            meet[a, b] = glb[0]
    bottom = None
    for x in X:
        if up[x] == frozenset(X.elements):
            bottom = x
    return CslLattice(X, down, up, meet, top, bottom)


TWO = validate_csl(["0", "1"], [("0", "1")])


def chain(n: int) -> CslLattice:
    """The n-chain ``0 < c1 < ... < 1``; the 3-chain is ``0 < m < 1``."""
    if n == 1:
        return validate_csl(["1"], [])
    if n == 3:
        labels = ["0", "m", "1"]
    else:
        labels = ["0"] + [f"c{i}" for i in range(1, n - 1)] + ["1"]
    return validate_csl(labels, zip(labels, labels[1:]))


def diamond() -> CslLattice:
    return validate_csl(["0", "x", "y", "1"], [("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")])


@lru_cache(maxsize=None)
def caba_lattice(A: Caba) -> CslLattice:
    """The forgetful functor U: the carrier of A ordered by inclusion.

    Elements are labelled by their canonical subset encodings.
    """
    carrier = list(A.elements(bound=6))
    labels = [A.label(a) for a in carrier]
    pairs = [(A.label(a), A.label(b)) for a in carrier for b in carrier if a <= b]
    return validate_csl(labels, pairs)


# --- morphisms -----------------------------------------------------------------


@dataclass(frozen=True)
class CslHom:
    dom: CslLattice
    cod: CslLattice
    graph: FinMap

    def __call__(self, a: str) -> str:
        return self.graph(a)


def validate_csl_hom(dom: CslLattice, cod: CslLattice, graph: Mapping[str, str]) -> CslHom:
    """Finite reduction: top and binary meets preserved iff all meets are."""
    fmap = FinMap(dom.elements, cod.elements, graph)
    if fmap(dom.top) != cod.top:
        raise TopViolation(f"top {dom.top!r} is sent to {fmap(dom.top)!r}", witness=(dom.top,))
    for a, b in itertools.combinations(dom.elements, 2):
        if fmap(dom.meet(a, b)) != cod.meet(fmap(a), fmap(b)):
            raise MeetViolation(
                f"image of {a!r} meet {b!r} is not the meet of the images", witness=(a, b)
            )
    return CslHom(dom, cod, fmap)


def identity_csl_hom(M: CslLattice) -> CslHom:
    return CslHom(M, M, FinMap(M.elements, M.elements, {a: a for a in M}))


def compose_csl_homs(g: CslHom, f: CslHom) -> CslHom:
    return CslHom(f.dom, g.cod, FinMap(f.dom.elements, g.cod.elements, {a: g(f(a)) for a in f.dom}))


def cabahom_as_cslhom(alpha: CabaHom) -> CslHom:
    """U on morphisms: a complete boolean hom viewed on the underlying lattices."""
    A, B = alpha.dom, alpha.cod
    graph = {A.label(a): B.label(alpha(a)) for a in A.elements(bound=6)}
    return CslHom(caba_lattice(A), caba_lattice(B), FinMap(caba_lattice(A).elements, caba_lattice(B).elements, graph))


def all_csl_homs(dom: CslLattice, cod: CslLattice):
    """Brute force: every map dom -> cod that passes :func:`validate_csl_hom`."""
    for images in itertools.product(cod.elements, repeat=len(dom)):
        graph = dict(zip(dom.elements, images))
        try:
            yield validate_csl_hom(dom, cod, graph)
        except (TopViolation, MeetViolation):
            continue


def csl_left_adjoint(gamma: CslHom) -> FinMap:
    """``g(n) = meet{a | n <= gamma(a)}``, with the adjunction verified."""
    M, N = gamma.dom, gamma.cod
    graph = {n: M.meet_all(a for a in M if N.leq(n, gamma(a))) for n in N}
    for n in N:
        for a in M:
            if M.leq(graph[n], a) != N.leq(n, gamma(a)):
                raise ConstructionMismatch(
                    f"left adjoint fails at n={n!r}, a={a!r}", witness=(n, a)
                )
    return FinMap(N.elements, M.elements, graph)


# --- characters ------------------------------------------------------------------

CHARACTER_BOUND = 12


def sigma(M: CslLattice, a: str) -> CslHom:
    """``sigma_a(m) = 1`` iff ``a <= m``."""
    graph = {m: "1" if M.leq(a, m) else "0" for m in M}
    return CslHom(M, TWO, FinMap(M.elements, TWO.elements, graph))


def one_set(chi: CslHom) -> frozenset[str]:
    return frozenset(m for m in chi.dom if chi(m) == "1")


def character_label(chi: CslHom) -> str:
    return encode_subset(one_set(chi))


def _check_characters(M: CslLattice, found: list[frozenset[str]]) -> list[tuple[str, CslHom]]:
    out = []
    for ones in found:
        a = M.meet_all(ones)
        chi = sigma(M, a)
        if one_set(chi) != ones:
            raise ConstructionMismatch(f"character with 1-set {sorted(ones)} is not principal")
        out.append((a, chi))
    out.sort(key=lambda pair: pair[0])
    return out


def csl_characters(M: CslLattice) -> list[tuple[str, CslHom]]:
    """All complete meet-homs ``M -> 2``, found by brute force over ``2^|M|`` maps.

    Complete meet preservation is tested literally: ``chi(meet S) = min chi[S]``
    for every subset S, including the empty one. Each character is returned
    paired with the element ``a`` for which it equals ``sigma_a``.
    """
    n = len(M)
    if n > CHARACTER_BOUND:
        raise BoundExceeded(f"lattice of size {n} exceeds the character bound")
    elems = M.elements.elements
    subset_meet = [M.meet_all(elems[i] for i in range(n) if mask >> i & 1) for mask in range(1 << n)]
    pos = {x: i for i, x in enumerate(elems)}
    meet_bit = [1 << pos[m] for m in subset_meet]
    found = []
    for ones in range(1 << n):
        if all(
            bool(ones & meet_bit[S]) == (S & ~ones == 0) for S in range(1 << n)
        ):
            found.append(frozenset(elems[i] for i in range(n) if ones >> i & 1))
    return _check_characters(M, found)


@dataclass(frozen=True)
class SlDual:
    characters: list
    i_map: dict  # m -> frozenset of character labels with chi(m) = 1


def sl_characters(M: CslLattice) -> SlDual:
    """Characters in the finitary sense: maps preserving top and binary meets."""
    n = len(M)
    if n > CHARACTER_BOUND:
        raise BoundExceeded(f"lattice of size {n} exceeds the character bound")
    elems = M.elements.elements
    found = []
    for bits in itertools.product((0, 1), repeat=n):
        val = dict(zip(elems, bits))
        if val[M.top] != 1:
            continue
        if all(val[M.meet(a, b)] == min(val[a], val[b]) for a, b in itertools.combinations(elems, 2)):
            found.append(frozenset(x for x in elems if val[x]))
    chars = _check_characters(M, found)
    i_map = {m: frozenset(character_label(chi) for _, chi in chars if chi(m) == "1") for m in M}
    return SlDual(chars, i_map)


def character_bijection(M: CslLattice) -> FinMap:
    """``a -> sigma_a`` from M onto the characters (labelled by their 1-sets)."""
    chars = csl_characters(M)
    labels = FinSet(character_label(chi) for _, chi in chars)
    return FinMap(M.elements, labels, {a: character_label(sigma(M, a)) for a in M})


def character_leq(chi: CslHom, psi: CslHom) -> bool:
    """Pointwise order on characters."""
    return all(chi(m) <= psi(m) for m in chi.dom)
