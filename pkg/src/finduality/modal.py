"""Kripke frames, P-coalgebras, modal algebras and H-algebras.

The four translation functors:

* ``coalgebra_of_frame`` / ``frame_of_coalgebra`` between frames and P-coalgebras;
* ``halgebra_of_modal`` / ``modal_of_halgebra`` between CAMAs and H-algebras.

An H-algebra ``tau : H(A) -> A`` is stored by its trace on atoms: atom ``x``
goes to the element ``c`` of A such that ``tau*(x) = {c}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from .adjoint import h_functor, h_on_morphism
from .caba import Caba, CabaHom, hom_from_dual
from .errors import AmbientMismatch, BoxViolation, UnknownLabel, ValidationError
from .finset import FinMap, FinSet


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: Any = None
    reason: str = ""

    def __bool__(self):
        return self.ok


PASS = Verdict(True)


# --- frames and coalgebras ------------------------------------------------------------


class KripkeFrame:
    __slots__ = ("worlds", "relation", "_succ")

    def __init__(self, worlds: FinSet | Iterable[str], relation: Iterable[tuple[str, str]]):
        if not isinstance(worlds, FinSet):
            worlds = FinSet(worlds)
        rel = frozenset((x, y) for x, y in relation)
        for x, y in rel:
            for w in (x, y):
                if w not in worlds:
                    raise UnknownLabel(f"edge ({x!r}, {y!r}) mentions unknown world {w!r}", witness=(x, y))
        succ = {x: set() for x in worlds}
        for x, y in rel:
            succ[x].add(y)
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "relation", rel)
        object.__setattr__(self, "_succ", {x: frozenset(s) for x, s in succ.items()})

    def __setattr__(self, name, value):
        raise AttributeError("KripkeFrame is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, KripkeFrame)
            and self.worlds == other.worlds
            and self.relation == other.relation
        )

    def __hash__(self):
        return hash((self.worlds, self.relation))

    def __repr__(self):
        return f"KripkeFrame({list(self.worlds)!r}, {sorted(self.relation)!r})"

    def successors(self, x: str) -> frozenset[str]:
        """``R[x]``."""
        return self._succ[x]

    def edges(self) -> list[tuple[str, str]]:
        return sorted(self.relation)


@dataclass(frozen=True)
class PCoalgebra:
    carrier: FinSet
    rho: Mapping[str, frozenset]

    def __post_init__(self):
        rho = {x: frozenset(s) for x, s in dict(self.rho).items()}
        if set(rho) != set(self.carrier):
            raise ValidationError("rho must be total on the carrier")
        for x, s in rho.items():
            for y in s:
                self.carrier.require(y)
        object.__setattr__(self, "rho", _FrozenDict(rho))


class _FrozenDict(dict):
    def __hash__(self):
        return hash(frozenset(self.items()))

    def _immutable(self, *args, **kwargs):
        raise TypeError("immutable mapping")

    __setitem__ = __delitem__ = update = pop = popitem = clear = setdefault = _immutable


def coalgebra_of_frame(F: KripkeFrame) -> PCoalgebra:
    """``rho_R(x) = R[x]``."""
    return PCoalgebra(F.worlds, {x: F.successors(x) for x in F.worlds})


def frame_of_coalgebra(C: PCoalgebra) -> KripkeFrame:
    """``x R y`` iff ``y in rho(x)``."""
    return KripkeFrame(C.carrier, ((x, y) for x in C.carrier for y in C.rho[x]))


def check_pmorphism(F1: KripkeFrame, F2: KripkeFrame, f: FinMap) -> Verdict:
    """``f[R1[x]] = R2[f(x)]`` for every world x."""
    if f.dom != F1.worlds or f.cod != F2.worlds:
        raise AmbientMismatch("map does not go between the frames' worlds")
    for x in F1.worlds:
        if frozenset(f(y) for y in F1.successors(x)) != F2.successors(f(x)):
            return Verdict(False, x, f"f[R1[{x}]] != R2[f({x})]")
    return PASS


def check_coalg_morphism(C1: PCoalgebra, C2: PCoalgebra, f: FinMap) -> Verdict:
    """The square ``P(f) . rho1 = rho2 . f``."""
    if f.dom != C1.carrier or f.cod != C2.carrier:
        raise AmbientMismatch("map does not go between the coalgebra carriers")
    for x in C1.carrier:
        if frozenset(f(y) for y in C1.rho[x]) != C2.rho[f(x)]:
            return Verdict(False, x, f"P(f)(rho1({x})) != rho2(f({x}))")
    return PASS


def is_frame_isomorphism(F1: KripkeFrame, F2: KripkeFrame, f: FinMap) -> bool:
    return (
        f.dom == F1.worlds
        and f.cod == F2.worlds
        and f.is_bijective()
        and frozenset((f(x), f(y)) for x, y in F1.relation) == F2.relation
    )


# --- modal algebras ---------------------------------------------------------------------


@dataclass(frozen=True)
class ModalAlgebra:
    """A CABA with a candidate box table; the table may be invalid until validated."""

    base: Caba
    box: Mapping[frozenset, frozenset]

    def __post_init__(self):
        box = _FrozenDict((frozenset(a), frozenset(b)) for a, b in dict(self.box).items())
        object.__setattr__(self, "box", box)

    def __call__(self, a: frozenset) -> frozenset:
        return self.box[a]


def validate_modal_algebra(MA: ModalAlgebra) -> ModalAlgebra:
    """Box must be total, preserve top and preserve binary meets."""
    A = MA.base
    carrier = list(A.elements())
    for a in carrier:
        if a not in MA.box:
            raise BoxViolation(f"box is not defined at {A.label(a)}", witness=(a,))
        if not A.is_element(MA.box[a]):
            raise BoxViolation(f"box({A.label(a)}) is not an element", witness=(a,))
    if len(MA.box) != len(carrier):
        raise BoxViolation("box table has entries outside the carrier")
    if MA.box[A.top] != A.top:
        raise BoxViolation("box does not preserve top", witness=(A.top,))
    box = MA.box
    for (a, box_a), (b, box_b) in itertools.combinations([(a, box[a]) for a in carrier], 2):
        if box[a & b] != box_a & box_b:
            raise BoxViolation(
                f"box does not preserve the meet of {A.label(a)} and {A.label(b)}", witness=(a, b)
            )
    return MA


def is_valid_modal_algebra(MA: ModalAlgebra) -> bool:
    try:
        validate_modal_algebra(MA)
    except ValidationError:
        return False
    return True


def is_completely_multiplicative(MA: ModalAlgebra, families: Iterable[Iterable[frozenset]]) -> bool:
    A = MA.base
    for S in families:
        S = list(S)
        if MA(A.meet_all(S)) != A.meet_all(MA(s) for s in S):
            return False
    return True


def box_from_relation(F: KripkeFrame) -> ModalAlgebra:
    """``box_R(S) = {x | R[x] <= S}`` on P(X)."""
    A = Caba(F.worlds)
    succ = [(x, F.successors(x)) for x in F.worlds]
    box = {S: frozenset(x for x, r in succ if r <= S) for S in A.elements()}
    return validate_modal_algebra(ModalAlgebra(A, box))


def relation_from_box(MA: ModalAlgebra) -> KripkeFrame:
    """``x R y`` iff ``x & box(~y) = 0``, on the atoms."""
    A = MA.base
    rel = [
        (x, y)
        for x in A.atoms
        for y in A.atoms
        if x not in MA(A.complement(A.atom(y)))
    ]
    return KripkeFrame(A.atoms, rel)


def relation_from_box_oracle(MA: ModalAlgebra) -> KripkeFrame:
    """``x R y`` iff for all a, ``x <= box a`` implies ``y <= a``."""
    A = MA.base
    carrier = list(A.elements())
    rel = [
        (x, y)
        for x in A.atoms
        for y in A.atoms
        if all(y in a for a in carrier if x in MA(a))
    ]
    return KripkeFrame(A.atoms, rel)


def check_cama_morphism(MA1: ModalAlgebra, MA2: ModalAlgebra, alpha: CabaHom) -> Verdict:
    """``alpha(box1 a) = box2(alpha(a))`` for every a."""
    if alpha.dom != MA1.base or alpha.cod != MA2.base:
        raise AmbientMismatch("hom does not go between the modal algebras")
    for a in MA1.base.elements():
        if alpha(MA1(a)) != MA2(alpha(a)):
            return Verdict(False, a, "alpha does not commute with box")
    return PASS


# --- H-algebras ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HAlgebra:
    base: Caba
    tau_trace: Mapping[str, frozenset]

    def __post_init__(self):
        trace = {x: frozenset(c) for x, c in dict(self.tau_trace).items()}
        if set(trace) != set(self.base.atoms):
            raise ValidationError("tau trace must be defined on every atom")
        for c in trace.values():
            if not self.base.is_element(c):
                raise ValidationError("tau trace values must be elements of the base")
        object.__setattr__(self, "tau_trace", _FrozenDict(trace))

    def tau(self, S: Iterable[frozenset]) -> frozenset:
        """``tau(S) = join{x | trace(x) in S}`` for S a set of elements of A."""
        S = set(S)
        return frozenset(x for x, c in self.tau_trace.items() if c in S)

    def tau_down(self, a: frozenset) -> frozenset:
        """``tau(down a)``: atoms whose trace lies below a."""
        return frozenset(x for x, c in self.tau_trace.items() if c <= a)

    def as_hom(self) -> CabaHom:
        """tau as a complete hom ``H(A) -> A``."""
        H = h_functor(self.base)
        dual = {x: self.base.label(c) for x, c in self.tau_trace.items()}
        return hom_from_dual(H.algebra, self.base, dual)


def halgebra_of_modal(MA: ModalAlgebra) -> HAlgebra:
    """The functor A: ``trace(x) = meet{a | x <= box a}``."""
    validate_modal_algebra(MA)
    A = MA.base
    carrier = list(A.elements())
    trace = {x: A.meet_all(a for a in carrier if x in MA(a)) for x in A.atoms}
    H = HAlgebra(A, trace)
    for a in carrier:
        if H.tau_down(a) != MA(a):
            raise ValidationError(f"tau(down {A.label(a)}) != box {A.label(a)}", witness=a)
    return H


def modal_of_halgebra(H: HAlgebra) -> ModalAlgebra:
    """The functor M: ``box(a) = tau(down a)``."""
    A = H.base
    return ModalAlgebra(A, {a: H.tau_down(a) for a in A.elements()})


def check_halg_morphism(H1: HAlgebra, H2: HAlgebra, alpha: CabaHom, full: bool = False) -> Verdict:
    """The square ``alpha . tau1 = tau2 . H(alpha)``.

    By default only on the generators ``down a`` of H(A1); ``full=True``
    compares on every element of H(A1).
    """
    if alpha.dom != H1.base or alpha.cod != H2.base:
        raise AmbientMismatch("hom does not go between the H-algebras")
    A1 = H1.base
    Halpha = h_on_morphism(alpha)
    t1, t2 = H1.as_hom(), H2.as_hom()
    if full:
        family = Halpha.dom.elements()
    else:
        H = h_functor(A1)
        family = (H.down(a) for a in A1.elements())
    for S in family:
        if alpha(t1(S)) != t2(Halpha(S)):
            return Verdict(False, sorted(S), "alpha . tau1 != tau2 . H(alpha)")
    return PASS
