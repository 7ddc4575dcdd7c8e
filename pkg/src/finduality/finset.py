"""Finite sets, finite maps, and the covariant powerset functor.

Labels are opaque strings. A subset is encoded canonically as
``{a,b,c}`` (sorted members, comma separated), so powersets of powersets
get nested labels such as ``{{},{a}}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import (
    AmbientMismatch,
    BoundExceeded,
    DuplicateLabel,
    NotAFunction,
    UnknownLabel,
)

DEFAULT_BOUND = 20


class FinSet:
    """An immutable finite set of string labels in sorted order."""

    __slots__ = ("elements", "_index")

    def __init__(self, labels: Iterable[str] = ()):
        labels = list(labels)
        for label in labels:
            if not isinstance(label, str):
                raise TypeError(f"labels must be strings, got {label!r}")
        ordered = sorted(set(labels))
        if len(ordered) != len(labels):
            seen = set()
            dup = next(x for x in labels if x in seen or seen.add(x))
            raise DuplicateLabel(f"duplicate label {dup!r}", witness=dup)
        object.__setattr__(self, "elements", tuple(ordered))
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(ordered)})

    def __setattr__(self, name, value):
        raise AttributeError("FinSet is immutable")

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, label):
        return label in self._index

    def __eq__(self, other):
        return isinstance(other, FinSet) and self.elements == other.elements

    def __hash__(self):
        return hash(("FinSet", self.elements))

    def __repr__(self):
        return f"FinSet({list(self.elements)!r})"

    def index(self, label: str) -> int:
        return self._index[label]

    def require(self, label: str) -> str:
        if label not in self._index:
            raise UnknownLabel(f"{label!r} is not an element of {self!r}", witness=label)
        return label


def encode_subset(members: Iterable[str]) -> str:
    return "{" + ",".join(sorted(set(members))) + "}"


def decode_subset(label: str) -> frozenset[str]:
    """Inverse of :func:`encode_subset`; understands nested encodings."""
    if len(label) < 2 or label[0] != "{" or label[-1] != "}":
        raise ValueError(f"not a subset encoding: {label!r}")
    body = label[1:-1]
    if not body:
        return frozenset()
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced braces in {label!r}")
        elif ch == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    if depth != 0:
        raise ValueError(f"unbalanced braces in {label!r}")
    parts.append(body[start:])
    return frozenset(parts)


@dataclass(frozen=True)
class Subset:
    ambient: FinSet
    members: frozenset

    def __post_init__(self):
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        for m in members:
            self.ambient.require(m)

    @property
    def label(self) -> str:
        return encode_subset(self.members)

    def sorted(self) -> list[str]:
        return sorted(self.members)

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members


class FinMap:
    """A total function between two FinSets, stored by its graph."""

    __slots__ = ("dom", "cod", "graph", "_key")

    def __init__(self, dom: FinSet, cod: FinSet, graph: Mapping[str, str]):
        graph = dict(graph)
        extra = set(graph) - set(dom.elements)
        if extra:
            x = min(extra)
            raise NotAFunction(f"{x!r} is not in the domain", witness=x)
        for x in dom:
            if x not in graph:
                raise NotAFunction(f"no image given for {x!r}", witness=x)
            if graph[x] not in cod:
                raise NotAFunction(
                    f"image {graph[x]!r} of {x!r} is not in the codomain", witness=x
                )
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "graph", MappingProxyType(graph))
        object.__setattr__(self, "_key", (dom, cod, tuple(sorted(graph.items()))))

    def __setattr__(self, name, value):
        raise AttributeError("FinMap is immutable")

    def __call__(self, x: str) -> str:
        return self.graph[x]

    def __eq__(self, other):
        return isinstance(other, FinMap) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FinMap({dict(self.graph)!r})"

    def image(self) -> frozenset[str]:
        return frozenset(self.graph.values())

    def is_injective(self) -> bool:
        return len(self.image()) == len(self.dom)

    def is_surjective(self) -> bool:
        return len(self.image()) == len(self.cod)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def inverse(self) -> FinMap:
        if not self.is_bijective():
            raise NotAFunction("map is not a bijection")
        return FinMap(self.cod, self.dom, {y: x for x, y in self.graph.items()})


def identity(X: FinSet) -> FinMap:
    return FinMap(X, X, {x: x for x in X})


def compose(g: FinMap, f: FinMap) -> FinMap:
    """``g . f``: apply ``f`` first."""
    if f.cod != g.dom:
        raise AmbientMismatch("maps are not composable")
    return FinMap(f.dom, g.cod, {x: g(f(x)) for x in f.dom})


def all_maps(X: FinSet, Y: FinSet) -> Iterator[FinMap]:
    """Every function X -> Y, |Y|^|X| of them, in lexicographic order."""
    for images in itertools.product(Y.elements, repeat=len(X)):
        yield FinMap(X, Y, dict(zip(X.elements, images)))


def iter_subsets(labels: Iterable[str]) -> Iterator[frozenset[str]]:
    """All subsets in bitmask order over the sorted labels."""
    items = sorted(labels)
    n = len(items)
    for mask in range(1 << n):
        yield frozenset(items[i] for i in range(n) if mask >> i & 1)


def check_bound(n: int, bound: int, what: str = "set") -> None:
    if n > bound:
        raise BoundExceeded(f"{what} of size {n} exceeds the enumeration bound {bound}")


def powerset(X: FinSet, bound: int = DEFAULT_BOUND) -> FinSet:
    """P(X) as a FinSet whose labels are the canonical subset encodings."""
    check_bound(len(X), bound)
    return _powerset(X)


@lru_cache(maxsize=256)
def _powerset(X: FinSet) -> FinSet:
    return FinSet(encode_subset(s) for s in iter_subsets(X))


def direct_image(f: FinMap, S: Subset) -> Subset:
    """P(f)(S) = f[S]."""
    if S.ambient != f.dom:
        raise AmbientMismatch("subset does not live in the domain of the map")
    return Subset(f.cod, frozenset(f(s) for s in S.members))


def inverse_image(f: FinMap, T: Subset) -> Subset:
    if T.ambient != f.cod:
        raise AmbientMismatch("subset does not live in the codomain of the map")
    return Subset(f.dom, frozenset(x for x in f.dom if f(x) in T.members))


def powerset_map(f: FinMap, bound: int = DEFAULT_BOUND) -> FinMap:
    """P(f) as a FinMap between the labelled powersets."""
    graph = {
        encode_subset(s): encode_subset(f(x) for x in s) for s in iter_subsets(f.dom)
    }
    return FinMap(powerset(f.dom, bound), powerset(f.cod, bound), graph)


def tarski_unit_set(X: FinSet) -> FinMap:
    """The unit x -> {x} into the atoms of the powerset algebra.

    The powerset algebra on X carries the atom set X itself (atom ``x`` is
    the element ``{x}``), so the graph is label-identical; callers that need
    the singleton element use ``Caba.atom``.
    """
    return FinMap(X, X, {x: x for x in X})
