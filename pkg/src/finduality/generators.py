"""Exhaustive and seeded-random generators for lattices, frames, algebras and maps.

Lattices are enumerated up to isomorphism by putting the inner elements in
a linear extension (so every strict order is upper triangular), keeping the
transitive ones that form a lattice once a bottom and top are added, and
deduplicating by a canonical form over all relabellings.
"""

from __future__ import annotations

import itertools
import random
import string
from functools import lru_cache
from typing import Iterator

from .caba import Caba
from .csl import CslLattice, validate_csl
from .errors import NoMeet
from .finset import FinMap, FinSet
from .modal import KripkeFrame, ModalAlgebra, box_from_relation

INNER_LABELS = string.ascii_lowercase
ATOM_LABELS = "pqrstuvw"


def standard_set(n: int) -> FinSet:
    """``{a, b, c, ...}`` with n elements."""
    return FinSet(INNER_LABELS[:n])


def standard_caba(n: int) -> Caba:
    """The CABA on atoms ``p, q, r, ...``."""
    return Caba(FinSet(ATOM_LABELS[:n]))


def world_set(n: int) -> FinSet:
    return FinSet(str(i) for i in range(n))


# --- lattices -------------------------------------------------------------------


def _lattice_from_inner(k: int, strict: frozenset[tuple[int, int]]) -> CslLattice | None:
    inner = list(INNER_LABELS[:k])
    pairs = [(inner[i], inner[j]) for i, j in strict]
    pairs += [("0", x) for x in inner] + [(x, "1") for x in inner] + [("0", "1")]
    try:
        return validate_csl(["0", "1", *inner], pairs)
    except NoMeet:
        return None


def _is_transitive(strict: frozenset[tuple[int, int]]) -> bool:
    return all((i, l) in strict for i, j in strict for (j2, l) in strict if j == j2)


def _canonical(k: int, strict: frozenset[tuple[int, int]]) -> tuple:
    best = None
    for perm in itertools.permutations(range(k)):
        form = tuple(sorted((perm[i], perm[j]) for i, j in strict))
        if best is None or form < best:
            best = form
    return best


@lru_cache(maxsize=None)
def lattices_up_to_iso(n: int) -> tuple[CslLattice, ...]:
    """One representative of every lattice with exactly n elements."""
    if n < 1:
        return ()
    if n == 1:
        return (validate_csl(["1"], []),)
    k = n - 2
    slots = [(i, j) for i in range(k) for j in range(i + 1, k)]
    seen, out = set(), []
    for mask in range(1 << len(slots)):
        strict = frozenset(s for b, s in enumerate(slots) if mask >> b & 1)
        if not _is_transitive(strict):
            continue
        key = _canonical(k, strict)
        if key in seen:
            continue
        seen.add(key)
        L = _lattice_from_inner(k, strict)
        if L is not None:
            out.append(L)
    return tuple(out)


def all_lattices(max_size: int) -> Iterator[CslLattice]:
    for n in range(1, max_size + 1):
        yield from lattices_up_to_iso(n)


def random_lattice(rng: random.Random, max_size: int, attempts: int = 1000) -> CslLattice:
    """Random closure of a random relation on the inner elements, repaired by rejection."""
    for _ in range(attempts):
        n = rng.randint(1, max_size)
        if n == 1:
            return validate_csl(["1"], [])
        k = n - 2
        p = rng.choice((0.2, 0.5, 0.8))
        order = list(range(k))
        rng.shuffle(order)
        strict = set()
        for i in range(k):
            for j in range(i + 1, k):
                if rng.random() < p:
                    strict.add((order[i], order[j]))
        L = _lattice_from_inner(k, frozenset(strict))
        if L is not None:
            return L
    raise RuntimeError("no lattice found")  # pragma: no cover


# --- frames and modal algebras -------------------------------------------------------


def all_frames(n: int) -> Iterator[KripkeFrame]:
    """Every relation on the worlds ``0 .. n-1``."""
    W = world_set(n)
    cells = [(x, y) for x in W for y in W]
    for mask in range(1 << len(cells)):
        yield KripkeFrame(W, [c for b, c in enumerate(cells) if mask >> b & 1])


def frames_up_to_iso(n: int) -> list[KripkeFrame]:
    W = world_set(n)
    seen, out = set(), []
    perms = list(itertools.permutations(W.elements))
    for F in all_frames(n):
        key = min(
            tuple(sorted((p[int(x)], p[int(y)]) for x, y in F.relation)) for p in perms
        )
        if key not in seen:
            seen.add(key)
            out.append(F)
    return out


def random_frame(rng: random.Random, n: int, p: float | None = None) -> KripkeFrame:
    if p is None:
        p = rng.choice((0.2, 0.5, 0.8))
    W = world_set(n)
    return KripkeFrame(W, [(x, y) for x in W for y in W if rng.random() < p])


def frame_algebras(max_atoms: int) -> Iterator[ModalAlgebra]:
    """All CAMAs (up to the labelling of atoms) built from frames, via box_R."""
    for n in range(max_atoms + 1):
        for F in all_frames(n):
            yield box_from_relation(F)


def all_box_tables(A: Caba) -> Iterator[ModalAlgebra]:
    """Every map from the carrier to itself, valid or not."""
    carrier = list(A.elements())
    for images in itertools.product(carrier, repeat=len(carrier)):
        yield ModalAlgebra(A, dict(zip(carrier, images)))


def random_box_table(rng: random.Random, A: Caba) -> ModalAlgebra:
    carrier = list(A.elements())
    return ModalAlgebra(A, {a: rng.choice(carrier) for a in carrier})


def random_map(rng: random.Random, X: FinSet, Y: FinSet) -> FinMap:
    return FinMap(X, Y, {x: rng.choice(Y.elements) for x in X})
