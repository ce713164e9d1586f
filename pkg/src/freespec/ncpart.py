"""Noncrossing pairings (Temperley-Lieb diagrams) and noncrossing partitions.

Points are labelled ``1..m`` on a single line.  A two-row TL picture maps
onto this by reading the bottom row reversed, so gluing two diagrams is
plain component counting on the union of their pair sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InputError, ResourceCapError

PAIRING_CAP = 8
PARTITION_CAP = 10

__all__ = [
    "PAIRING_CAP",
    "PARTITION_CAP",
    "NCPairing",
    "NCPartition",
    "Permutation",
    "catalan",
    "enumerate_pairings",
    "enumerate_nc_partitions",
    "kreweras",
    "loop_count",
]


def catalan(k: int) -> int:
    """Return the k-th Catalan number ``binom(2k, k) / (k + 1)``."""
    if k < 0:
        raise InputError(f"catalan index must be nonnegative, got {k}")
    return math.comb(2 * k, k) // (k + 1)


def _has_crossing(labels: Sequence[int]) -> bool:
    # labels[i] is the block id of point i+1; a crossing is a<b<c<d with
    # labels a==c != b==d.
    last_seen: dict[int, int] = {}
    m = len(labels)
    for c in range(m):
        la = labels[c]
        if la in last_seen:
            a = last_seen[la]
            inside = set(labels[a + 1:c])
            outside = set(labels[:a]) | set(labels[c + 1:])
            if (inside - {la}) & outside:
                return True
        last_seen[la] = c
    return False


@dataclass(frozen=True)
class NCPairing:
    """A noncrossing perfect pairing of the points ``1..2k``."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        points = sorted(x for p in pairs for x in p)
        if points != list(range(1, 2 * len(pairs) + 1)):
            raise InputError(f"pairs {pairs} do not cover 1..{2 * len(pairs)} exactly once")
        if any(len(set(p)) != 2 for p in pairs):
            raise InputError(f"degenerate pair in {pairs}")
        if _has_crossing(self.labels()):
            raise InputError(f"pairing {pairs} is crossing")

    @property
    def k(self) -> int:
        return len(self.pairs)

    def labels(self) -> list[int]:
        """Block index of each point, in point order."""
        out = [0] * (2 * len(self.pairs))
        for idx, (a, b) in enumerate(self.pairs):
            out[a - 1] = out[b - 1] = idx
        return out

    def partner(self) -> dict[int, int]:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    def is_constant_on(self, indices: Sequence) -> bool:
        """True when ``indices`` takes equal values on both ends of every pair."""
        return all(indices[a - 1] == indices[b - 1] for a, b in self.pairs)

    def as_partition(self) -> "NCPartition":
        return NCPartition(self.pairs)

    def __str__(self):
        return "{" + ",".join("{%d,%d}" % p for p in self.pairs) + "}"


@dataclass(frozen=True)
class NCPartition:
    """A noncrossing partition of ``1..m``; blocks are stored sorted."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        if any(len(b) == 0 for b in blocks):
            raise InputError("empty block")
        points = sorted(x for b in blocks for x in b)
        if points != list(range(1, len(points) + 1)):
            raise InputError(f"blocks {blocks} do not partition 1..{len(points)}")
        if _has_crossing(self.labels()):
            raise InputError(f"partition {blocks} is crossing")

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def labels(self) -> list[int]:
        out = [0] * self.size
        for idx, block in enumerate(self.blocks):
            for x in block:
                out[x - 1] = idx
        return out

    def block_sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def rotate(self, shift: int = 1) -> "NCPartition":
        """Relabel every point ``i`` as ``i + shift`` modulo m (in 1..m)."""
        m = self.size
        return NCPartition(tuple(tuple((x - 1 + shift) % m + 1 for x in b) for b in self.blocks))

    def as_permutation(self) -> "Permutation":
        """Each block becomes an increasing cycle."""
        images = [0] * self.size
        for block in self.blocks:
            for a, b in zip(block, block[1:] + block[:1]):
                images[a - 1] = b
        return Permutation(tuple(images))

    @classmethod
    def discrete(cls, m: int) -> "NCPartition":
        return cls(tuple((i,) for i in range(1, m + 1)))

    @classmethod
    def full(cls, m: int) -> "NCPartition":
        return cls((tuple(range(1, m + 1)),))

    def __str__(self):
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``1..n`` given by its image list."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise InputError(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __matmul__(self, other: "Permutation") -> "Permutation":
        """Composition ``(self @ other)(i) = self(other(i))``."""
        if self.n != other.n:
            raise InputError("permutation sizes differ")
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = []
            x = start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self.images, start=1) if i == j)

    @classmethod
    def cyclic(cls, n: int) -> "Permutation":
        return cls(tuple(list(range(2, n + 1)) + [1]))


def _pairings_of(points: tuple[int, ...]) -> list[list[tuple[int, int]]]:
    if not points:
        return [[]]
    first = points[0]
    out = []
    # first pairs with an element leaving an even number of points inside
    for j in range(1, len(points), 2):
        inner = _pairings_of(points[1:j])
        outer = _pairings_of(points[j + 1:])
        for p in inner:
            for q in outer:
                out.append([(first, points[j])] + p + q)
    return out


@lru_cache(maxsize=None)
def _pairings_cached(k: int) -> tuple[NCPairing, ...]:
    raw = _pairings_of(tuple(range(1, 2 * k + 1)))
    return tuple(sorted((NCPairing(tuple(p)) for p in raw), key=lambda p: p.pairs))


def enumerate_pairings(k: int, cap: int = PAIRING_CAP) -> list[NCPairing]:
    """All noncrossing pairings of ``2k`` points, in lexicographic order.

    The order is that of the sorted pair lists, so row ``i`` of any matrix
    indexed by pairings is reproducible across runs.
    """
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    if k > cap:
        raise ResourceCapError(f"k={k} exceeds the pairing cap {cap}")
    return list(_pairings_cached(k))


def _partitions_of(points: tuple[int, ...]) -> list[list[tuple[int, ...]]]:
    if not points:
        return [[]]
    first, rest = points[0], points[1:]
    out = []
    # choose the block of `first`: a subset of rest, split the gaps
    n = len(rest)
    for mask in range(1 << n):
        chosen = [rest[i] for i in range(n) if mask >> i & 1]
        block = (first,) + tuple(chosen)
        gaps = []
        cuts = [points.index(x) for x in block] + [len(points)]
        for a, b in zip(cuts, cuts[1:]):
            gaps.append(points[a + 1:b])
        parts = [[]]
        for gap in gaps:
            sub = _partitions_of(gap)
            parts = [p + s for p in parts for s in sub]
        out.extend([[block] + p for p in parts])
    return out


@lru_cache(maxsize=None)
def _partitions_cached(m: int) -> tuple[NCPartition, ...]:
    raw = _partitions_of(tuple(range(1, m + 1)))
    return tuple(sorted((NCPartition(tuple(p)) for p in raw), key=lambda p: p.blocks))


def enumerate_nc_partitions(m: int, cap: int = PARTITION_CAP) -> list[NCPartition]:
    """All noncrossing partitions of ``1..m`` (Catalan(m) of them)."""
    if m < 1:
        raise InputError(f"m must be >= 1, got {m}")
    if m > cap:
        raise ResourceCapError(f"m={m} exceeds the partition cap {cap}")
    return list(_partitions_cached(m))


def kreweras(p: NCPartition) -> NCPartition:
    """Kreweras complement of ``p``.

    Computed as the cycle structure of ``P^{-1} o gamma`` where ``P`` turns
    each block into an increasing cycle and ``gamma = (1 2 ... m)``.  With
    interleaved points ``1, 1', 2, 2', ...`` this is the coarsest partition
    of the primed points whose union with ``p`` stays noncrossing.
    """
    m = p.size
    perm = p.as_permutation().inverse() @ Permutation.cyclic(m)
    return NCPartition(tuple(perm.cycles()))


@lru_cache(maxsize=None)
def _kreweras_table(m: int) -> tuple[tuple[NCPartition, NCPartition], ...]:
    return tuple((p, kreweras(p)) for p in enumerate_nc_partitions(m))


def kreweras_pairs(m: int) -> Iterable[tuple[NCPartition, NCPartition]]:
    """``(pi, kreweras(pi))`` for every pi in NC(m), cached per m."""
    return _kreweras_table(m)


def loop_count(p: NCPairing, q: NCPairing) -> int:
    """Number of connected components of the graph with edges ``p u q``."""
    if p.k != q.k:
        raise InputError(f"pairings of different sizes: {p.k} vs {q.k}")
    parent = list(range(2 * p.k + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = 2 * p.k
    for a, b in p.pairs + q.pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            components -= 1
    return components
