"""Rooted colored graphs: closed-walk moments, root spectral measures and the
lexicographic free product ("a copy of X at each vertex of Y")."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import InputError, ResourceCapError
from .freeprob import ComparisonReport, MomentSequence, free_mult_conv, moment_compare
from .measures import RealMeasure
from .ncpart import PAIRING_CAP

DEFAULT_COLOR = "a"
AUTOMORPHISM_CAP = 8
EIGEN_CLUSTER_TOL = 1e-8

__all__ = [
    "RootedColoredGraph",
    "classical_character_measure_graph",
    "conjecture_compare",
    "lex_free_product",
    "loop_moments",
    "vertex_spectral_measure",
]


@dataclass(frozen=True)
class RootedColoredGraph:
    """Undirected graph on ``0..n-1`` with string-colored edges and a root.

    Edges are stored as ``(v, w, color)`` with ``v < w``.  Parallel edges are
    allowed only when their colors differ.
    """

    n: int
    edges: frozenset
    root: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise InputError("graph needs at least one vertex")
        if not 0 <= self.root < self.n:
            raise InputError(f"root {self.root} outside 0..{self.n - 1}")
        norm = set()
        for edge in self.edges:
            if len(edge) == 2:
                v, w, c = edge[0], edge[1], DEFAULT_COLOR
            else:
                v, w, c = edge
            v, w, c = int(v), int(w), str(c)
            if v == w:
                raise InputError(f"loop at vertex {v}")
            if not (0 <= v < self.n and 0 <= w < self.n):
                raise InputError(f"edge ({v},{w}) outside 0..{self.n - 1}")
            norm.add((min(v, w), max(v, w), c))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, root: int = 0) -> "RootedColoredGraph":
        edges = list(edges)
        keys = [(min(e[0], e[1]), max(e[0], e[1]), e[2] if len(e) > 2 else DEFAULT_COLOR) for e in edges]
        if len(set(keys)) != len(keys):
            raise InputError("parallel edges with the same color")
        return cls(n, frozenset(edges), root)

    @classmethod
    def point(cls) -> "RootedColoredGraph":
        return cls(1, frozenset(), 0)

    @property
    def colors(self) -> frozenset:
        return frozenset(c for _, _, c in self.edges)

    def with_root(self, root: int) -> "RootedColoredGraph":
        return RootedColoredGraph(self.n, self.edges, root)

    def recolor(self, color: str) -> "RootedColoredGraph":
        """Same graph with every edge painted ``color`` (parallel edges must not collapse)."""
        return RootedColoredGraph.from_edges(self.n, [(v, w, color) for v, w, _ in self.edges], self.root)

    def adjacency(self, color: str | None = None) -> np.ndarray:
        """Integer adjacency matrix; all colors summed when ``color`` is None."""
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for v, w, c in self.edges:
            if color is None or c == color:
                a[v, w] += 1
                a[w, v] += 1
        return a

    def to_json(self) -> dict:
        return {"n": self.n, "root": self.root, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_json(cls, data) -> "RootedColoredGraph":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls.from_edges(int(data["n"]), [tuple(e) for e in data.get("edges", [])], int(data.get("root", 0)))
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad graph JSON: {exc}") from exc


def loop_moments(g: RootedColoredGraph, K: int, cap: int = 2 * PAIRING_CAP) -> MomentSequence:
    """``m_k`` = number of closed walks of length k at the root, k = 1..K."""
    if K < 1:
        raise InputError("horizon must be >= 1")
    if K > cap:
        raise ResourceCapError(f"K={K} exceeds the walk-length cap {cap}")
    a = g.adjacency().astype(object)
    v = np.zeros(g.n, dtype=object)
    v[g.root] = 1
    out = []
    for _ in range(K):
        v = a.dot(v)
        out.append(int(v[g.root]))
    return MomentSequence(tuple(out))


def vertex_spectral_measure(g: RootedColoredGraph, root: int | None = None) -> RealMeasure:
    """Spectral measure of the total adjacency matrix at the root vector.

    Eigenvalues closer than ``EIGEN_CLUSTER_TOL`` are merged and their squared
    root-coordinates summed; zero-weight eigenvalues are dropped.
    """
    root = g.root if root is None else root
    vals, vecs = np.linalg.eigh(g.adjacency().astype(float))
    weights = np.abs(vecs[root]) ** 2
    atoms: list[list[float]] = []
    for lam, w in zip(vals, weights):
        if atoms and abs(lam - atoms[-1][0]) < EIGEN_CLUSTER_TOL:
            atoms[-1][1] += w
        else:
            atoms.append([lam, w])
    return RealMeasure(tuple((float(x), float(w)) for x, w in atoms if w > 1e-14))


def lex_free_product(x: RootedColoredGraph, y: RootedColoredGraph) -> RootedColoredGraph:
    """Put a copy of X at each vertex of Y and join copies along Y's edges.

    Vertex ``(v, a)`` (v in Y, a in X) gets index ``v * |X| + a``.  The two
    color alphabets must be disjoint.
    """
    shared = x.colors & y.colors
    if shared:
        raise InputError(f"color alphabets overlap on {sorted(shared)}; relabel one graph")
    nx = x.n
    edges = set()
    for v in range(y.n):
        for a, b, c in x.edges:
            edges.add((v * nx + a, v * nx + b, c))
    for v, w, c in y.edges:
        for a in range(nx):
            for b in range(nx):
                edges.add((v * nx + a, w * nx + b, c))
    return RootedColoredGraph(x.n * y.n, frozenset(edges), y.root * nx + x.root)


def conjecture_compare(mu_x: MomentSequence, mu_y: MomentSequence, mu_product: MomentSequence,
                       tol=0) -> ComparisonReport:
    """Compare supplied product-graph data against ``mu_x [x] mu_y``.

    Only evaluates the given data; nothing here asserts the identity in
    general.
    """
    K = mu_product.horizon
    if mu_x.horizon < K or mu_y.horizon < K:
        raise InputError(f"horizon mismatch: {mu_x.horizon}, {mu_y.horizon} vs product {K}")
    return moment_compare(mu_product, free_mult_conv(mu_x, mu_y, K), tol)


def _automorphisms(g: RootedColoredGraph):
    edges = g.edges
    for perm in itertools.permutations(range(g.n)):
        if all((min(perm[v], perm[w]), max(perm[v], perm[w]), c) in edges for v, w, c in edges):
            yield perm


def classical_character_measure_graph(g: RootedColoredGraph, K: int = 6,
                                      cap: int = AUTOMORPHISM_CAP) -> MomentSequence:
    """Moments of the fixed-point count over color-preserving automorphisms."""
    if g.n > cap:
        raise ResourceCapError(f"{g.n} vertices exceeds the automorphism cap {cap}")
    if K < 1:
        raise InputError("horizon must be >= 1")
    fixed = [sum(1 for i, j in enumerate(p) if i == j) for p in _automorphisms(g)]
    total = len(fixed)
    return MomentSequence(tuple(Fraction(sum(f ** k for f in fixed), total) for k in range(1, K + 1)))
