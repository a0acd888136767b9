"""Reduced k-uniform hypergraphs: density, supported F^(k) configurations and projections."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .core import SizeGuardError
from .graphlab import MultipartiteGraph, as_fraction

MAX_SELECTIONS = 10_000_000

Index = tuple[int, ...]
Vertex = tuple[Index, int]  # (class x, 1-based ordinal in P_x)


def class_order(y: Index) -> list[Index]:
    """The (k-1)-subsets of y in lexicographic order; edge tuples of A_y follow this order."""
    return list(itertools.combinations(y, len(y) - 1))


class ReducedHypergraph:
    """Index set {1..m}, vertex classes P_x for x in I^(k-1), constituents A_y for y in I^(k).

    An edge of A_y is stored as a tuple of ordinals, entry p belonging to the
    p-th class of `class_order(y)`.
    """

    __slots__ = ("k", "m", "class_sizes", "constituents")

    def __init__(
        self,
        k: int,
        m: int,
        class_sizes: Mapping[Index, int] | int,
        constituents: Mapping[Index, Iterable[tuple[int, ...]]] | None = None,
    ):
        if k < 2 or m < 1:
            raise ValueError("need k >= 2 and m >= 1")
        self.k, self.m = k, m
        xs = list(itertools.combinations(range(1, m + 1), k - 1))
        if isinstance(class_sizes, int):
            class_sizes = {x: class_sizes for x in xs}
        sizes = {}
        for x in xs:
            s = int(class_sizes.get(x, 0))
            if s < 1:
                raise ValueError(f"class {x} must be nonempty")
            sizes[x] = s
        if set(class_sizes) - set(xs):
            raise ValueError("class keys must be the (k-1)-subsets of 1..m")
        self.class_sizes = sizes
        self.constituents: dict[Index, frozenset] = {}
        for y in itertools.combinations(range(1, m + 1), k):
            self.constituents[y] = frozenset()
        for y, edges in (constituents or {}).items():
            y = tuple(sorted(y))
            if y not in self.constituents:
                raise ValueError(f"{y} is not a k-subset of 1..{m}")
            order = class_order(y)
            kept = set()
            for e in edges:
                e = tuple(int(v) for v in e)
                if len(e) != k or any(not 1 <= v <= sizes[x] for v, x in zip(e, order)):
                    raise ValueError(f"edge {e} of A_{y} does not pick one vertex per class")
                kept.add(e)
            self.constituents[y] = frozenset(kept)

    def edge_vertices(self, y: Index, e: tuple[int, ...]) -> list[Vertex]:
        return list(zip(class_order(y), e))

    def possible(self, y: Index) -> int:
        return math.prod(self.class_sizes[x] for x in class_order(y))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ReducedHypergraph)
            and (self.k, self.m) == (other.k, other.m)
            and self.class_sizes == other.class_sizes
            and self.constituents == other.constituents
        )

    def __repr__(self) -> str:
        e = sum(len(v) for v in self.constituents.values())
        return f"ReducedHypergraph(k={self.k}, m={self.m}, edges={e})"


def random_reduced(k: int, m: int, max_class_size: int, p: float, seed) -> ReducedHypergraph:
    """Class sizes uniform in 1..max_class_size, every transversal k-tuple an edge with probability p."""
    rng = np.random.default_rng(seed)
    xs = list(itertools.combinations(range(1, m + 1), k - 1))
    sizes = {x: int(rng.integers(1, max_class_size + 1)) for x in xs}
    cons = {}
    for y in itertools.combinations(range(1, m + 1), k):
        order = class_order(y)
        cells = list(itertools.product(*(range(1, sizes[x] + 1) for x in order)))
        keep = rng.random(len(cells)) < p
        cons[y] = [c for c, flag in zip(cells, keep) if flag]
    return ReducedHypergraph(k, m, sizes, cons)


def complete_reduced(k: int, m: int, class_size: int = 1) -> ReducedHypergraph:
    cons = {}
    for y in itertools.combinations(range(1, m + 1), k):
        cons[y] = itertools.product(range(1, class_size + 1), repeat=k)
    return ReducedHypergraph(k, m, class_size, cons)


# ---------------------------------------------------------------------------
# density


@dataclass
class DenseReport:
    dense: bool
    worst: Index | None
    min_density: Fraction


def is_d_dense(A: ReducedHypergraph, d) -> DenseReport:
    """e(A_y) >= d * prod |P_x| for every y; reports the least dense constituent."""
    d = as_fraction(d)
    if not 0 <= d <= 1:
        raise ValueError("d must lie in [0, 1]")
    worst, worst_density = None, Fraction(2)
    for y in sorted(A.constituents):
        dens = Fraction(len(A.constituents[y]), A.possible(y))
        if dens < worst_density:
            worst, worst_density = y, dens
    if worst is None:
        return DenseReport(True, None, Fraction(1))
    return DenseReport(worst_density >= d, worst, worst_density)


# ---------------------------------------------------------------------------
# supported F^(k)


def _check_z(A: ReducedHypergraph, z) -> Index:
    z = tuple(sorted(z))
    if len(z) != A.k + 1 or len(set(z)) != len(z) or z[0] < 1 or z[-1] > A.m:
        raise ValueError(f"z must be a {A.k + 1}-subset of 1..{A.m}")
    return z


def supports_Fk_definition(A: ReducedHypergraph, z) -> bool:
    """Brute force over all selections P_x (x in z^(k-1)): at least three y in z^(k)
    must see their selected k-tuple as an edge of A_y."""
    z = _check_z(A, z)
    xs = list(itertools.combinations(z, A.k - 1))
    ys = list(itertools.combinations(z, A.k))
    live = [y for y in ys if A.constituents[y]]
    if len(live) < 3:
        return False
    total = math.prod(A.class_sizes[x] for x in xs)
    if total > MAX_SELECTIONS:
        raise SizeGuardError(f"{total} selections exceed {MAX_SELECTIONS}")
    pos = {x: i for i, x in enumerate(xs)}
    lookups = [(A.constituents[y], [pos[x] for x in class_order(y)]) for y in live]
    for sel in itertools.product(*(range(1, A.class_sizes[x] + 1) for x in xs)):
        hits = 0
        for edges, where in lookups:
            if tuple(sel[i] for i in where) in edges:
                hits += 1
                if hits >= 3:
                    return True
    return False


@dataclass
class SupportWitness:
    ys: tuple[Index, Index, Index]
    edges: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


def find_supported_triple(A: ReducedHypergraph, z) -> SupportWitness | None:
    """Three constituents on z with pairwise intersecting edges.

    Two k-subsets of z meet in a single (k-1)-set, so two of their edges
    intersect exactly when they pick the same vertex of that shared class.
    """
    z = _check_z(A, z)
    ys = [y for y in itertools.combinations(z, A.k) if A.constituents[y]]
    if len(ys) < 3:
        return None
    slot = {y: {x: i for i, x in enumerate(class_order(y))} for y in ys}

    for y1, y2, y3 in itertools.combinations(ys, 3):
        x12 = tuple(sorted(set(y1) & set(y2)))
        x13 = tuple(sorted(set(y1) & set(y3)))
        x23 = tuple(sorted(set(y2) & set(y3)))
        by12: dict[int, list] = {}
        for e2 in A.constituents[y2]:
            by12.setdefault(e2[slot[y2][x12]], []).append(e2)
        third = {}
        for e3 in A.constituents[y3]:
            third.setdefault((e3[slot[y3][x13]], e3[slot[y3][x23]]), e3)
        for e1 in sorted(A.constituents[y1]):
            for e2 in by12.get(e1[slot[y1][x12]], ()):
                e3 = third.get((e1[slot[y1][x13]], e2[slot[y2][x23]]))
                if e3 is not None:
                    return SupportWitness((y1, y2, y3), (e1, e2, e3))
    return None


def supports_Fk_fast(A: ReducedHypergraph, z) -> bool:
    return find_supported_triple(A, z) is not None


def search_supported_Fk(A: ReducedHypergraph) -> Index | None:
    """Lexicographically first (k+1)-subset of the index set that supports an F^(k)."""
    for z in itertools.combinations(range(1, A.m + 1), A.k + 1):
        if supports_Fk_fast(A, z):
            return z
    return None


# ---------------------------------------------------------------------------
# projections


def projection_graph(A: ReducedHypergraph, y) -> MultipartiteGraph:
    """k-partite graph with V_r = P_(y - i_r); a in V_r, b in V_(r+1) adjacent iff some
    edge of A_y contains both."""
    y = tuple(sorted(y))
    if len(y) != A.k or y not in A.constituents:
        raise ValueError(f"y must be a {A.k}-subset of 1..{A.m}")
    k = A.k
    classes = [tuple(v for v in y if v != y[r]) for r in range(k)]
    slot = {x: i for i, x in enumerate(class_order(y))}
    sizes = [A.class_sizes[x] for x in classes]
    adj = {(r, r + 1): np.zeros((sizes[r - 1], sizes[r]), dtype=bool) for r in range(1, k)}
    for e in A.constituents[y]:
        for r in range(1, k):
            a = e[slot[classes[r - 1]]]
            b = e[slot[classes[r]]]
            adj[(r, r + 1)][a - 1, b - 1] = True
    return MultipartiteGraph(sizes, adj)


def edge_to_path(A: ReducedHypergraph, y, e) -> tuple[int, ...]:
    """The transversal path of projection_graph(A, y) traced by the constituent edge e."""
    y = tuple(sorted(y))
    slot = {x: i for i, x in enumerate(class_order(y))}
    return tuple(e[slot[tuple(v for v in y if v != y[r])]] for r in range(len(y)))
