"""Multipartite graphs: two-edge walks, poor/rich pairs, transversal paths,
the path-lemma constant, triangle search and the Ramsey-type extraction."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Sequence

import numpy as np


def as_fraction(x) -> Fraction:
    """Exact value of a parameter; floats are read through their shortest repr (0.1 -> 1/10)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    return Fraction(repr(float(x)))


class MultipartiteGraph:
    """Ordered vertex classes V_1..V_m (vertices are class-local ids 1..|V_i|) and
    bipartite adjacency matrices for declared pairs i < j."""

    __slots__ = ("sizes", "pairs")

    def __init__(self, sizes: Sequence[int], pairs: Mapping[tuple[int, int], np.ndarray] | None = None):
        self.sizes = tuple(int(s) for s in sizes)
        if any(s < 1 for s in self.sizes):
            raise ValueError("vertex classes must be nonempty")
        self.pairs: dict[tuple[int, int], np.ndarray] = {}
        for (i, j), adj in (pairs or {}).items():
            self.set_pair(i, j, adj)

    @property
    def m(self) -> int:
        return len(self.sizes)

    def set_pair(self, i: int, j: int, adj) -> None:
        if not 1 <= i < j <= self.m:
            raise ValueError(f"pair ({i}, {j}) must satisfy 1 <= i < j <= {self.m}")
        adj = np.array(adj, dtype=bool)
        if adj.shape != (self.sizes[i - 1], self.sizes[j - 1]):
            raise ValueError(f"pair ({i}, {j}) adjacency has shape {adj.shape}")
        self.pairs[(i, j)] = adj

    @classmethod
    def from_edges(cls, sizes: Sequence[int], edges: Mapping[tuple[int, int], Sequence[tuple[int, int]]]):
        G = cls(sizes)
        for (i, j), es in edges.items():
            adj = np.zeros((G.sizes[i - 1], G.sizes[j - 1]), dtype=bool)
            for u, v in es:
                adj[u - 1, v - 1] = True
            G.set_pair(i, j, adj)
        return G

    def adjacency(self, i: int, j: int) -> np.ndarray:
        """Adjacency between V_i (rows) and V_j (columns); zeros for undeclared pairs."""
        if i < j:
            if (i, j) in self.pairs:
                return self.pairs[(i, j)]
        elif (j, i) in self.pairs:
            return self.pairs[(j, i)].T
        return np.zeros((self.sizes[i - 1], self.sizes[j - 1]), dtype=bool)

    def edge_list(self, i: int, j: int) -> list[tuple[int, int]]:
        rows, cols = np.nonzero(self.adjacency(i, j))
        return [(int(a) + 1, int(b) + 1) for a, b in zip(rows, cols)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultipartiteGraph) or self.sizes != other.sizes:
            return False
        keys = {k for k, a in self.pairs.items() if a.any()} | {k for k, a in other.pairs.items() if a.any()}
        return all(np.array_equal(self.adjacency(*k), other.adjacency(*k)) for k in keys)

    def __repr__(self) -> str:
        return f"MultipartiteGraph(sizes={self.sizes}, pairs={sorted(self.pairs)})"


def bipartite(adj) -> MultipartiteGraph:
    """Two-class graph with X = V_1 (rows) and Y = V_2 (columns)."""
    adj = np.array(adj, dtype=bool)
    return MultipartiteGraph(adj.shape, {(1, 2): adj})


# ---------------------------------------------------------------------------
# walks and poorness


@dataclass
class WalkProfile:
    x_class: int
    y_class: int
    walks: np.ndarray  # walks[y] = number of two-edge walks y - x - y' starting at y


def _oriented(G: MultipartiteGraph, X: int, Y: int) -> np.ndarray:
    i, j = min(X, Y), max(X, Y)
    if (i, j) not in G.pairs:
        raise ValueError(f"pair ({i}, {j}) is not declared")
    return G.adjacency(X, Y)


def walk_profile(G: MultipartiteGraph, X: int = 1, Y: int = 2) -> WalkProfile:
    """P_y = sum of deg(x) over the neighbours x of y (degenerate walks y-x-y included)."""
    adj = _oriented(G, X, Y).astype(np.int64)
    deg_x = adj.sum(axis=1)
    return WalkProfile(X, Y, adj.T @ deg_x)


@dataclass
class PoorReport:
    poor: bool
    exceeding: int  # number of y with more than (1/4 + xi)|X||Y| walks
    allowed: Fraction  # xi |Y|


def classify_poor(G: MultipartiteGraph, X: int, Y: int, xi) -> PoorReport:
    xi = as_fraction(xi)
    if xi <= 0:
        raise ValueError("xi must be positive")
    prof = walk_profile(G, X, Y)
    nx, ny = G.sizes[X - 1], G.sizes[Y - 1]
    threshold = (Fraction(1, 4) + xi) * nx * ny
    # integer counts exceed a rational threshold iff they exceed its floor
    exceeding = int((prof.walks > math.floor(threshold)).sum())
    allowed = xi * ny
    return PoorReport(exceeding <= allowed, exceeding, allowed)


def is_poor(G: MultipartiteGraph, X: int, Y: int, xi) -> bool:
    return classify_poor(G, X, Y, xi).poor


# ---------------------------------------------------------------------------
# transversal paths


def count_transversal_paths(G: MultipartiteGraph) -> tuple[int, np.ndarray]:
    """Number of tuples (v_1..v_m), one per class, with consecutive entries adjacent.

    Returns (total, g) where g[x] counts those tuples starting at x in V_1.
    """
    dtype = np.int64 if math.prod(G.sizes) < 2**62 else object
    f = np.ones(G.sizes[-1], dtype=np.int64).astype(dtype)
    for r in range(G.m - 1, 0, -1):
        f = G.adjacency(r, r + 1).astype(np.int64).astype(dtype) @ f
    g = f
    return int(sum(g)), g


# ---------------------------------------------------------------------------
# the inductive inequality and the path-lemma constant


@dataclass
class Lemma51Check:
    holds: bool
    lhs: Fraction  # sum_x g(x)^2
    rhs: Fraction  # ((1/4 + xi) a^2 + xi M^2) |X| |Y|^2


class NotPoorError(ValueError):
    pass


def check_lemma51(G: MultipartiteGraph, f: Sequence, xi, M, X: int = 1, Y: int = 2) -> Lemma51Check:
    xi, M = as_fraction(xi), as_fraction(M)
    report = classify_poor(G, X, Y, xi)
    if not report.poor:
        raise NotPoorError(f"graph is {xi}-rich ({report.exceeding} > {report.allowed}); the bound does not apply")
    fv = [as_fraction(v) for v in f]
    ny, nx = G.sizes[Y - 1], G.sizes[X - 1]
    if len(fv) != ny:
        raise ValueError(f"f has {len(fv)} values, Y has {ny} vertices")
    if any(v < 0 or v > M for v in fv):
        raise ValueError(f"f must take values in [0, {M}]")
    # scale f to integers so g and the sums stay exact
    scale = math.lcm(*(v.denominator for v in fv)) if fv else 1
    fi = np.array([int(v * scale) for v in fv], dtype=object)
    g = _oriented(G, X, Y).astype(np.int64).astype(object) @ fi
    lhs = Fraction(int(sum(int(v) * int(v) for v in g)), scale * scale)
    sum_sq = Fraction(int(sum(int(v) * int(v) for v in fi)), scale * scale)
    # a^2 |Y| = sum f^2
    rhs = (Fraction(1, 4) + xi) * sum_sq * nx * ny + xi * M * M * nx * ny * ny
    return Lemma51Check(lhs <= rhs, lhs, rhs)


def _xi_conditions(xi: Fraction, prev: Fraction, eps: Fraction, k: int) -> bool:
    base = Fraction(1, 2 ** (k - 1))
    return xi <= prev and (1 + 4 * xi) * (base + eps / 2) ** 2 + xi < (base + eps) ** 2


def path_lemma_xi(eps, k: int) -> Fraction:
    """A valid xi for the path lemma at (eps, k), following the inductive choice.

    xi_1 = 1; xi_k is the largest power of two 2^-t with xi_k <= xi_(k-1) and
    (1 + 4 xi)(2^(1-k) + eps/2)^2 + xi < (2^(1-k) + eps)^2.
    """
    eps = as_fraction(eps)
    if eps <= 0 or k < 1:
        raise ValueError("need eps > 0 and k >= 1")
    xi = Fraction(1)
    for level in range(2, k + 1):
        cand = xi
        while not _xi_conditions(cand, xi, eps, level):
            cand /= 2
        xi = cand
    return xi


# ---------------------------------------------------------------------------
# triangles


def find_triangle(G: MultipartiteGraph) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]] | None:
    """First triangle (class, vertex) x3 in lexicographic order of classes then vertices."""
    for i, j, l in itertools.combinations(range(1, G.m + 1), 3):
        a_ij = G.adjacency(i, j)
        if not a_ij.any():
            continue
        a_il = G.adjacency(i, l).astype(np.int64)
        a_jl = G.adjacency(j, l).astype(np.int64)
        common = (a_il @ a_jl.T) > 0
        hits = np.argwhere(a_ij & common)
        if len(hits):
            a, b = (int(v) for v in hits[0])
            c = int(np.nonzero(a_il[a] & a_jl[b])[0][0])
            return (i, a + 1), (j, b + 1), (l, c + 1)
    return None


def is_triangle(G: MultipartiteGraph, tri) -> bool:
    (i, a), (j, b), (l, c) = tri
    if len({i, j, l}) != 3:
        return False

    def adj(p, u, q, v):
        return bool(G.adjacency(p, q)[u - 1, v - 1])

    return adj(i, a, j, b) and adj(i, a, l, c) and adj(j, b, l, c)


# ---------------------------------------------------------------------------
# Ramsey-type extraction


def extraction_bound(delta, k: int, m: int) -> int:
    """F(delta, k, m): F(delta, 0, m) = m and F(delta, k+1, m) = F(delta, k, m') with
    m' = k + 1 + ceil((m - k - 1) / delta)."""
    delta = as_fraction(delta)
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if m < k or k < 0:
        raise ValueError(f"need m >= k >= 0, got k={k}, m={m}")
    # unroll from the top level down to the base
    for level in range(k - 1, -1, -1):
        m = level + 1 + math.ceil((m - level - 1) / delta)
    return m


class ExtractionPreconditionError(ValueError):
    pass


@dataclass
class Extraction:
    indices: list[int]  # n_1 < ... < n_m (1-based)
    elements: list  # a_1 .. a_k


def _check_extraction_input(delta: Fraction, sets, X, M: int):
    for i in range(1, M + 1):
        if not sets[i - 1]:
            raise ExtractionPreconditionError(f"A_{i} is empty")
    for i, j in itertools.combinations(range(1, M + 1), 2):
        Xij = X.get((i, j))
        if Xij is None:
            raise ExtractionPreconditionError(f"X_{i},{j} is missing")
        Ai = sets[i - 1]
        if not set(Xij) <= set(Ai):
            raise ExtractionPreconditionError(f"X_{i},{j} is not a subset of A_{i}")
        if len(set(Xij)) < delta * len(set(Ai)):
            raise ExtractionPreconditionError(
                f"|X_{i},{j}| = {len(set(Xij))} < delta |A_{i}| = {delta * len(set(Ai))}"
            )


def ramsey_extract(delta, k: int, m: int, sets: Sequence, X: Mapping[tuple[int, int], set]) -> Extraction:
    """Indices n_1 < ... < n_m and a_i in A_{n_i} (i <= k) with a_i in X_{n_i n_j} for all j > i.

    `sets` lists A_1..A_M; X maps (i, j), 1 <= i < j <= M, to a subset of A_i.
    """
    delta = as_fraction(delta)
    need = extraction_bound(delta, k, m)
    M = len(sets)
    if M < need:
        raise ExtractionPreconditionError(f"need M >= F(delta, k, m) = {need}, got {M}")
    _check_extraction_input(delta, sets, X, need)
    Xs = {key: set(v) for key, v in X.items()}

    def solve(level: int, mm: int) -> tuple[list[int], list]:
        if level == 0:
            return list(range(1, mm + 1)), []
        kk = level - 1
        m_prime = kk + 1 + math.ceil((mm - kk - 1) / delta)
        idx, elems = solve(kk, m_prime)
        pivot = idx[kk]
        tail = idx[kk + 1 :]
        best, best_q = None, None
        for a in sorted(set(sets[pivot - 1])):
            q = [p for p, nj in enumerate(tail) if a in Xs[(pivot, nj)]]
            if best_q is None or len(q) > len(best_q):
                best, best_q = a, q
        need_tail = mm - kk - 1
        assert len(best_q) >= need_tail
        chosen = [tail[p] for p in best_q[:need_tail]]
        return idx[: kk + 1] + chosen, elems + [best]

    indices, elements = solve(k, m)
    return Extraction(indices, elements)


def verify_extraction(sets: Sequence, X: Mapping, k: int, m: int, result: Extraction) -> bool:
    n = result.indices
    if len(n) != m or any(a >= b for a, b in zip(n, n[1:])) or n[0] < 1 or n[-1] > len(sets):
        return False
    if len(result.elements) != k:
        return False
    for i in range(k):
        a = result.elements[i]
        if a not in set(sets[n[i] - 1]):
            return False
        for j in range(i + 1, m):
            if a not in set(X[(n[i], n[j])]):
                return False
    return True


# ---------------------------------------------------------------------------
# random poor instances (rejection sampling)


def random_poor_bipartite(nx: int, ny: int, xi, rng, p_max: float = 0.5, tries: int = 10_000) -> np.ndarray:
    """Adjacency of a random xi-poor bipartite graph with ordered bipartition (X, Y).

    Edge probabilities are drawn uniformly from [0, p_max]; rich samples are rejected.
    """
    xi = as_fraction(xi)
    for _ in range(tries):
        p = rng.random() * p_max
        adj = rng.random((nx, ny)) < p
        if is_poor(bipartite(adj), 1, 2, xi):
            return adj
    raise RuntimeError(f"no {xi}-poor sample in {tries} tries")


def random_poor_chain(sizes: Sequence[int], xi, rng, p_max: float = 0.5) -> MultipartiteGraph:
    """k-partite graph whose consecutive pairs (V_r, V_r+1) are all xi-poor."""
    G = MultipartiteGraph(sizes)
    for r in range(1, len(sizes)):
        G.set_pair(r, r + 1, random_poor_bipartite(sizes[r - 1], sizes[r], xi, rng, p_max))
    return G


def random_extraction_instance(delta, k: int, m: int, rng, max_set: int = 6, extra: int = 0):
    """A_1..A_M (M = F(delta, k, m) + extra) over small integer ground sets and X_ij of
    size ceil(delta |A_i|)."""
    delta = as_fraction(delta)
    M = extraction_bound(delta, k, m) + extra
    sets = []
    for _ in range(M):
        size = int(rng.integers(1, max_set + 1))
        sets.append(sorted(int(v) for v in rng.choice(np.arange(1, 2 * max_set + 1), size=size, replace=False)))
    X = {}
    for i, j in itertools.combinations(range(1, M + 1), 2):
        A = sets[i - 1]
        need = math.ceil(delta * len(A))
        size = int(rng.integers(need, len(A) + 1))
        X[(i, j)] = sorted(int(v) for v in rng.choice(A, size=size, replace=False))
    return sets, X
