"""Uniform hypergraphs, shadows, directed families and their clique sets.

Vertices are 1-based throughout.  Every k-subset is stored as an ascending
tuple; directed tuples over an index set S are stored in the order of the
ascending listing of S.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

# materialisation guard for clique sets and tuple spaces
MAX_ENUMERATION = 5_000_000


class SizeGuardError(ValueError):
    """Raised when an exhaustive computation would exceed its size guard."""


def _canonical_edges(edges: Iterable[Iterable[int]], k: int, n: int) -> tuple[tuple[int, ...], ...]:
    seen = set()
    for e in edges:
        t = tuple(sorted(e))
        if len(t) != k or len(set(t)) != k:
            raise ValueError(f"edge {tuple(e)} is not a {k}-set")
        if k and (t[0] < 1 or t[-1] > n):
            raise ValueError(f"edge {t} has a vertex outside 1..{n}")
        if t in seen:
            raise ValueError(f"duplicate edge {t}")
        seen.add(t)
    return tuple(sorted(seen))


class Hypergraph:
    """A k-uniform hypergraph on the vertex set {1..n}."""

    __slots__ = ("k", "n", "edges", "_edge_set")

    def __init__(self, k: int, n: int, edges: Iterable[Iterable[int]] = ()):
        if k < 0 or n < 0:
            raise ValueError("k and n must be non-negative")
        self.k = int(k)
        self.n = int(n)
        self.edges = _canonical_edges(edges, self.k, self.n)
        self._edge_set = frozenset(self.edges)

    @property
    def edge_set(self) -> frozenset:
        return self._edge_set

    def __contains__(self, subset) -> bool:
        return tuple(sorted(subset)) in self._edge_set

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hypergraph)
            and type(self) is type(other)
            and (self.k, self.n, self.edges) == (other.k, other.n, other.edges)
        )

    def __hash__(self) -> int:
        return hash((self.k, self.n, self.edges))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(k={self.k}, n={self.n}, m={len(self.edges)})"

    def density(self) -> float:
        total = math.comb(self.n, self.k)
        return len(self.edges) / total if total else 0.0

    def degrees(self) -> list[int]:
        """Vertex degrees, indexed 0..n (index 0 unused)."""
        deg = [0] * (self.n + 1)
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def induced(self, vertices: Iterable[int]) -> "Hypergraph":
        """Sub-hypergraph induced on `vertices`, relabelled 1..|vertices| in order."""
        vs = sorted(set(vertices))
        relabel = {v: i + 1 for i, v in enumerate(vs)}
        keep = [tuple(relabel[v] for v in e) for e in self.edges if all(v in relabel for v in e)]
        return Hypergraph(self.k, len(vs), keep)


class ShadowHypergraph(Hypergraph):
    """A j-uniform hypergraph used as a shadow; for j = 0 the only possible edge is ()."""

    __slots__ = ()

    def __init__(self, j: int, n: int, edges: Iterable[Iterable[int]] = ()):
        super().__init__(j, n, edges)

    @property
    def j(self) -> int:
        return self.k

    @classmethod
    def complete(cls, j: int, n: int) -> "ShadowHypergraph":
        return cls(j, n, itertools.combinations(range(1, n + 1), j))

    @property
    def has_empty_edge(self) -> bool:
        return self.k == 0 and () in self._edge_set


def complete_hypergraph(k: int, n: int) -> Hypergraph:
    return Hypergraph(k, n, itertools.combinations(range(1, n + 1), k))


# ---------------------------------------------------------------------------
# combination ranking (lexicographic order of itertools.combinations)


@lru_cache(maxsize=None)
def binomial_table(n: int, r: int) -> np.ndarray:
    """table[a, b] = C(a, b) for 0 <= a <= n, 0 <= b <= r + 1 (zero when b > a)."""
    table = np.zeros((n + 1, r + 2), dtype=np.int64)
    for a in range(n + 1):
        for b in range(r + 2):
            table[a, b] = math.comb(a, b)
    return table


def lex_rank(combos: np.ndarray, n: int) -> np.ndarray:
    """Lexicographic ranks of ascending 1-based r-subsets of [n] (rows of `combos`)."""
    combos = np.asarray(combos, dtype=np.int64)
    r = combos.shape[-1]
    total = math.comb(n, r)
    if r == 0:
        return np.zeros(combos.shape[:-1], dtype=np.int64)
    table = binomial_table(n, r)
    c = combos - 1
    acc = np.zeros(combos.shape[:-1], dtype=np.int64)
    for i in range(r):
        acc += table[n - 1 - c[..., i], r - i]
    return total - 1 - acc


@lru_cache(maxsize=64)
def combinations_array(n: int, r: int) -> np.ndarray:
    """All ascending 1-based r-subsets of [n] in lexicographic order, shape (C(n, r), r)."""
    count = math.comb(n, r)
    if count > 50_000_000:
        raise SizeGuardError(f"C({n},{r}) = {count} subsets is too many to tabulate")
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(1, n + 1), r)),
        dtype=np.int64,
        count=count * r,
    )
    out = flat.reshape(count, r)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def facet_ranks(n: int, k: int) -> np.ndarray:
    """For every k-subset (lex order) the lex ranks of its (k-1)-subsets.

    Column p holds the rank of the set with its p-th smallest element removed.
    """
    ks = combinations_array(n, k)
    cols = []
    for p in range(k):
        sub = np.delete(ks, p, axis=1)
        cols.append(lex_rank(sub, n))
    out = np.stack(cols, axis=1) if cols else np.zeros((len(ks), 0), dtype=np.int64)
    out.setflags(write=False)
    return out


def edge_indicator(H: Hypergraph) -> np.ndarray:
    """Boolean vector over the lex-ordered k-subsets of [n] marking the edges of H."""
    ind = np.zeros(math.comb(H.n, H.k), dtype=bool)
    if H.edges:
        ind[lex_rank(np.array(H.edges, dtype=np.int64), H.n)] = True
    return ind


def hypergraph_from_indicator(k: int, n: int, indicator: np.ndarray) -> Hypergraph:
    ks = combinations_array(n, k)
    return Hypergraph(k, n, map(tuple, ks[np.asarray(indicator, dtype=bool)].tolist()))


# ---------------------------------------------------------------------------
# cliques of shadows


def enumerate_cliques(G: ShadowHypergraph, k: int, limit: int = MAX_ENUMERATION) -> set[tuple[int, ...]]:
    """All k-subsets of [n] whose every j-subset is an edge of the shadow G."""
    return set(iter_cliques(G, k, limit))


def iter_cliques(G: Hypergraph, k: int, limit: int = MAX_ENUMERATION) -> Iterator[tuple[int, ...]]:
    j, n = G.k, G.n
    if not 0 <= j < k:
        raise ValueError(f"clique size {k} must exceed the shadow uniformity {j}")
    if k > n:
        return
    if j == 0:
        if () in G.edge_set:
            if math.comb(n, k) > limit:
                raise SizeGuardError(f"C({n},{k}) cliques exceed the limit {limit}")
            yield from itertools.combinations(range(1, n + 1), k)
        return
    if j == 1:
        U = sorted(e[0] for e in G.edges)
        if math.comb(len(U), k) > limit:
            raise SizeGuardError(f"C({len(U)},{k}) cliques exceed the limit {limit}")
        yield from itertools.combinations(U, k)
        return

    edges = G.edge_set
    produced = 0

    def extend(chosen: list[int], start: int):
        nonlocal produced
        if len(chosen) == k:
            produced += 1
            if produced > limit:
                raise SizeGuardError(f"more than {limit} cliques")
            yield tuple(chosen)
            return
        # room left for the remaining vertices
        for v in range(start, n - (k - len(chosen)) + 2):
            if len(chosen) >= j - 1 and not all(
                s + (v,) in edges for s in itertools.combinations(chosen, j - 1)
            ):
                continue
            chosen.append(v)
            yield from extend(chosen, v + 1)
            chosen.pop()

    yield from extend([], 1)


def shadow_of_cliques(G: ShadowHypergraph, size: int) -> ShadowHypergraph:
    """The (size)-uniform shadow formed by the size-cliques of G."""
    return ShadowHypergraph(size, G.n, enumerate_cliques(G, size))


# ---------------------------------------------------------------------------
# directed families


def _as_index_set(S: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(S)))


class DirectedFamily:
    """A shape of index sets S ⊆ [k] with, for each S, a set of functions S -> [n].

    A function S -> [n] is stored as a tuple listing its values on the ascending
    elements of S; repeated values are allowed.
    """

    __slots__ = ("k", "n", "shape", "members")

    def __init__(self, k: int, n: int, members: Mapping[Iterable[int], Iterable[Sequence[int]]]):
        self.k = int(k)
        self.n = int(n)
        shape: list[tuple[int, ...]] = []
        mem: dict[tuple[int, ...], frozenset] = {}
        for S, tuples in members.items():
            S = _as_index_set(S)
            if S in mem:
                raise ValueError(f"index set {S} appears twice in the shape")
            if any(i < 1 or i > self.k for i in S):
                raise ValueError(f"index set {S} is not a subset of [1..{self.k}]")
            ts = set()
            for t in tuples:
                t = tuple(int(v) for v in t)
                if len(t) != len(S):
                    raise ValueError(f"tuple {t} is not defined on {S}")
                if any(v < 1 or v > self.n for v in t):
                    raise ValueError(f"tuple {t} has a value outside 1..{self.n}")
                ts.add(t)
            shape.append(S)
            mem[S] = frozenset(ts)
        self.shape = tuple(shape)
        self.members = mem

    @classmethod
    def unconstrained(cls, k: int, n: int, shape: Iterable[Iterable[int]]) -> "DirectedFamily":
        members = {}
        for S in shape:
            S = _as_index_set(S)
            members[S] = itertools.product(range(1, n + 1), repeat=len(S))
        return cls(k, n, members)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DirectedFamily)
            and (self.k, self.n) == (other.k, other.n)
            and self.members == other.members
        )

    def __repr__(self) -> str:
        sizes = ", ".join(f"{S}:{len(self.members[S])}" for S in self.shape)
        return f"DirectedFamily(k={self.k}, n={self.n}, {{{sizes}}})"


def _restrict(v: Sequence[int], S: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(v[i - 1] for i in S)


def iter_family_cliques(F: DirectedFamily) -> Iterator[tuple[int, ...]]:
    """Stream the k-tuples v in [n]^k with v|S in G_S for every S in the shape."""
    k, n = F.k, F.n
    # a constraint is checked as soon as its largest index is assigned
    by_last: dict[int, list[tuple[tuple[int, ...], frozenset]]] = {i: [] for i in range(0, k + 1)}
    for S in F.shape:
        by_last[S[-1] if S else 0].append((S, F.members[S]))
    for S, G in by_last[0]:
        if () not in G:
            return
    v = [0] * k

    def extend(i: int):
        if i == k:
            yield tuple(v)
            return
        for val in range(1, n + 1):
            v[i] = val
            if all(_restrict(v, S) in G for S, G in by_last[i + 1]):
                yield from extend(i + 1)

    yield from extend(0)


def cliques_of_family(F: DirectedFamily, limit: int = MAX_ENUMERATION) -> set[tuple[int, ...]]:
    out = set()
    for t in iter_family_cliques(F):
        out.add(t)
        if len(out) > limit:
            raise SizeGuardError(f"more than {limit} clique tuples")
    return out


def count_family_cliques(F: DirectedFamily) -> int:
    return sum(1 for _ in iter_family_cliques(F))


def family_edge_count(H: Hypergraph, F: DirectedFamily) -> int:
    """Number of tuples in the clique set of F whose entries form an edge of H."""
    if H.k != F.k or H.n != F.n:
        raise ValueError(f"hypergraph (k={H.k}, n={H.n}) does not match family (k={F.k}, n={F.n})")
    edges = H.edge_set
    k = H.k
    count = 0
    for t in iter_family_cliques(F):
        s = tuple(sorted(t))
        if len(set(s)) == k and s in edges:
            count += 1
    return count


def normalize_family(F: DirectedFamily) -> DirectedFamily:
    """Fold every non-maximal constraint into the maximal index sets containing it.

    The returned family's shape is the inclusion-maximal part of F's shape and
    it has exactly the same clique set as F.
    """
    sets = [frozenset(S) for S in F.shape]
    maximal = [S for S, fs in zip(F.shape, sets) if not any(fs < other for other in sets)]
    for S, fs in zip(F.shape, sets):
        if S in maximal:
            continue
        if not any(fs <= frozenset(B) for B in maximal):
            raise ValueError(f"index set {S} is not covered by any maximal index set")
    members = {}
    for B in maximal:
        fb = frozenset(B)
        below = [A for A in F.shape if A != B and frozenset(A) <= fb]
        pos = {i: p for p, i in enumerate(B)}
        kept = []
        for t in F.members[B]:
            if all(tuple(t[pos[i]] for i in A) in F.members[A] for A in below):
                kept.append(t)
        members[B] = kept
    return DirectedFamily(F.k, F.n, members)
