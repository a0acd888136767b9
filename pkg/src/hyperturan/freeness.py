"""Sub-hypergraph containment, copy counting and exact Turán numbers."""

from __future__ import annotations

import itertools
import math
import time
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import Hypergraph, SizeGuardError, combinations_array, edge_indicator, facet_ranks

Embedding = dict  # pattern vertex -> host vertex

MAX_AUT_VERTICES = 10
MAX_EXACT_TURAN_EDGES = 24


class _Host:
    """Lookup tables used by the backtracking embedder."""

    def __init__(self, H: Hypergraph):
        self.edges = H.edge_set
        self.deg = H.degrees()
        self.codeg: Counter = Counter()
        self.shadow: set = set()
        for e in H.edges:
            for a, b in itertools.combinations(e, 2):
                self.codeg[(a, b)] += 1
            for size in range(1, H.k + 1):
                self.shadow.update(itertools.combinations(e, size))

    def codegree(self, u: int, v: int) -> int:
        return self.codeg[(u, v) if u < v else (v, u)]


def _pattern_order(F: Hypergraph) -> list[int]:
    """Descending degree; among equals prefer vertices sharing edges with those placed."""
    deg = F.degrees()
    remaining = set(range(1, F.n + 1))
    order: list[int] = []
    while remaining:
        placed = set(order)

        def key(v):
            links = sum(1 for e in F.edges if v in e and placed.intersection(e))
            return (-deg[v], -links, v)

        v = min(remaining, key=key)
        order.append(v)
        remaining.remove(v)
    return order


def iter_embeddings(H: Hypergraph, F: Hypergraph) -> Iterator[Embedding]:
    """All injective maps V(F) -> V(H) sending edges of F to edges of H."""
    if H.k != F.k:
        raise ValueError(f"uniformity mismatch: host k={H.k}, pattern k={F.k}")
    if F.n > H.n or len(F.edges) > len(H.edges):
        return
    host = _Host(H)
    order = _pattern_order(F)
    fdeg = F.degrees()
    fcodeg: Counter = Counter()
    for e in F.edges:
        for a, b in itertools.combinations(e, 2):
            fcodeg[(a, b)] += 1
    touching = {v: [e for e in F.edges if v in e] for v in order}
    mapping: dict[int, int] = {}
    used: set[int] = set()
    candidates = range(1, H.n + 1)

    def fits(p: int, h: int) -> bool:
        if host.deg[h] < fdeg[p]:
            return False
        for q, hq in mapping.items():
            need = fcodeg[(p, q) if p < q else (q, p)]
            if need and host.codegree(h, hq) < need:
                return False
        mapping[p] = h
        try:
            for e in touching[p]:
                image = tuple(sorted(mapping[v] for v in e if v in mapping))
                if len(image) == len(e):
                    if image not in host.edges:
                        return False
                elif image not in host.shadow:
                    return False
            return True
        finally:
            del mapping[p]

    def extend(i: int):
        if i == len(order):
            yield dict(mapping)
            return
        p = order[i]
        for h in candidates:
            if h in used or not fits(p, h):
                continue
            mapping[p] = h
            used.add(h)
            yield from extend(i + 1)
            used.discard(h)
            del mapping[p]

    yield from extend(0)


def is_embedding(H: Hypergraph, F: Hypergraph, phi: Embedding) -> bool:
    if set(phi) != set(range(1, F.n + 1)) or len(set(phi.values())) != F.n:
        return False
    return all(tuple(sorted(phi[v] for v in e)) in H.edge_set for e in F.edges)


# ---------------------------------------------------------------------------
# (k+1)-vertex patterns: every r-edge k-graph on k+1 vertices is the same up to isomorphism


def kplus1_edge_counts(H: Hypergraph) -> dict[tuple[int, ...], int]:
    """Map each (k+1)-subset of [n] containing at least one edge to its number of edges."""
    k, n = H.k, H.n
    if n < k + 1:
        return {}
    if math.comb(n, k + 1) <= 2_000_000:
        ind = edge_indicator(H)
        counts = ind[facet_ranks(n, k + 1)].sum(axis=1)
        sets = combinations_array(n, k + 1)
        nz = np.nonzero(counts)[0]
        return {tuple(sets[i].tolist()): int(counts[i]) for i in nz}
    out: Counter = Counter()
    for e in H.edges:
        es = set(e)
        for v in range(1, n + 1):
            if v not in es:
                out[tuple(sorted(e + (v,)))] += 1
    return dict(out)


def _is_kplus1_pattern(F: Hypergraph) -> bool:
    return F.n == F.k + 1 and len(F.edges) >= 1


def _embed_into_set(H: Hypergraph, F: Hypergraph, S: tuple[int, ...]) -> Embedding | None:
    sub = H.induced(S)
    for phi in iter_embeddings(sub, F):
        return {p: S[h - 1] for p, h in phi.items()}
    return None


def contains(H: Hypergraph, F: Hypergraph, method: str = "auto") -> Embedding | None:
    """A witness embedding of F into H, or None when H is F-free.

    method: "backtrack" (generic), "kplus1" (only for patterns on k+1 vertices)
    or "auto" (kplus1 when applicable).
    """
    if H.k != F.k:
        raise ValueError(f"uniformity mismatch: host k={H.k}, pattern k={F.k}")
    if method == "auto":
        method = "kplus1" if _is_kplus1_pattern(F) else "backtrack"
    if method == "kplus1":
        if not _is_kplus1_pattern(F):
            raise ValueError("kplus1 method needs a pattern on k+1 vertices")
        r = len(F.edges)
        for S, c in sorted(kplus1_edge_counts(H).items()):
            if c >= r:
                return _embed_into_set(H, F, S)
        return None
    if method != "backtrack":
        raise ValueError(f"unknown method {method!r}")
    for phi in iter_embeddings(H, F):
        return phi
    return None


def count_embeddings(H: Hypergraph, F: Hypergraph) -> int:
    return sum(1 for _ in iter_embeddings(H, F))


def automorphism_count(F: Hypergraph) -> int:
    """|Aut(F)| by brute force over all vertex permutations."""
    if F.n > MAX_AUT_VERTICES:
        raise SizeGuardError(f"pattern has {F.n} > {MAX_AUT_VERTICES} vertices")
    edges = F.edge_set
    count = 0
    for perm in itertools.permutations(range(1, F.n + 1)):
        if all(tuple(sorted(perm[v - 1] for v in e)) in edges for e in F.edges):
            count += 1
    return count


def count_copies(H: Hypergraph, F: Hypergraph) -> int:
    """Number of (not necessarily induced) unlabelled copies of F in H."""
    aut = automorphism_count(F)
    emb = count_embeddings(H, F)
    assert emb % aut == 0
    return emb // aut


def count_kplus1_copies(H: Hypergraph, r: int) -> int:
    """Copies of the r-edge (k+1)-vertex pattern: sum over (k+1)-sets of C(edges, r)."""
    return sum(math.comb(c, r) for c in kplus1_edge_counts(H).values())


def contains_ordered_Fk(H: Hypergraph) -> Embedding | None:
    """An F^(k) copy whose three degree-2 vertices are consecutive in the copy's vertex order.

    The returned embedding maps the canonical pattern (w = 1..k-2; a, b, c =
    k-1, k, k+1) into H.
    """
    k = H.k
    if k < 2:
        raise ValueError("need k >= 2")
    for S, c in sorted(kplus1_edge_counts(H).items()):
        if c < 3:
            continue
        # vertex v has degree 2 in a copy iff its complement S - v is one of the chosen edges
        missing = [tuple(u for u in S if u != v) in H.edge_set for v in S]
        for p in range(len(S) - 2):
            if missing[p] and missing[p + 1] and missing[p + 2]:
                abc = S[p : p + 3]
                w = [v for v in S if v not in abc]
                phi = {i + 1: v for i, v in enumerate(w)}
                phi.update({k - 1: abc[0], k: abc[1], k + 1: abc[2]})
                return phi
    return None


# ---------------------------------------------------------------------------
# exact Turán numbers


@dataclass
class TuranResult:
    value: int
    witness: Hypergraph
    exact: bool
    nodes: int


def _copy_masks(n: int, F: Hypergraph) -> tuple[list[tuple[int, ...]], list[int]]:
    """All k-subsets of [n] (lex) and the edge-index bitmasks of every copy of F in K_n."""
    k = F.k
    all_edges = [tuple(e) for e in itertools.combinations(range(1, n + 1), k)]
    index = {e: i for i, e in enumerate(all_edges)}
    complete = Hypergraph(k, n, all_edges)
    masks = set()
    for phi in iter_embeddings(complete, F):
        m = 0
        for e in F.edges:
            m |= 1 << index[tuple(sorted(phi[v] for v in e))]
        masks.add(m)
    return all_edges, sorted(masks)


def turan_number(n: int, F: Hypergraph, time_budget: float | None = None) -> TuranResult:
    """ex(n, F) by branch and bound over edge inclusion in lexicographic edge order."""
    k = F.k
    m = math.comb(n, k)
    if m > MAX_EXACT_TURAN_EDGES:
        raise SizeGuardError(f"C({n},{k}) = {m} > {MAX_EXACT_TURAN_EDGES} edges")
    all_edges, copies = _copy_masks(n, F)
    if not F.edges:
        return TuranResult(0, Hypergraph(k, n), True, 0)
    if not copies:
        return TuranResult(m, Hypergraph(k, n, all_edges), True, 0)
    # for each edge: the rest of every copy that contains it
    rests: list[list[int]] = [[] for _ in range(m)]
    for c in copies:
        for i in range(m):
            if c >> i & 1:
                rests[i].append(c & ~(1 << i))

    def creates_copy(i: int, cur: int) -> bool:
        return any(rest & cur == rest for rest in rests[i])

    deadline = None if time_budget is None else time.monotonic() + time_budget
    best_val = -1
    best_mask = 0
    nodes = 0
    timed_out = False

    def search(i: int, cur: int, count: int):
        nonlocal best_val, best_mask, nodes, timed_out
        nodes += 1
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            timed_out = True
        if timed_out:
            return
        if count > best_val:
            best_val, best_mask = count, cur
        if i == m:
            return
        # every edge still addable on its own bounds what the branch can gain
        addable = [j for j in range(i, m) if not creates_copy(j, cur)]
        if count + len(addable) <= best_val:
            return
        for pos, j in enumerate(addable):
            if count + len(addable) - pos <= best_val:
                return
            search(j + 1, cur | (1 << j), count + 1)
            if timed_out:
                return

    # an F-free k-graph with at least one edge can be relabelled to contain {1..k}
    if len(F.edges) > 1:
        search(1, 1, 1)
    else:
        search(0, 0, 0)
    witness = Hypergraph(k, n, [all_edges[i] for i in range(m) if best_mask >> i & 1])
    return TuranResult(best_val, witness, not timed_out, nodes)
