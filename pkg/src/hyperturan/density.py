"""Hereditary density defects of k-graphs against vertex sets, j-uniform shadows
and directed families.

Every variant reduces to one bit-constraint problem: a candidate witness is a
0/1 vector over "bits" (vertices, j-sets, or member tuples of a family) and an
item (a k-set or a k-tuple) counts once all of its required bits are set.  With
d = p/q, an item of weight p - q*hit contributes to the scaled score, and the
defect of a witness is score / (q * n^k).  All arithmetic is exact.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import (
    DirectedFamily,
    Hypergraph,
    ShadowHypergraph,
    SizeGuardError,
    combinations_array,
    edge_indicator,
    lex_rank,
)
from .graphlab import as_fraction

MODES = ("exhaustive", "sampled", "local-search")
MAX_VERTEX_BITS = 24
MAX_SHADOW_BITS = 22
MAX_FAMILY_BITS = 22
MAX_FAMILY_ITEMS = 5_000_000
DEFAULT_BUDGET = 100_000
DEFAULT_RESTARTS = 32
SAMPLE_CHUNK = 256


@dataclass
class DensityReport:
    mode: str
    d: Fraction
    defect: Fraction
    eta_required: Fraction
    witness: object
    explored: int

    def to_text(self) -> str:
        lines = [
            f"mode={self.mode}",
            f"d={self.d}",
            f"defect={float(self.defect)!r}",
            f"defect_exact={self.defect}",
            f"eta_required={float(self.eta_required)!r}",
            f"explored={self.explored}",
            f"witness={_witness_text(self.witness)}",
        ]
        return "\n".join(lines) + "\n"


def _witness_text(w) -> str:
    if isinstance(w, DirectedFamily):
        parts = []
        for S in w.shape:
            members = ";".join(",".join(map(str, t)) for t in sorted(w.members[S]))
            parts.append("{" + ",".join(map(str, S)) + "}:" + members)
        return " | ".join(parts)
    if isinstance(w, Hypergraph):
        return ";".join(",".join(map(str, e)) for e in w.edges)
    return ",".join(map(str, w))


# ---------------------------------------------------------------------------
# the bit-constraint engine


@dataclass
class _Problem:
    nbits: int
    required: np.ndarray  # (items, r) bit indices, rows distinct
    weight: np.ndarray  # (items,) scaled integer weights
    denom: int  # q * n^k

    def score(self, x: np.ndarray) -> int:
        sat = x[self.required].all(axis=1)
        return int(self.weight[sat].sum())


def _make_problem(required: np.ndarray, weight: np.ndarray, nbits: int, denom: int) -> _Problem:
    # items demanding the same bits are indistinguishable; merge them
    required = np.sort(np.asarray(required, dtype=np.int64), axis=1)
    rows, inverse = np.unique(required, axis=0, return_inverse=True)
    merged = np.zeros(len(rows), dtype=np.int64)
    np.add.at(merged, inverse.ravel(), weight)
    keep = merged != 0
    return _Problem(nbits, rows[keep], merged[keep], denom)


def _key(x: np.ndarray) -> bytes:
    # ordering of witnesses by their integer value sum x_b 2^b
    return np.ascontiguousarray(x[::-1]).astype(np.uint8).tobytes()


def _better(a: tuple[int, bytes], b: tuple[int, bytes] | None) -> bool:
    if b is None:
        return True
    return a[0] > b[0] or (a[0] == b[0] and a[1] < b[1])


def _exhaustive(prob: _Problem) -> tuple[int, np.ndarray, int]:
    """Scores of all 2^B witnesses by a subset-sum transform over bit masks."""
    B = prob.nbits
    f = np.zeros(1 << B, dtype=np.int64)
    masks = (np.int64(1) << prob.required).sum(axis=1) if prob.required.size else np.zeros(len(prob.weight), np.int64)
    # rows hold distinct bits, so the OR is the sum
    np.add.at(f, masks, prob.weight)
    for i in range(B):
        v = f.reshape(-1, 2, 1 << i)
        v[:, 1, :] += v[:, 0, :]
    best = int(np.argmax(f))
    x = np.array([(best >> b) & 1 for b in range(B)], dtype=bool)
    return int(f[best]), x, 1 << B


def _sample_chunk(prob: _Problem, seed: int, chunk: int, count: int):
    rng = np.random.default_rng([seed, chunk])
    X = rng.random((count, prob.nbits)) < 0.5
    best = None
    best_x = None
    for row in range(count):
        x = X[row]
        cand = (prob.score(x), _key(x))
        if _better(cand, best):
            best, best_x = cand, x
    return best[0], best[1], best_x


class _Descent:
    """First-improvement single-bit flips with incremental gain tables.

    gain1[b] sums the weights of items containing b that miss exactly one bit,
    gain0[b] those of items containing b that miss nothing.  Turning an unset
    bit on changes the score by gain1[b]; turning a set bit off by -gain0[b].
    """

    def __init__(self, prob: _Problem):
        self.prob = prob
        R = prob.required
        self.r = R.shape[1]
        order = np.argsort(R.ravel(), kind="stable")
        self.col_ptr = np.searchsorted(R.ravel()[order], np.arange(prob.nbits + 1))
        self.col_items = order // self.r

    def reset(self, x: np.ndarray) -> int:
        p = self.prob
        self.x = x.copy()
        self.miss = self.r - x[p.required].sum(axis=1)
        self.gain0 = self._gain(np.arange(len(p.weight)), self.miss == 0)
        self.gain1 = self._gain(np.arange(len(p.weight)), self.miss == 1)
        return int(p.weight[self.miss == 0].sum())

    def _gain(self, items: np.ndarray, mask: np.ndarray) -> np.ndarray:
        p = self.prob
        sel = items[mask]
        w = np.repeat(p.weight[sel], self.r).astype(np.float64)
        g = np.bincount(p.required[sel].ravel(), weights=w, minlength=p.nbits)
        return np.rint(g).astype(np.int64)

    def deltas(self) -> np.ndarray:
        return np.where(self.x, -self.gain0, self.gain1)

    def flip(self, b: int) -> None:
        p = self.prob
        items = self.col_items[self.col_ptr[b] : self.col_ptr[b + 1]]
        old = self.miss[items]
        new = old - 1 if not self.x[b] else old + 1
        for level, table in ((0, self.gain0), (1, self.gain1)):
            table -= self._gain(items, old == level)
            table += self._gain(items, new == level)
        self.miss[items] = new
        self.x[b] = not self.x[b]


def _local_slot(prob: _Problem, seed: int, slot: int, budget: int):
    rng = np.random.default_rng([seed, slot])
    desc = _Descent(prob)
    spent = 0
    explored = 0
    best = None
    best_x = None
    first = True
    while spent < budget:
        if first and slot == 0:
            x = np.ones(prob.nbits, dtype=bool)
        else:
            x = rng.random(prob.nbits) < 0.5
        first = False
        score = desc.reset(x)
        explored += 1
        while spent < budget:
            up = np.flatnonzero(desc.deltas() > 0)
            if up.size == 0:
                spent += prob.nbits
                explored += prob.nbits
                break
            b = int(up[0])
            cost = min(b + 1, budget - spent)
            spent += cost
            explored += cost
            if cost < b + 1:
                break
            score += int(desc.deltas()[b])
            desc.flip(b)
        cand = (score, _key(desc.x))
        if _better(cand, best):
            best, best_x = cand, desc.x.copy()
    return best[0], best[1], best_x, explored


def _map(fn, args: list[tuple], jobs: int) -> list:
    if jobs <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=min(jobs, len(args))) as pool:
        return list(pool.map(fn, *zip(*args)))


def _solve(prob: _Problem, mode: str, budget: int, seed: int, restarts: int, jobs: int, guard: int):
    """Best (score, witness bits, explored) under the requested search mode."""
    if mode == "exhaustive":
        if prob.nbits > guard:
            raise SizeGuardError(f"exhaustive search over 2^{prob.nbits} witnesses exceeds 2^{guard}")
        return _exhaustive(prob)
    if budget < 1:
        raise ValueError("budget must be positive")
    if mode == "sampled":
        chunks = [(c, min(SAMPLE_CHUNK, budget - c * SAMPLE_CHUNK)) for c in range(-(-budget // SAMPLE_CHUNK))]
        out = _map(_sample_chunk, [(prob, seed, c, cnt) for c, cnt in chunks], jobs)
        best = None
        for score, key, x in out:
            if _better((score, key), best and best[:2]):
                best = (score, key, x)
        return best[0], best[2], budget
    if mode == "local-search":
        restarts = max(1, min(restarts, budget))
        per = budget // restarts
        out = _map(_local_slot, [(prob, seed, s, per) for s in range(restarts)], jobs)
        best = None
        explored = 0
        for score, key, x, ex in out:
            explored += ex
            if _better((score, key), best and best[:2]):
                best = (score, key, x)
        return best[0], best[2], explored
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def _report(prob: _Problem, mode: str, d: Fraction, result, witness_of) -> DensityReport:
    score, x, explored = result
    defect = Fraction(score, prob.denom)
    return DensityReport(mode, d, defect, max(defect, Fraction(0)), witness_of(x), explored)


def _weights(hit: np.ndarray, d: Fraction) -> np.ndarray:
    return d.numerator - d.denominator * hit.astype(np.int64)


def _check_d(d) -> Fraction:
    d = as_fraction(d)
    if not 0 <= d <= 1:
        raise ValueError("d must lie in [0, 1]")
    return d


# ---------------------------------------------------------------------------
# public entry points


def _shadow_problem(H: Hypergraph, d: Fraction, j: int) -> _Problem:
    k, n = H.k, H.n
    ks = combinations_array(n, k)
    hit = edge_indicator(H)
    if j == 0:
        required = np.zeros((len(ks), 1), dtype=np.int64)
        nbits = 1
    else:
        cols = [lex_rank(ks[:, list(P)], n) for P in itertools.combinations(range(k), j)]
        required = np.stack(cols, axis=1)
        nbits = math.comb(n, j)
    return _make_problem(required, _weights(hit, d), nbits, d.denominator * n**k)


def defect_shadow(
    H: Hypergraph,
    d,
    j: int,
    mode: str = "exhaustive",
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    jobs: int = 1,
) -> DensityReport:
    """Largest (d |K_k(G)| - |K_k(G) ∩ E|) / n^k over j-uniform shadows G on V(H)."""
    d = _check_d(d)
    if not 0 <= j <= H.k - 1:
        raise ValueError(f"need 0 <= j <= k-1, got j={j}, k={H.k}")
    if H.n < H.k:
        raise ValueError("need n >= k")
    prob = _shadow_problem(H, d, j)
    result = _solve(prob, mode, budget, seed, restarts, jobs, MAX_SHADOW_BITS)
    sets = combinations_array(H.n, j) if j else np.zeros((1, 0), dtype=np.int64)

    def witness(x):
        return ShadowHypergraph(j, H.n, [tuple(sets[b].tolist()) for b in np.flatnonzero(x)])

    return _report(prob, mode, d, result, witness)


def defect_vertex(
    H: Hypergraph,
    d,
    mode: str = "exhaustive",
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    jobs: int = 1,
) -> DensityReport:
    """Largest (d C(|U|,k) - e(H[U])) / n^k over vertex subsets U; the witness is U."""
    d = _check_d(d)
    if H.k < 2:
        raise ValueError("need k >= 2")
    if H.n < H.k:
        raise ValueError("need n >= k")
    prob = _shadow_problem(H, d, 1)
    result = _solve(prob, mode, budget, seed, restarts, jobs, MAX_VERTEX_BITS)
    return _report(prob, mode, d, result, lambda x: tuple(int(b) + 1 for b in np.flatnonzero(x)))


def _family_layout(n: int, shape: Sequence[tuple[int, ...]]) -> list[int]:
    offsets = [0]
    for S in shape:
        offsets.append(offsets[-1] + n ** len(S))
    return offsets


def _family_problem(H: Hypergraph, d: Fraction, shape: list[tuple[int, ...]]) -> _Problem:
    k, n = H.k, H.n
    if n**k > MAX_FAMILY_ITEMS:
        raise SizeGuardError(f"{n}^{k} tuples exceed {MAX_FAMILY_ITEMS}")
    offsets = _family_layout(n, shape)
    tuples = np.indices((n,) * k).reshape(k, -1).T  # 0-based values, lex order
    cols = []
    for S, off in zip(shape, offsets):
        idx = np.zeros(len(tuples), dtype=np.int64)
        for i in S:
            idx = idx * n + tuples[:, i - 1]
        cols.append(idx + off)
    required = np.stack(cols, axis=1)
    srt = np.sort(tuples, axis=1)
    injective = np.all(np.diff(srt, axis=1) > 0, axis=1) if k > 1 else np.ones(len(srt), dtype=bool)
    hit = np.zeros(len(tuples), dtype=bool)
    ind = edge_indicator(H)
    if injective.any():
        hit[injective] = ind[lex_rank(srt[injective] + 1, n)]
    return _make_problem(required, _weights(hit, d), offsets[-1], d.denominator * n**k)


def _normalize_shape(k: int, shape) -> list[tuple[int, ...]]:
    out = []
    for S in shape:
        S = tuple(sorted(set(int(i) for i in S)))
        if any(not 1 <= i <= k for i in S):
            raise ValueError(f"index set {S} is not a subset of [1..{k}]")
        if S in out:
            raise ValueError(f"index set {S} repeated")
        out.append(S)
    if not out:
        raise ValueError("the shape must be nonempty")
    return out


def defect_family(
    H: Hypergraph,
    d,
    shape,
    mode: str = "exhaustive",
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    jobs: int = 1,
) -> DensityReport:
    """Largest (d |K_k(G)| - e_H(G)) / n^k over directed families G of the given shape."""
    d = _check_d(d)
    shape = _normalize_shape(H.k, shape)
    prob = _family_problem(H, d, shape)
    result = _solve(prob, mode, budget, seed, restarts, jobs, MAX_FAMILY_BITS)
    n = H.n
    offsets = _family_layout(n, shape)

    def witness(x):
        members = {}
        for S, lo, hi in zip(shape, offsets, offsets[1:]):
            members[S] = [
                tuple(int(v) + 1 for v in np.unravel_index(b, (n,) * len(S))) for b in np.flatnonzero(x[lo:hi])
            ]
        return DirectedFamily(H.k, n, members)

    return _report(prob, mode, d, result, witness)


def family_defect_value(H: Hypergraph, G: DirectedFamily, d) -> Fraction:
    """Defect of one given family, straight from the definitions (test oracle)."""
    from .core import count_family_cliques, family_edge_count

    d = as_fraction(d)
    return (d * count_family_cliques(G) - family_edge_count(H, G)) / Fraction(H.n**H.k)


def symmetric_family_from_shadow(G: Hypergraph, k: int) -> DirectedFamily:
    """Shape [k]^(j); each G_J holds every ordering of every edge of the j-graph G."""
    j = G.k
    if not 1 <= j < k:
        raise ValueError(f"need 1 <= j < k, got j={j}, k={k}")
    ordered = [p for e in G.edges for p in itertools.permutations(e)]
    return DirectedFamily(k, G.n, {J: ordered for J in itertools.combinations(range(1, k + 1), j)})
