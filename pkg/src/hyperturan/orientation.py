"""Orientations of finite sets, higher-order tournaments and their hypergraphs."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Hypergraph, combinations_array, facet_ranks, hypergraph_from_indicator, lex_rank


def permutation_parity(seq: Sequence[int]) -> int:
    """+1 if sorting `seq` takes an even number of transpositions, else -1."""
    inversions = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class Orientation:
    """One of the two orientations of a finite set.

    `support` is the ascending enumeration; `sign` is +1 when the orientation
    equals +support and -1 when it equals -support.
    """

    support: tuple[int, ...]
    sign: int

    def __neg__(self) -> "Orientation":
        return Orientation(self.support, -self.sign)

    def __str__(self) -> str:
        return ("+" if self.sign > 0 else "-") + "(" + ", ".join(map(str, self.support)) + ")"


def canonicalize(sign: int, enumeration: Sequence[int]) -> Orientation:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    enumeration = tuple(enumeration)
    if len(set(enumeration)) != len(enumeration):
        raise ValueError(f"enumeration {enumeration} repeats a vertex")
    return Orientation(tuple(sorted(enumeration)), sign * permutation_parity(enumeration))


def induce(sigma: Orientation, x: int) -> Orientation:
    """The orientation of support - {x} obtained by moving x to the end and dropping it."""
    if len(sigma.support) < 2:
        raise ValueError("need a support of at least two elements")
    if x not in sigma.support:
        raise ValueError(f"{x} is not in the support {sigma.support}")
    p = sigma.support.index(x)
    rest = sigma.support[:p] + sigma.support[p + 1 :]
    # moving position p to the end of an m-tuple takes m - 1 - p transpositions
    shift = len(sigma.support) - 1 - p
    return Orientation(rest, sigma.sign * (-1 if shift % 2 else 1))


class Tournament:
    """An r-uniform tournament on [n]: one orientation for every r-subset.

    Signs are stored as an int8 vector over the r-subsets in lexicographic order.
    """

    __slots__ = ("r", "n", "signs")

    def __init__(self, r: int, n: int, signs):
        if r < 1 or n < r:
            raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
        signs = np.array(signs, dtype=np.int8)
        if signs.shape != (math.comb(n, r),):
            raise ValueError(f"expected {math.comb(n, r)} signs, got shape {signs.shape}")
        if not np.all((signs == 1) | (signs == -1)):
            raise ValueError("signs must be +1 or -1")
        self.r, self.n = r, n
        self.signs = signs
        self.signs.setflags(write=False)

    @classmethod
    def from_orientations(cls, r: int, n: int, orientations) -> "Tournament":
        signs = np.zeros(math.comb(n, r), dtype=np.int8)
        seen = np.zeros_like(signs, dtype=bool)
        for o in orientations:
            if len(o.support) != r:
                raise ValueError(f"orientation {o} has the wrong size")
            i = int(lex_rank(np.array(o.support), n))
            if seen[i]:
                raise ValueError(f"{o.support} oriented twice")
            seen[i] = True
            signs[i] = o.sign
        if not seen.all():
            raise ValueError("tournament is not total")
        return cls(r, n, signs)

    def orientation(self, subset: Sequence[int]) -> Orientation:
        s = tuple(sorted(subset))
        return Orientation(s, int(self.signs[int(lex_rank(np.array(s), self.n))]))

    def flipped(self, subset: Sequence[int]) -> "Tournament":
        signs = self.signs.copy()
        signs[int(lex_rank(np.array(sorted(subset)), self.n))] *= -1
        return Tournament(self.r, self.n, signs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Tournament)
            and (self.r, self.n) == (other.r, other.n)
            and np.array_equal(self.signs, other.signs)
        )

    def __repr__(self) -> str:
        return f"Tournament(r={self.r}, n={self.n})"


def random_tournament(r: int, n: int, seed) -> Tournament:
    if not 1 <= r < n:
        raise ValueError(f"need 1 <= r < n, got r={r}, n={n}")
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=math.comb(n, r), dtype=np.int8)
    return Tournament(r, n, 2 * bits - 1)


def all_tournaments(r: int, n: int):
    """Every r-uniform tournament on [n], in binary-counting order of the sign vector."""
    m = math.comb(n, r)
    for bits in itertools.product((1, -1), repeat=m):
        yield Tournament(r, n, np.array(bits, dtype=np.int8))


# ---------------------------------------------------------------------------
# edge criteria for H(T)


def is_edge_existential(T: Tournament, e: Sequence[int]) -> bool:
    """Some orientation of e induces T's orientation on each of its (|e|-1)-subsets."""
    e = tuple(sorted(e))
    for sign in (1, -1):
        sigma = Orientation(e, sign)
        if all(induce(sigma, x) == T.orientation(tuple(v for v in e if v != x)) for x in e):
            return True
    return False


def is_edge_pairwise(T: Tournament, e: Sequence[int]) -> bool:
    """Any two facets of e induce opposite orientations on their intersection (|e| >= 3)."""
    e = tuple(sorted(e))
    if len(e) < 3:
        raise ValueError("the pairwise criterion needs |e| >= 3")
    for a, b in itertools.combinations(e, 2):
        fa = T.orientation(tuple(v for v in e if v != a))
        fb = T.orientation(tuple(v for v in e if v != b))
        if induce(fa, b) != -induce(fb, a):
            return False
    return True


def _pairwise_indicator(T: Tournament, k: int) -> np.ndarray:
    """Vectorised pairwise criterion over all k-subsets (lex order)."""
    facets = facet_ranks(T.n, k)
    s = T.signs[facets].astype(np.int8)  # s[:, p] = sign of e minus its p-th element
    ok = np.ones(len(facets), dtype=bool)
    for p, q in itertools.combinations(range(k), 2):
        # e_q sits at position q-1 of facet p; e_p sits at position p of facet q
        from_p = s[:, p] * (-1 if (k - 1 - q) % 2 else 1)
        from_q = s[:, q] * (-1 if (k - 2 - p) % 2 else 1)
        ok &= from_p == -from_q
    return ok


def _existential_indicator(T: Tournament, k: int) -> np.ndarray:
    return np.array(
        [is_edge_existential(T, e) for e in combinations_array(T.n, k).tolist()], dtype=bool
    )


def hypergraph_from_tournament(T: Tournament, method: str | None = None) -> Hypergraph:
    """The k-uniform hypergraph H(T) of an r = (k-1)-uniform tournament.

    method: "pairwise" (default for k >= 3, vectorised) or "existential".
    """
    k = T.r + 1
    if T.n < k:
        raise ValueError(f"need n >= k = {k}")
    if method is None:
        method = "pairwise" if k >= 3 else "existential"
    if method == "pairwise":
        if k < 3:
            raise ValueError("the pairwise criterion needs k >= 3")
        ind = _pairwise_indicator(T, k)
    elif method == "existential":
        ind = _existential_indicator(T, k)
    else:
        raise ValueError(f"unknown method {method!r}")
    return hypergraph_from_indicator(k, T.n, ind)


def tournament_edge_indicator(T: Tournament) -> np.ndarray:
    """Edge indicator of H(T) over lex-ordered k-subsets, without building the hypergraph."""
    k = T.r + 1
    if k >= 3:
        return _pairwise_indicator(T, k)
    s = T.signs
    pairs = combinations_array(T.n, 2) - 1
    return s[pairs[:, 0]] != s[pairs[:, 1]]


def double_tournament(T: Tournament) -> Tournament:
    """Orient each (r+1)-set so that an even number of its facets agree with T.

    Agreement at element i means T assigns to x - {i} the orientation induced
    from x's orientation.  Only well defined when r + 1 is odd.
    """
    m = T.r + 1
    if m % 2 == 0:
        raise ValueError(f"double tournament needs an odd facet count, got r + 1 = {m}")
    if T.n < m:
        raise ValueError(f"need n >= {m}")
    facets = facet_ranks(T.n, m)
    t = T.signs[facets]
    # with x oriented +, removing its p-th element induces sign (-1)^(m-1-p)
    induced = np.array([-1 if (m - 1 - p) % 2 else 1 for p in range(m)], dtype=np.int8)
    agree = (t == induced[None, :]).sum(axis=1)
    signs = np.where(agree % 2 == 0, 1, -1).astype(np.int8)
    return Tournament(m, T.n, signs)


def agreement_count(T: Tournament, sigma: Orientation) -> int:
    """Number of i in the support of sigma for which T assigns sigma_i to support - {i}."""
    return sum(
        1 for i in sigma.support if T.orientation(tuple(v for v in sigma.support if v != i)) == induce(sigma, i)
    )
