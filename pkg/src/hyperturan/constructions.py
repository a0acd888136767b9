"""Pattern hypergraphs and colouring-based F-free constructions."""

from __future__ import annotations

import itertools
import math

import numpy as np

from .core import (
    Hypergraph,
    combinations_array,
    complete_hypergraph,
    facet_ranks,
    hypergraph_from_indicator,
    lex_rank,
)
from .orientation import Tournament

RED, GREEN = 1, 2


class Colouring:
    """A colouring of the `arity`-subsets of [n] with colours 1..palette (lex order)."""

    __slots__ = ("arity", "n", "palette", "colours")

    def __init__(self, arity: int, n: int, palette: int, colours):
        colours = np.array(colours, dtype=np.int64)
        if colours.shape != (math.comb(n, arity),):
            raise ValueError(f"expected {math.comb(n, arity)} colours, got shape {colours.shape}")
        if palette < 1 or (colours.size and (colours.min() < 1 or colours.max() > palette)):
            raise ValueError(f"colours must lie in 1..{palette}")
        self.arity, self.n, self.palette = arity, n, palette
        self.colours = colours
        self.colours.setflags(write=False)

    def colour(self, subset) -> int:
        return int(self.colours[int(lex_rank(np.array(sorted(subset)), self.n))])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Colouring)
            and (self.arity, self.n, self.palette) == (other.arity, other.n, other.palette)
            and np.array_equal(self.colours, other.colours)
        )

    def __repr__(self) -> str:
        return f"Colouring(arity={self.arity}, n={self.n}, palette={self.palette})"


def random_colouring(arity: int, n: int, palette: int, seed) -> Colouring:
    rng = np.random.default_rng(seed)
    return Colouring(arity, n, palette, rng.integers(1, palette + 1, size=math.comb(n, arity)))


def constant_colouring(arity: int, n: int, palette: int, colour: int = 1) -> Colouring:
    return Colouring(arity, n, palette, np.full(math.comb(n, arity), colour))


# ---------------------------------------------------------------------------
# patterns


def pattern_Fk(k: int) -> Hypergraph:
    """The k-graph with k+1 vertices and three edges w+ab, w+ac, w+bc."""
    if k < 2:
        raise ValueError("F^(k) needs k >= 2")
    w = tuple(range(1, k - 1))
    a, b, c = k - 1, k, k + 1
    return Hypergraph(k, k + 1, [w + (a, b), w + (a, c), w + (b, c)])


def pattern_Fkr(k: int, r: int) -> Hypergraph:
    """k+1 vertices, r edges: the complements of the vertices 1..r."""
    if not 3 <= r <= k + 1:
        raise ValueError(f"need 3 <= r <= k+1, got r={r}, k={k}")
    full = range(1, k + 2)
    return Hypergraph(k, k + 1, [tuple(v for v in full if v != i) for i in range(1, r + 1)])


def pattern_clique(k: int, t: int) -> Hypergraph:
    if t < k:
        raise ValueError(f"clique K^({k})_{t} needs t >= k")
    return complete_hypergraph(k, t)


# ---------------------------------------------------------------------------
# colouring constructions


def _facet_colours(col: Colouring, k: int) -> np.ndarray:
    if col.arity != k - 1:
        raise ValueError(f"colouring arity {col.arity} does not match k-1 = {k - 1}")
    if col.n < k:
        raise ValueError(f"need n >= k = {k}")
    # column p: colour of the k-set with its p-th smallest element removed
    return col.colours[facet_ranks(col.n, k)]


def colouring_hypergraph_Hr(gamma: Colouring, k: int, r: int) -> Hypergraph:
    """k-sets x1<...<xk whose first k+3-r facets alternate in colour.

    A facet is x - {x_p}; consecutive facets in the chain must differ.
    """
    if not 3 <= r <= k + 1:
        raise ValueError(f"need 3 <= r <= k+1, got r={r}")
    c = _facet_colours(gamma, k)
    length = k + 3 - r
    ok = np.ones(len(c), dtype=bool)
    for p in range(length - 1):
        ok &= c[:, p] != c[:, p + 1]
    return hypergraph_from_indicator(k, gamma.n, ok)


def rodl_hypergraph_R(phi: Colouring, k: int) -> Hypergraph:
    """k-sets whose facets missing the smallest and second-smallest element differ in colour."""
    c = _facet_colours(phi, k)
    return hypergraph_from_indicator(k, phi.n, c[:, 0] != c[:, 1])


def tournament_from_colouring(gamma: Colouring) -> Tournament:
    """Red sets get the ascending orientation, all other colours its negation."""
    return Tournament(gamma.arity, gamma.n, np.where(gamma.colours == RED, 1, -1))


def colouring_from_tournament(T: Tournament) -> Colouring:
    return Colouring(T.r, T.n, 2, np.where(T.signs > 0, RED, GREEN))


def chain_holds(colours) -> bool:
    """Scalar form of the alternation chain, used as a test oracle."""
    return all(a != b for a, b in itertools.pairwise(colours))


def vertex_colour_classes(phi: Colouring) -> dict[int, list[int]]:
    """For arity-1 colourings: colour -> sorted vertices."""
    if phi.arity != 1:
        raise ValueError("only defined for vertex colourings")
    classes: dict[int, list[int]] = {}
    for (v,), c in zip(combinations_array(phi.n, 1).tolist(), phi.colours.tolist()):
        classes.setdefault(c, []).append(v)
    return classes
