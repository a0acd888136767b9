from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperturan.constructions import pattern_clique, pattern_Fk, pattern_Fkr
from hyperturan.core import Hypergraph, SizeGuardError, complete_hypergraph
from hyperturan.freeness import (
    automorphism_count,
    contains,
    contains_ordered_Fk,
    count_copies,
    count_embeddings,
    count_kplus1_copies,
    is_embedding,
    iter_embeddings,
    kplus1_edge_counts,
    turan_number,
)
from hyperturan.orientation import hypergraph_from_tournament, random_tournament


def _brute_embeddings(H, F):
    out = 0
    for image in itertools.permutations(range(1, H.n + 1), F.n):
        phi = dict(zip(range(1, F.n + 1), image))
        out += all(tuple(sorted(phi[v] for v in e)) in H.edge_set for e in F.edges)
    return out


@st.composite
def hosts(draw, k=3, max_n=7):
    n = draw(st.integers(k, max_n))
    universe = list(itertools.combinations(range(1, n + 1), k))
    keep = draw(st.lists(st.booleans(), min_size=len(universe), max_size=len(universe)))
    return Hypergraph(k, n, [e for e, b in zip(universe, keep) if b])


@settings(max_examples=60, deadline=None)
@given(hosts(max_n=6))
def test_embedding_count_matches_permutations(H):
    for F in (pattern_Fk(3), pattern_clique(3, 4)):
        assert count_embeddings(H, F) == _brute_embeddings(H, F)


@settings(max_examples=80, deadline=None)
@given(hosts(max_n=8))
def test_contains_iff_copies(H):
    F = pattern_Fk(3)
    fast = contains(H, F)
    slow = contains(H, F, method="backtrack")
    assert (fast is None) == (slow is None) == (count_copies(H, F) == 0)
    if fast is not None:
        assert is_embedding(H, F, fast)
    assert count_copies(H, F) == count_kplus1_copies(H, 3)


def test_kplus1_counts_match_direct():
    H = hypergraph_from_tournament(random_tournament(2, 9, 1))
    counts = kplus1_edge_counts(H)
    for S in itertools.combinations(range(1, 10), 4):
        c = sum(1 for e in itertools.combinations(S, 3) if e in H.edge_set)
        assert counts.get(S, 0) == c


def test_automorphisms():
    assert automorphism_count(pattern_clique(2, 3)) == 6
    assert automorphism_count(pattern_Fk(3)) == 6  # w fixed, a, b, c permuted freely
    assert automorphism_count(pattern_clique(3, 5)) == 120


def test_tournament_hypergraphs_free():
    for k in (3, 4):
        for seed in range(20):
            H = hypergraph_from_tournament(random_tournament(k - 1, k + 4, seed))
            assert contains(H, pattern_Fk(k)) is None
            assert contains_ordered_Fk(H) is None


def test_ordered_detection():
    H = Hypergraph(3, 5, [(1, 2, 3), (1, 2, 4), (1, 3, 4)])
    phi = contains_ordered_Fk(H)
    # degree-2 vertices of the copy on {1,2,3,4} are 2, 3, 4: consecutive
    assert phi is not None and is_embedding(H, pattern_Fk(3), phi)
    # consecutiveness is read inside the copy's own vertex order: {1,2,4} in 1<2<4<5
    G = Hypergraph(3, 5, [(1, 2, 5), (1, 4, 5), (2, 4, 5)])
    assert contains_ordered_Fk(G) is not None
    # degree-2 vertices 1, 2, 5 sit at positions 0, 1, 3 of 1<2<4<5
    G = Hypergraph(3, 5, [(1, 2, 4), (1, 4, 5), (2, 4, 5)])
    assert contains(G, pattern_Fk(3)) is not None
    assert contains_ordered_Fk(G) is None


def test_ordered_triangle_any_run():
    assert contains_ordered_Fk(complete_hypergraph(2, 3)) is not None


def test_mixed_uniformity_rejected():
    with pytest.raises(ValueError):
        contains(complete_hypergraph(3, 5), pattern_Fk(2))


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_mantel(n):
    res = turan_number(n, pattern_clique(2, 3))
    assert res.exact and res.value == n * n // 4
    assert contains(res.witness, pattern_clique(2, 3)) is None
    assert len(res.witness.edges) == res.value


def test_F3_small_turan_numbers():
    # frozen from an independent bitmask brute force over all triple systems
    for n, ex in ((4, 2), (5, 5), (6, 10)):
        res = turan_number(n, pattern_Fk(3))
        assert res.exact and res.value == ex
        assert contains(res.witness, pattern_Fk(3)) is None


def test_turan_monotone():
    F = pattern_Fkr(3, 4)
    vals = [turan_number(n, F).value for n in (4, 5, 6)]
    assert vals == sorted(vals)
    assert all(v <= math.comb(n, 3) for v, n in zip(vals, (4, 5, 6)))
    assert vals[0] == 3


def test_turan_size_guard_and_budget():
    with pytest.raises(SizeGuardError):
        turan_number(8, pattern_Fk(3))
    res = turan_number(6, pattern_Fk(3), time_budget=0.0)
    assert res.value <= 10


def test_embeddings_are_valid():
    H = hypergraph_from_tournament(random_tournament(1, 6, 0))
    for phi in iter_embeddings(H, pattern_clique(2, 2)):
        assert is_embedding(H, pattern_clique(2, 2), phi)
