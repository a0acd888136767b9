from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperturan.core import SizeGuardError
from hyperturan.graphlab import count_transversal_paths
from hyperturan.reduced import (
    ReducedHypergraph,
    class_order,
    complete_reduced,
    edge_to_path,
    find_supported_triple,
    is_d_dense,
    projection_graph,
    random_reduced,
    search_supported_Fk,
    supports_Fk_definition,
    supports_Fk_fast,
)


def _figure_instance(third_edge):
    k, m = 4, 9
    z = (1, 3, 4, 7, 9)
    ys = [tuple(v for v in z if v != drop) for drop in (3, 4, 7)]
    cons = {ys[0]: [(1, 1, 1, 1)], ys[1]: [(1, 1, 1, 1)], ys[2]: [third_edge]}
    return ReducedHypergraph(k, m, 2, cons), z


def test_three_pairwise_meeting_edges_support():
    A, z = _figure_instance((1, 1, 1, 1))
    assert supports_Fk_fast(A, z)
    assert supports_Fk_definition(A, z)
    wit = find_supported_triple(A, z)
    assert len(set(wit.ys)) == 3
    assert search_supported_Fk(A) == z


def test_breaking_one_intersection_removes_support():
    # y3 = z - {7} shares the class z - {3, 7} = (1, 4, 9) with y1; move e3 off it
    A, z = _figure_instance((1, 1, 1, 1))
    y1, y3 = (1, 4, 7, 9), (1, 3, 4, 9)
    shared = tuple(sorted(set(y1) & set(y3)))
    pos = class_order(y3).index(shared)
    e3 = [1, 1, 1, 1]
    e3[pos] = 2
    B, _ = _figure_instance(tuple(e3))
    assert not supports_Fk_fast(B, z)
    assert not supports_Fk_definition(B, z)


def test_selection_oracle_agrees_on_random_instances():
    rng = np.random.default_rng(0)
    for _ in range(60):
        A = random_reduced(3, 5, 3, float(rng.uniform(0.05, 0.5)), rng)
        for z in itertools.combinations(range(1, 6), 4):
            assert supports_Fk_fast(A, z) == supports_Fk_definition(A, z)


def test_dense_report_matches_recount():
    A = random_reduced(3, 5, 3, 0.6, 3)
    rep = is_d_dense(A, Fraction(1, 2))
    recount = min(Fraction(len(A.constituents[y]), A.possible(y)) for y in A.constituents)
    assert rep.min_density == recount
    assert rep.dense == (recount >= Fraction(1, 2))
    assert Fraction(len(A.constituents[rep.worst]), A.possible(rep.worst)) == recount


def test_complete_reduced_is_dense_and_supports():
    A = complete_reduced(3, 5, 2)
    assert is_d_dense(A, 1).dense
    assert search_supported_Fk(A) == (1, 2, 3, 4)


def test_empty_reduced():
    A = ReducedHypergraph(3, 4, 2)
    assert not is_d_dense(A, Fraction(1, 10)).dense
    assert search_supported_Fk(A) is None


def test_validation():
    with pytest.raises(ValueError):
        ReducedHypergraph(3, 4, 2, {(1, 2, 3): [(1, 1, 3)]})
    with pytest.raises(ValueError):
        ReducedHypergraph(3, 4, 2, {(1, 2, 5): []})
    with pytest.raises(ValueError):
        supports_Fk_fast(ReducedHypergraph(3, 4, 2), (1, 2, 3))


def test_selection_guard():
    A = complete_reduced(3, 4, 20)
    with pytest.raises(SizeGuardError):
        supports_Fk_definition(A, (1, 2, 3, 4))


def test_projection_graph_contains_every_edge_path():
    A = random_reduced(3, 4, 3, 0.4, 5)
    y = (1, 2, 4)
    G = projection_graph(A, y)
    assert G.m == 3
    assert G.sizes == tuple(A.class_sizes[tuple(v for v in y if v != y[r])] for r in range(3))
    for e in A.constituents[y]:
        path = edge_to_path(A, y, e)
        assert all(G.adjacency(r, r + 1)[path[r - 1] - 1, path[r] - 1] for r in (1, 2))
    # paths can only be at least as many as edges
    total, _ = count_transversal_paths(G)
    assert total >= len(A.constituents[y])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_projection_adjacency_is_exactly_the_pair_shadow(seed):
    A = random_reduced(3, 4, 3, 0.3, seed)
    y = (1, 2, 3)
    G = projection_graph(A, y)
    for r in (1, 2):
        expected = {(p[r - 1], p[r]) for p in (edge_to_path(A, y, e) for e in A.constituents[y])}
        assert set(G.edge_list(r, r + 1)) == expected
