from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperturan.core import (
    Hypergraph,
    ShadowHypergraph,
    SizeGuardError,
    complete_hypergraph,
    count_family_cliques,
    enumerate_cliques,
)
from hyperturan.density import (
    defect_family,
    defect_shadow,
    defect_vertex,
    family_defect_value,
    symmetric_family_from_shadow,
)
from hyperturan.orientation import hypergraph_from_tournament, random_tournament


def _random_hypergraph(k, n, p, seed):
    rng = np.random.default_rng(seed)
    return Hypergraph(k, n, [e for e in itertools.combinations(range(1, n + 1), k) if rng.random() < p])


def _brute_bits(universe, H, d):
    """Max over all subsets of `universe` (tuples of vertices) of d*|cliques| - hits, by mask loop.

    A k-set is a clique when every member of `universe` it contains is chosen.
    """
    k, n = H.k, H.n
    index = {u: i for i, u in enumerate(universe)}
    j = len(universe[0])
    ksets = list(itertools.combinations(range(1, n + 1), k))
    need = np.array([sum(1 << index[s] for s in itertools.combinations(x, j)) for x in ksets], dtype=np.int64)
    hit = np.array([x in H.edge_set for x in ksets])
    best = None
    for mask in range(1 << len(universe)):
        sat = (need & mask) == need
        val = d * int(sat.sum()) - int((sat & hit).sum())
        if best is None or val > best:
            best = val
    return best / Fraction(n**k)


def test_complete_graph_has_no_defect():
    rep = defect_vertex(complete_hypergraph(2, 4), Fraction(1, 2))
    assert rep.defect <= 0 and rep.eta_required == 0


def test_empty_graph_defect():
    rep = defect_vertex(Hypergraph(2, 4), Fraction(1, 2))
    assert rep.defect == Fraction(3, 16)
    assert rep.witness == (1, 2, 3, 4)


def test_j0_closed_form():
    for seed in range(4):
        H = _random_hypergraph(3, 7, 0.3, seed)
        d = Fraction(1, 2)
        rep = defect_shadow(H, d, 0)
        assert rep.eta_required == max(Fraction(0), (d * math.comb(7, 3) - len(H.edges)) / 7**3)


def test_vertex_defect_matches_subset_loop():
    H = hypergraph_from_tournament(random_tournament(2, 14, 1))
    d = Fraction(1, 4)
    expected = _brute_bits([(v,) for v in range(1, 15)], H, d)
    assert defect_vertex(H, d).defect == expected


def test_shadow_defect_matches_shadow_loop():
    H = _random_hypergraph(3, 6, 0.5, 3)
    d = Fraction(1, 2)
    expected = _brute_bits(list(itertools.combinations(range(1, 7), 2)), H, d)
    rep = defect_shadow(H, d, 2)
    assert rep.defect == expected
    # the reported witness attains the reported value
    cliques = enumerate_cliques(rep.witness, 3)
    hits = sum(1 for c in cliques if c in H.edge_set)
    assert (d * len(cliques) - hits) / Fraction(6**3) == rep.defect


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 10), st.integers(0, 10_000), st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(2, 3)]))
def test_j1_equals_vertex_mode(n, seed, d):
    H = _random_hypergraph(3, n, 0.4, seed)
    assert defect_shadow(H, d, 1).defect == defect_vertex(H, d).defect


@settings(max_examples=20, deadline=None)
@given(st.integers(4, 9), st.integers(0, 10_000))
def test_heuristics_never_exceed_exhaustive(n, seed):
    H = _random_hypergraph(3, n, 0.3, seed)
    d = Fraction(1, 2)
    exact = defect_vertex(H, d).defect
    for mode in ("sampled", "local-search"):
        assert defect_vertex(H, d, mode=mode, budget=500, seed=seed).defect <= exact
    assert defect_shadow(H, d, 2, mode="local-search", budget=500, seed=seed).defect <= (
        defect_shadow(H, d, 2).defect if math.comb(n, 2) <= 22 else Fraction(10**9)
    )


def test_local_search_finds_exhaustive_optimum_on_small_case():
    H = hypergraph_from_tournament(random_tournament(2, 12, 4))
    d = Fraction(1, 4)
    assert defect_vertex(H, d, mode="local-search", budget=20_000).defect == defect_vertex(H, d).defect


def test_family_full_square():
    rep = defect_family(Hypergraph(2, 3), Fraction(1, 2), [(1, 2)])
    assert rep.defect == Fraction(1, 2)
    assert len(rep.witness.members[(1, 2)]) == 9


def test_family_single_full_set_closed_form():
    k, n = 2, 4
    H = _random_hypergraph(k, n, 0.5, 7)
    d = Fraction(1, 3)
    closed = Fraction(0)
    for t in itertools.product(range(1, n + 1), repeat=k):
        hit = len(set(t)) == k and tuple(sorted(t)) in H.edge_set
        closed += max(Fraction(0), d - hit)
    rep = defect_family(H, d, [(1, 2)])
    assert rep.defect == closed / n**k
    assert family_defect_value(H, rep.witness, d) == rep.defect


def test_family_witness_value_matches_definition():
    H = _random_hypergraph(3, 3, 0.6, 1)
    d = Fraction(1, 2)
    for shape in ([(1, 2), (2, 3)], [(1,), (2, 3)], [(), (1, 3)]):
        rep = defect_family(H, d, shape)
        assert family_defect_value(H, rep.witness, d) == rep.defect


@pytest.mark.parametrize(
    "small,large",
    [
        ([(1,)], [(1,), (2,)]),
        ([(1, 2)], [(1, 2), (1,)]),
        ([(1, 2)], [(1, 2), (2, 3)]),
    ],
)
def test_family_defect_monotone_in_shape(small, large):
    k = max(max(S) for S in large)
    n = 4 if k == 2 else 2
    for seed in range(3):
        H = _random_hypergraph(k, n, 0.5, seed)
        d = Fraction(1, 2)
        assert defect_family(H, d, small).defect <= defect_family(H, d, large).defect


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 3), st.integers(3, 6), st.integers(0, 10_000))
def test_symmetric_family_clique_identity(j, n, seed):
    k = j + 1
    rng = np.random.default_rng(seed)
    G = ShadowHypergraph(j, n, [s for s in itertools.combinations(range(1, n + 1), j) if rng.random() < 0.6])
    fam = symmetric_family_from_shadow(G, k)
    assert count_family_cliques(fam) == math.factorial(k) * len(enumerate_cliques(G, k))


def test_symmetric_family_j1_injective_identity():
    G = ShadowHypergraph(1, 5, [(1,), (2,), (4,)])
    fam = symmetric_family_from_shadow(G, 3)
    from hyperturan.core import cliques_of_family

    injective = [t for t in cliques_of_family(fam) if len(set(t)) == 3]
    assert len(injective) == 6 * len(enumerate_cliques(G, 3))


def test_symmetric_family_extremes():
    full = symmetric_family_from_shadow(ShadowHypergraph.complete(2, 5), 3)
    assert count_family_cliques(full) == 6 * math.comb(5, 3)
    assert count_family_cliques(symmetric_family_from_shadow(ShadowHypergraph(2, 5), 3)) == 0
    with pytest.raises(ValueError):
        symmetric_family_from_shadow(ShadowHypergraph(2, 5), 2)


def _non_injective_mass(n, k, d):
    return d * Fraction(n**k - math.perm(n, k), n**k)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_family_vs_shadow_heuristic_with_diagonal_correction(n):
    # tuples with repeated entries always count in the clique set and never hit;
    # that mass is added to the shadow side before comparing
    k = 3
    shape = list(itertools.combinations(range(1, k + 1), 2))
    for seed, p in enumerate((0.3, 0.6, 0.9, 1.0)):
        H = _random_hypergraph(k, n, p, seed)
        for d in (Fraction(1, 4), Fraction(1, 2)):
            shadow = defect_shadow(H, d, 2).eta_required
            fam = defect_family(H, d, shape, mode="local-search", budget=5000, seed=seed).eta_required
            assert fam <= 2 * k**k * shadow + _non_injective_mass(n, k, d)


def test_family_vs_shadow_uncorrected_fails_on_complete_hypergraph():
    # the uncorrected finite-n form is false: no shadow has a deficit, yet the
    # diagonal tuples give the family one
    H = complete_hypergraph(3, 4)
    d = Fraction(1, 2)
    shape = list(itertools.combinations(range(1, 4), 2))
    assert defect_shadow(H, d, 2).eta_required == 0
    assert defect_family(H, d, shape, mode="local-search", budget=5000).eta_required > 0


def test_parallel_restarts_are_deterministic():
    H = hypergraph_from_tournament(random_tournament(2, 25, 9))
    a = defect_vertex(H, Fraction(1, 4), mode="local-search", budget=4000, restarts=8, seed=3, jobs=1)
    b = defect_vertex(H, Fraction(1, 4), mode="local-search", budget=4000, restarts=8, seed=3, jobs=4)
    assert a.to_text() == b.to_text()
    c = defect_vertex(H, Fraction(1, 4), mode="sampled", budget=700, seed=3, jobs=1)
    e = defect_vertex(H, Fraction(1, 4), mode="sampled", budget=700, seed=3, jobs=3)
    assert c.to_text() == e.to_text()


def test_report_text_fields():
    text = defect_vertex(Hypergraph(2, 4), Fraction(1, 2)).to_text()
    keys = [line.split("=", 1)[0] for line in text.splitlines()]
    assert keys == ["mode", "d", "defect", "defect_exact", "eta_required", "explored", "witness"]


def test_guards():
    with pytest.raises(SizeGuardError):
        defect_vertex(Hypergraph(3, 25), 0.5)
    with pytest.raises(SizeGuardError):
        defect_shadow(Hypergraph(3, 8), 0.5, 2)
    with pytest.raises(SizeGuardError):
        defect_family(Hypergraph(2, 5), 0.5, [(1, 2)])
    with pytest.raises(ValueError):
        defect_shadow(Hypergraph(3, 6), 0.5, 3)
    with pytest.raises(ValueError):
        defect_vertex(Hypergraph(3, 6), 1.5)
    with pytest.raises(ValueError):
        defect_vertex(Hypergraph(3, 6), 0.5, mode="annealing", budget=10)
