from math import comb

import pytest
from hypothesis import given

from conftest import TWO_HUB_EDGES, free_trees, trees, trees_upto
from maxla import (
    FreeTree, Infeasible, bipartite_maxla, bistar_tree, brute_maxla,
    brute_restricted, classify, classify_maximizability, cost, cycle_graph, dmax_balanced_bistar,
    dmax_bistar, dmax_cycle, dmax_kquasistar, dmax_path, dmax_upper_over_trees,
    is_bipartite_arrangement, bipartition, known_thistle_maxla, kquasistar_tree, level_signature,
    one_thistle_maxla, path_tree, rotation_heuristic, solve, spider_tree, star_tree, thistles,
    two_linear_maxla, vertex_levels,
)


def _non_increasing(sig):
    return all(x >= y for x, y in zip(sig, sig[1:]))


# ---------------------------------------------------------------- bipartite

def test_bipartite_examples():
    assert bipartite_maxla(path_tree(4)).value == 7
    assert bipartite_maxla(star_tree(5)).value == 10 == 4 + comb(4, 2)
    assert bipartite_maxla(FreeTree(7, TWO_HUB_EDGES)).value == 23
    r = bipartite_maxla(FreeTree(1, []))
    assert r.value == 0 and r.method == "BipartiteMaxLA"


@given(free_trees(min_n=2, max_n=40))
def test_bipartite_witness_contract(t):
    r = bipartite_maxla(t)
    a = r.witness
    assert cost(t, a) == r.value
    assert is_bipartite_arrangement(t, bipartition(t), a)
    sig = level_signature(t, a)
    assert _non_increasing(sig)
    lev = vertex_levels(t, a)
    assert all(lev[u] != lev[v] for u, v in t.edges)


def test_bipartite_matches_oracle_up_to_9():
    for t in trees_upto(9, lo=2):
        assert bipartite_maxla(t).value == brute_restricted(t, "bipartite").value


def test_bipartite_on_even_cycle():
    r = bipartite_maxla(cycle_graph(6))
    assert r.value == dmax_cycle(6)[0]


# ---------------------------------------------------------------- 1-thistle

def test_known_thistle_examples(two_hub):
    with pytest.raises(Infeasible):
        known_thistle_maxla(two_hub, 0)
    r = known_thistle_maxla(two_hub, 3)
    assert r.value == 24
    assert level_signature(two_hub, r.witness) == (3, 1, 1, 0, -1, -1, -3)
    assert thistles(two_hub, r.witness) == (3,)


def test_star_hub_never_beats_bipartite():
    for n in range(3, 9):
        t = star_tree(n)
        try:
            v = known_thistle_maxla(t, 0).value
        except Infeasible:
            continue
        assert v < bipartite_maxla(t).value


@pytest.mark.parametrize("n", range(4, 10))
def test_known_thistle_witness_has_one_thistle(n):
    for t in trees(n):
        for v in t.potential_thistles.candidates:
            try:
                r = known_thistle_maxla(t, v)
            except Infeasible:
                continue
            assert thistles(t, r.witness) == (v,)
            assert cost(t, r.witness) == r.value
            assert _non_increasing(level_signature(t, r.witness))


def test_one_thistle_examples(two_hub):
    with pytest.raises(Infeasible):
        one_thistle_maxla(path_tree(6))
    assert one_thistle_maxla(two_hub).value == 24
    sp = spider_tree([2, 2, 2])
    assert one_thistle_maxla(sp).value <= bipartite_maxla(sp).value


@pytest.mark.parametrize("n", range(4, 10))
def test_one_thistle_against_oracle(n):
    # never above the best 1-thistle arrangement; exact whenever a maximum has one thistle
    for t in trees(n):
        try:
            r = one_thistle_maxla(t)
        except Infeasible:
            continue
        assert r.value <= brute_restricted(t, "thistles", k=1).value
        mc = classify_maximizability(t)
        if mc.min_thistles_over_maxima == 1:
            assert r.value == mc.value


@pytest.mark.parametrize("n", range(5, 11))
def test_one_per_bridge_changes_nothing(n):
    for t in trees(n):
        try:
            a = one_thistle_maxla(t, one_per_bridge=True).value
        except Infeasible:
            a = None
        try:
            b = one_thistle_maxla(t, one_per_bridge=False).value
        except Infeasible:
            b = None
        assert a == b


# ---------------------------------------------------------------- 2-linear

def test_two_linear_examples(two_hub):
    r = two_linear_maxla(two_hub)
    assert r.value == 24 and r.method == "TwoLinear"
    adjacent = bistar_tree(3, 4)
    assert two_linear_maxla(adjacent).value == bipartite_maxla(adjacent).value
    with pytest.raises(ValueError):
        two_linear_maxla(spider_tree([1, 1, 1]))


def test_two_linear_against_oracle():
    for t in trees_upto(9, lo=6):
        if classify(t).tag in ("TwoLinear", "BalancedBistar", "Bistar") and \
                sum(d >= 3 for d in t.deg) == 2:
            r = two_linear_maxla(t)
            assert r.value == brute_maxla(t).value
            assert all(cost(t, a) == r.value for a in r.witnesses)


def test_two_linear_odd_bridge_is_bipartite():
    for t in trees_upto(10, lo=6):
        if sum(d >= 3 for d in t.deg) == 2:
            bridge = t.potential_thistles.bridges[0]
            if bridge.length % 2 == 1:
                assert two_linear_maxla(t).value == bipartite_maxla(t).value


# ---------------------------------------------------------------- closed forms

def test_closed_form_examples():
    assert dmax_path(5) == 11
    assert dmax_cycle(5)[0] == 12 == dmax_path(5) + 1
    value, a = dmax_cycle(3)
    assert value == 4 and cost(cycle_graph(3), a) == 4
    assert dmax_balanced_bistar(6) == 19 == dmax_bistar(3, 3) == 9 + comb(5, 2)
    assert dmax_kquasistar(5, 2) == 11 == dmax_path(5)
    assert dmax_path(1) == 0
    assert dmax_upper_over_trees(10) == dmax_balanced_bistar(10)


@pytest.mark.parametrize("bad", [lambda: dmax_path(0), lambda: dmax_cycle(2), lambda: dmax_bistar(0, 3),
                                 lambda: dmax_kquasistar(5, 3), lambda: dmax_balanced_bistar(0)])
def test_closed_form_domains(bad):
    with pytest.raises(ValueError):
        bad()


def test_closed_forms_against_oracle():
    for n in range(1, 10):
        assert dmax_path(n) == brute_maxla(path_tree(n)).value
    for n in range(3, 10):
        value, a = dmax_cycle(n)
        c = cycle_graph(n)
        assert value == brute_maxla(c).value == cost(c, a)
    for n in range(2, 10):
        for d2 in range(1, n // 2 + 1):
            d1 = n - d2
            assert dmax_bistar(d1, d2) == brute_maxla(bistar_tree(d1, d2)).value
        assert dmax_balanced_bistar(n) == brute_maxla(bistar_tree((n + 1) // 2, n // 2)).value
        for k in range(0, (n - 1) // 2 + 1):
            assert dmax_kquasistar(n, k) == brute_maxla(kquasistar_tree(n, k)).value


def test_cycle_witnesses_up_to_12():
    for n in range(3, 13):
        value, a = dmax_cycle(n)
        assert cost(cycle_graph(n), a) == value == n * n // 2
        assert len(thistles(cycle_graph(n), a)) == n % 2


def test_balanced_bistar_is_the_largest_tree():
    for n in range(2, 11):
        assert max(solve(t).value for t in trees(n)) == dmax_upper_over_trees(n)


# ---------------------------------------------------------------- heuristic

def test_rotation_heuristic_examples(two_hub):
    p = path_tree(4)
    assert cost(p, rotation_heuristic(p, bipartite_maxla(p).witness)) == 7
    a = bipartite_maxla(two_hub).witness
    h = rotation_heuristic(two_hub, a)
    assert cost(two_hub, h) == 24  # reaches the maximum on this tree
    s = star_tree(6)
    assert cost(s, rotation_heuristic(s, bipartite_maxla(s).witness)) == bipartite_maxla(s).value


@given(free_trees(min_n=2, max_n=20))
def test_rotation_heuristic_never_worse(t):
    a = bipartite_maxla(t).witness
    assert cost(t, rotation_heuristic(t, a)) >= cost(t, a)


# ---------------------------------------------------------------- dispatch

def test_solve_dispatch(two_hub):
    assert solve(FreeTree(1, [])).value == 0
    sp = spider_tree([1, 2, 3, 3])
    r = solve(sp)
    assert r.method == "ClosedForm(Spider)" and r.value == bipartite_maxla(sp).value
    assert solve(two_hub).method == "TwoLinear"
    g = FreeTree(10, list(spider_tree([1, 1, 1]).edges) + [(1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)])
    assert solve(g).method == "BnB"
    fast = solve(g, "fast")
    assert not fast.exact and fast.value <= solve(g).value
    with pytest.raises(ValueError):
        solve(g, "sloppy")


def test_spiders_are_bipartite_maximizable():
    for t in trees_upto(10, lo=4):
        if classify(t).tag in ("Spider", "KQuasistar", "Star"):
            from maxla import bnb_solve
            assert bnb_solve(t).value == bipartite_maxla(t).value


def test_fast_versus_exact_at_nine():
    equal = 0
    for t in trees(9):
        f, e = solve(t, "fast").value, solve(t).value
        assert f <= e
        equal += f == e
    assert equal == 47  # every nine-vertex tree is solved by one of the two constructions
