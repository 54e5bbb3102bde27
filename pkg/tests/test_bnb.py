import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import TWO_HUB_EDGES, free_trees, random_tree, trees, trees_upto
from maxla import (
    Arrangement, BnBOptions, BnBState, FreeTree, LinearSet, bipartite_maxla, bnb_solve,
    brute_maxla, cost, dmax_upper_over_trees, level_signature, path_tree, signature_key,
    star_tree, thistles, vertex_levels,
)
from maxla.bnb import PRUNE_REASONS

SYMMETRY_RULES = ("root_orbits", "leaf_order", "equal_level_order", "iso_siblings")


def test_linear_set():
    s = LinearSet(10)
    for x in (3, 7, 1):
        s.add(x)
    assert 7 in s and 2 not in s and len(s) == 3
    s.remove(3)
    assert sorted(s) == [1, 7]
    s.remove(7)
    s.remove(1)
    assert len(s) == 0
    s.add(9)
    assert list(s) == [9]


def _classes(t, witnesses):
    return {signature_key(level_signature(t, a)) for a in witnesses}


def test_matches_oracle_on_small_trees():
    for t in trees_upto(8):
        r = bnb_solve(t)
        o = brute_maxla(t)
        assert r.value == o.value
        assert _classes(t, r.witnesses) == _classes(t, o.witnesses)


def test_seven_vertex_sweep():
    nb = [t for t in trees(7) if bnb_solve(t).value > bipartite_maxla(t).value]
    assert len(nb) == 1


def test_stats_shape():
    r = bnb_solve(FreeTree(7, TWO_HUB_EDGES))
    assert r.method == "BnB"
    assert set(r.stats["prunes"]) == set(PRUNE_REASONS)
    assert r.stats["nodes"] > 0 and r.stats["roots"] == 3  # leaves, hubs, middle
    assert r.stats["bipartite_value"] == 23


# ---------------------------------------------------------------- incremental state

@settings(max_examples=150)
@given(free_trees(min_n=2, max_n=12), st.randoms(use_true_random=False))
def test_incremental_state_matches_recompute(t, rng):
    st_ = BnBState(t)
    free = list(range(t.n))
    for _ in range(4 * t.n):
        if st_.order and (not free or rng.random() < 0.4):
            free.append(st_.remove())
        else:
            u = free.pop(rng.randrange(len(free)))
            st_.add(u)
        assert st_.snapshot() == st_.recompute()
        assert len(st_.E_p) + len(st_.E_ps) + len(st_.E_s) == t.n - 1


# ---------------------------------------------------------------- bound

def _best_completion(t, prefix):
    rest = [v for v in range(t.n) if v not in prefix]
    return max(cost(t, Arrangement(tuple(prefix) + p)) for p in itertools.permutations(rest))


def test_upper_bound_admissible():
    rng = random.Random(7)
    for _ in range(400):
        n = rng.randint(2, 8)
        t = random_tree(n, rng)
        k = rng.randint(1, n - 1)
        prefix = rng.sample(range(n), k)
        state = BnBState(t)
        for u in prefix:
            state.add(u)
        assert state.upper_bound() >= _best_completion(t, prefix)


def test_upper_bound_edge_cases():
    for n in range(2, 12):
        t = random_tree(n, random.Random(n))
        state = BnBState(t)
        # empty prefix: the bound is the largest value any n-vertex tree reaches
        assert state.upper_bound() == dmax_upper_over_trees(n)
        order = list(range(n))
        for u in order:
            state.add(u)
        assert state.upper_bound() == state.D_p == cost(t, Arrangement(tuple(order)))


# ---------------------------------------------------------------- special completion

def test_special_completion_all_leaves():
    t = star_tree(6)
    state = BnBState(t, BnBOptions(no_bipartite=False))
    state.add(0)
    order, value = state.complete_special()
    assert order == [0, 1, 2, 3, 4, 5] and value == 1 + 2 + 3 + 4 + 5


def test_special_completion_path_prefix():
    # a-b-c-d with c, a placed reproduces the bipartite optimum
    t = path_tree(4)
    state = BnBState(t, BnBOptions(no_bipartite=False))
    state.add(2)
    state.add(0)
    order, value = state.complete_special()
    assert value == 7 == cost(t, Arrangement(tuple(order)))


def test_special_completion_bound_signal():
    # level -2 followed by leaves at -1 breaks the level order
    t = FreeTree(5, [(0, 1), (1, 2), (2, 3), (2, 4)])
    state = BnBState(t, BnBOptions(no_bipartite=False))
    for u in (0, 2, 1):
        state.add(u)
    assert state.complete_special() == "special_bound"
    assert _best_completion(t, [0, 2, 1]) < brute_maxla(t).value


def test_special_completion_not_applicable():
    state = BnBState(path_tree(5))
    state.add(0)
    assert state.complete_special() is None


# ---------------------------------------------------------------- rule checks

def test_check_examples():
    t = path_tree(2)
    state = BnBState(t)
    state.add(0)
    assert state.check(1) is None

    t = star_tree(5)
    state = BnBState(t)
    state.add(0)
    assert state.check(2) == "leaf_order"
    assert state.check(1) is None


# ---------------------------------------------------------------- invariances

@pytest.mark.parametrize("rule", BnBOptions.rule_names())
def test_disabling_one_rule_keeps_the_value(rule):
    if rule == "largest_cut":
        pytest.skip("off by default")
    for n in (7, 8, 9):
        for t in trees(n):
            assert bnb_solve(t, BnBOptions(**{rule: False})).value == bnb_solve(t).value


def test_symmetry_rules_keep_classes_and_shrink_the_search():
    rng = random.Random(3)
    for _ in range(6):
        t = random_tree(8, rng)
        full = bnb_solve(t)
        loose = bnb_solve(t, BnBOptions(**{r: False for r in SYMMETRY_RULES}))
        assert full.value == loose.value
        assert _classes(t, full.witnesses) == _classes(t, loose.witnesses)
        assert full.stats["nodes"] <= loose.stats["nodes"]


@pytest.mark.parametrize("n", [9, 10])
def test_node_count_monotone(n):
    for t in trees(n)[::5]:
        a = bnb_solve(t).stats["nodes"]
        b = bnb_solve(t, BnBOptions(**{r: False for r in SYMMETRY_RULES})).stats["nodes"]
        assert a <= b


def test_largest_cut_flag_is_off_by_default():
    assert BnBOptions().largest_cut is False


@settings(max_examples=25, deadline=None)
@given(free_trees(min_n=3, max_n=11), st.randoms(use_true_random=False))
def test_relabeling_invariance(t, rng):
    perm = list(range(t.n))
    rng.shuffle(perm)
    u = FreeTree(t.n, [(perm[a], perm[b]) for a, b in t.edges])
    assert bnb_solve(u).value == bnb_solve(t).value


def test_thread_invariance():
    for t in trees(10)[::7]:
        a = bnb_solve(t, BnBOptions(threads=1))
        b = bnb_solve(t, BnBOptions(threads=4))
        assert a.value == b.value
        assert a.witnesses == b.witnesses


def _path_rule_holds(t, a):
    th = set(thistles(t, a))
    for p in t.branchless_paths:
        inner = [v for v in p.internal if v in th]
        if not p.is_bridge and inner:
            return False
        if p.is_bridge and len(inner) > 1:
            return False
    return True


def test_witness_properties():
    for t in trees_upto(10, lo=3):
        r = bnb_solve(t)
        keys = [signature_key(level_signature(t, a)) for a in r.witnesses]
        assert len(keys) == len(set(keys))
        for a in r.witnesses:
            assert cost(t, a) == r.value
            sig = level_signature(t, a)
            assert all(x >= y for x, y in zip(sig, sig[1:]))
            lev = vertex_levels(t, a)
            assert all(lev[u] != lev[v] for u, v in t.edges)
            assert _path_rule_holds(t, a)
            assert thistles(t, a) or r.value == bipartite_maxla(t).value


def test_witness_cap():
    t = next(t for t in trees(9) if len(bnb_solve(t).witnesses) > 1)
    assert len(bnb_solve(t, BnBOptions(witness_cap=1)).witnesses) == 1
