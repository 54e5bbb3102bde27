import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import TWO_HUB_EDGES, free_trees, trees
from maxla import (
    FreeTree, Graph, GraphError, GraphParseError, NotBipartite, bipartition,
    bistar_tree, branchless_paths, canonical_code, classify, cycle_graph, format_graph,
    kquasistar_tree, parse_graph, path_tree, potential_thistles, sibling_classes, spider_tree,
    star_tree, tree_from_parents, two_linear_tree, vertex_orbits,
)
from maxla.graph import hubiness


def test_parse_small_path():
    g = parse_graph("0 1\n1 2")
    assert isinstance(g, FreeTree)
    assert g.n == 3 and g.edges == ((0, 1), (1, 2))


@pytest.mark.parametrize("text, line", [
    ("0 1\n0 1", 2),
    ("0 1\n1 0", 2),
    ("0 0", 1),
    ("0 1\n1 x", 2),
    ("n 3\n0 1\n1 3", 3),
    ("0 1\n1 2 3", 2),
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(GraphParseError) as exc:
        parse_graph(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_parse_header_and_labels_round_trip():
    text = "n 4\n# label 0 a\n# label 1 b\n# label 2 c\n# label 3 d\n0 1\n1 2\n2 3\n"
    g = parse_graph(text)
    assert g.labels == ("a", "b", "c", "d")
    assert format_graph(g) == text
    assert parse_graph(format_graph(g)) == g


def test_parse_single_vertex():
    g = parse_graph("n 1\n")
    assert isinstance(g, FreeTree) and g.n == 1 and g.m == 0


def test_parse_non_tree_gives_graph():
    g = parse_graph("0 1\n1 2\n2 0")
    assert not isinstance(g, FreeTree) and g.m == 3


def test_eight_vertex_caterpillar_degrees():
    # a-b, a-c, a-d, d-e, e-f, e-g, e-h
    text = "0 1\n0 2\n0 3\n3 4\n4 5\n4 6\n4 7\n"
    t = parse_graph(text)
    assert isinstance(t, FreeTree)
    assert sum(t.deg) == 2 * (t.n - 1)
    assert sorted(t.deg, reverse=True) == [4, 3, 2, 1, 1, 1, 1, 1]


def test_free_tree_validation():
    with pytest.raises(GraphError):
        FreeTree(4, [(0, 1), (2, 3)])
    with pytest.raises(GraphError):
        FreeTree(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 2)])


def test_bipartition_sizes():
    assert bipartition(path_tree(4)).sides == ((0, 2), (1, 3))
    b = bipartition(star_tree(5))
    assert (b.n1, b.n2) == (1, 4)
    with pytest.raises(NotBipartite):
        bipartition(cycle_graph(5))


@given(free_trees(max_n=15))
def test_bipartition_is_proper(t):
    b = bipartition(t)
    assert b.n1 + b.n2 == t.n
    assert all(b.color[u] != b.color[v] for u, v in t.edges)


def test_branchless_paths_examples(two_hub):
    (p,) = branchless_paths(path_tree(5))
    assert p.length == 4 and not p.is_bridge and p.endpoint_degrees == (1, 1)

    ps = branchless_paths(star_tree(5))
    assert len(ps) == 4 and all(p.length == 1 and not p.is_bridge for p in ps)

    ps = branchless_paths(two_hub)
    assert len(ps) == 5
    bridges = [p for p in ps if p.is_bridge]
    assert [p.vertices for p in bridges] == [(2, 3, 4)]
    assert bridges[0].designated == 3

    assert branchless_paths(FreeTree(1, [])) == []


@given(free_trees(min_n=2, max_n=15))
def test_branchless_paths_cover_degree_two_vertices(t):
    ps = branchless_paths(t)
    internal = [v for p in ps for v in p.internal]
    assert sorted(internal) == [v for v in range(t.n) if t.deg[v] == 2]
    covered = set()
    for p in ps:
        for a, b in zip(p.vertices, p.vertices[1:]):
            assert t.has_edge(a, b)
            covered.add((min(a, b), max(a, b)))
        assert all(t.deg[x] != 2 for x in (p.vertices[0], p.vertices[-1]))
        assert p.is_bridge == (min(p.endpoint_degrees) >= 3)
    assert covered == set(t.edges)


def test_potential_thistles_examples():
    pt = potential_thistles(path_tree(6))
    assert pt.count == 0 and pt.candidates == ()
    assert potential_thistles(spider_tree([1, 2, 3])).count == 1
    # bridge with an internal vertex
    t = two_linear_tree(2, 2, 2)
    assert potential_thistles(t).count == 3
    assert potential_thistles(t).structural_count == 3
    # adjacent hubs: the bridge has no vertex that could be a thistle
    b = bistar_tree(3, 3)
    assert potential_thistles(b).structural_count == 3
    assert potential_thistles(b).count == 2


def test_candidates_include_every_internal_bridge_vertex():
    t = two_linear_tree(2, 2, 4)
    pt = potential_thistles(t)
    assert pt.candidates == (0, 1, 2, 3, 4)
    assert pt.designated == (0, 1, 4)


@pytest.mark.parametrize("n", range(4, 13))
def test_structural_count_on_k_linear_trees(n):
    for t in trees(n):
        c = classify(t)
        k = sum(1 for d in t.deg if d >= 3)
        if k and c.tag != "Generic":
            assert potential_thistles(t).structural_count == 2 * k - 1


def test_classify_examples(two_hub):
    assert str(classify(path_tree(6))) == "Path(6)"
    assert str(classify(star_tree(6))) == "Star(6)"
    assert classify(kquasistar_tree(8, 2)).tag == "KQuasistar"
    assert classify(kquasistar_tree(8, 2)).params == (2, 3)
    assert str(classify(FreeTree(7, TWO_HUB_EDGES))) == "TwoLinear(2)"
    assert str(classify(bistar_tree(3, 3))) == "BalancedBistar(3, 3)"
    assert str(classify(bistar_tree(5, 2))) == "Bistar(5, 2)"
    assert str(classify(spider_tree([1, 2, 3]))) == "Spider(3)"
    # three hubs on a line
    t = tree_from_parents([0, 0, 0, 3, 4, 4, 6, 6])
    assert classify(t).tag == "KLinear" and classify(t).params == (3,)
    # three hubs around a centre: not on one path
    t = spider_tree([1, 1, 1])
    t = FreeTree(10, list(t.edges) + [(1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)])
    assert classify(t).tag == "Generic"


@given(free_trees(max_n=12))
def test_classify_path_iff_max_degree_two(t):
    assert (classify(t).tag == "Path") == (t.max_degree <= 2)


@settings(max_examples=50)
@given(free_trees(max_n=12), st.randoms(use_true_random=False))
def test_classify_stable_under_relabeling(t, rng):
    perm = list(range(t.n))
    rng.shuffle(perm)
    u = FreeTree(t.n, [(perm[a], perm[b]) for a, b in t.edges])
    assert classify(u) == classify(t)
    assert canonical_code(u) == canonical_code(t)


def _brute_orbits(t):
    autos = []
    edges = set(t.edges)
    for p in itertools.permutations(range(t.n)):
        if all(tuple(sorted((p[a], p[b]))) in edges for a, b in t.edges):
            autos.append(p)
    return {frozenset(p[v] for p in autos) for v in range(t.n)}


def test_orbit_examples():
    o = vertex_orbits(path_tree(7))
    assert o.count == 4
    assert sorted(sum(1 for x in o.orbit_id if x == r) for r in o.representatives) == [1, 2, 2, 2]
    assert vertex_orbits(star_tree(7)).count == 2


@pytest.mark.parametrize("n", range(1, 9))
def test_orbits_match_brute_force_automorphisms(n):
    for t in trees(n):
        o = vertex_orbits(t)
        got = {frozenset(v for v in range(t.n) if o.orbit_id[v] == r) for r in o.representatives}
        assert got == _brute_orbits(t)
        assert all(o.orbit_id[r] == r for r in o.representatives)


def test_sibling_classes():
    t = star_tree(5)
    s = sibling_classes(t, 0)
    assert s == ((), (), (1,), (1, 2), (1, 2, 3))
    # leaves of the same hub are siblings, other children are not
    t = bistar_tree(3, 2)
    s = sibling_classes(t, 0)
    assert s[1] == () and s[3] == (2,)


def test_canonical_codes_distinct_over_enumeration():
    for n in range(1, 11):
        codes = {canonical_code(t) for t in trees(n)}
        assert len(codes) == len(trees(n))


def test_hubiness_range():
    assert hubiness(path_tree(8)) == pytest.approx(0.0)
    assert hubiness(star_tree(8)) == pytest.approx(1.0)


def test_cycle_graph():
    c = cycle_graph(5)
    assert c.m == 5 and not c.is_tree() and all(d == 2 for d in c.deg)
    with pytest.raises(GraphError):
        cycle_graph(2)


@given(free_trees(max_n=15))
def test_degree_sum(t):
    assert sum(t.deg) == 2 * (t.n - 1)
    assert all(len(t.adj[u]) == t.deg[u] for u in range(t.n))
