"""Constructive MaxLA solvers and closed-form values.

``bipartite_maxla`` builds the best arrangement in which one colour class
precedes the other. ``known_thistle_maxla`` builds the best arrangement
whose only thistle is a given vertex; ``one_thistle_maxla`` maximises that
over the potential thistles. ``solve`` dispatches on the tree class.
"""
from __future__ import annotations

from math import comb

from .arrangement import (
    Arrangement, cost, rotate, vertex_levels,
)
from .graph import FreeTree, Graph, bipartition, classify, cycle_graph
from .result import Infeasible, SolveResult

__all__ = [
    "bipartite_maxla", "known_thistle_maxla", "one_thistle_maxla", "two_linear_maxla",
    "rotation_heuristic", "solve",
    "dmax_path", "dmax_cycle", "dmax_bistar", "dmax_balanced_bistar",
    "dmax_kquasistar", "dmax_upper_over_trees",
]


def _counting_sort(items: list[int], key: list[int], lo: int, hi: int, reverse: bool = False) -> list[int]:
    """Stable counting sort of ``items`` by integer ``key[item]`` in [lo, hi]."""
    buckets: list[list[int]] = [[] for _ in range(hi - lo + 1)]
    for x in items:
        buckets[key[x] - lo].append(x)
    if reverse:
        buckets.reverse()
    return [x for b in buckets for x in b]


def bipartite_maxla(g: Graph) -> SolveResult:
    """Maximum bipartite arrangement.

    The colour class of vertex 0 goes first in non-increasing degree order,
    the other class follows in non-decreasing degree order. Ties keep
    vertex-index order.
    """
    if g.n == 1:
        return SolveResult(0, (Arrangement((0,)),), "BipartiteMaxLA", {"nodes": 0})
    bip = bipartition(g)
    v1, v2 = bip.sides
    dmax = g.max_degree
    first = _counting_sort(list(v1), list(g.deg), 0, dmax, reverse=True)
    second = _counting_sort(list(v2), list(g.deg), 0, dmax)
    a = Arrangement(tuple(first + second))
    return SolveResult(cost(g, a), (a,), "BipartiteMaxLA", {"nodes": 0})


def _components_without(t: FreeTree, v: int) -> list[list[int]]:
    """Vertex sets of the components of t - v, one per neighbour of v,
    ordered as ``t.adj[v]``."""
    comp = []
    for root in t.adj[v]:
        seen = {v, root}
        stack = [root]
        members = [root]
        while stack:
            u = stack.pop()
            for w in t.adj[u]:
                if w not in seen:
                    seen.add(w)
                    members.append(w)
                    stack.append(w)
        comp.append(members)
    return comp


def known_thistle_maxla(t: FreeTree, v: int) -> SolveResult:
    """Best arrangement in which ``v`` is the only thistle.

    Each component of t - v is arranged bipartitely and sits either left of
    v with v's neighbour at level +d, or mirrored to the right with the
    neighbour at level -d. Every side assignment that keeps v a thistle and
    lets the merged level sequence be realised is scored; the scores only
    depend on the multiset of levels, so the arrangement is the stable
    level sort of all vertices.
    """
    d = t.deg[v]
    if d < 2:
        raise Infeasible(f"vertex {v} has degree {d}; a thistle needs degree >= 2")
    color = bipartition(t).color
    nbrs = t.adj[v]
    comps = _components_without(t, v)
    # sign[x] = +1 when x is coloured like the neighbour in its component
    sign = [0] * t.n
    comp_of = [-1] * t.n
    for i, (root, members) in enumerate(zip(nbrs, comps)):
        for x in members:
            comp_of[x] = i
            sign[x] = 1 if color[x] == color[root] else -1
    deg = t.deg
    dmax = t.max_degree
    best_value = -1
    best = None
    tried = 0
    for mask in range(1 << d):
        ones = bin(mask).count("1")
        lv = ones - (d - ones)
        if abs(lv) >= d:
            continue
        ok = True
        for i, root in enumerate(nbrs):
            if (mask >> i) & 1:
                if -deg[root] >= lv:
                    ok = False
                    break
            elif deg[root] <= lv:
                ok = False
                break
        if not ok:
            continue
        tried += 1
        level = [0] * t.n
        for x in range(t.n):
            if x == v:
                level[x] = lv
            else:
                flip = -1 if (mask >> comp_of[x]) & 1 else 1
                level[x] = flip * sign[x] * deg[x]
        order = _counting_sort(list(range(t.n)), level, -dmax, dmax, reverse=True)
        value = sum((t.n - p) * level[x] for p, x in enumerate(order, 1))
        if value > best_value:
            best_value = value
            best = Arrangement(tuple(order))
    if best is None:
        raise Infeasible(f"no side assignment makes {v} the only thistle")
    return SolveResult(best_value, (best,), "OneThistle", {"nodes": tried, "thistle": v})


def one_thistle_maxla(t: FreeTree, one_per_bridge: bool = True) -> SolveResult:
    """Best arrangement with exactly one thistle, over the potential thistles.

    With ``one_per_bridge`` only the lowest internal vertex of each bridge
    path is tried; any internal vertex of a bridge gives the same value.
    """
    pt = t.potential_thistles
    cands = pt.designated if one_per_bridge else pt.candidates
    best = None
    nodes = 0
    for v in cands:
        try:
            r = known_thistle_maxla(t, v)
        except Infeasible:
            continue
        nodes += r.stats["nodes"]
        if best is None or r.value > best.value:
            best = r
    if best is None:
        raise Infeasible("no potential thistle admits a 1-thistle arrangement")
    return SolveResult(best.value, best.witnesses, "OneThistle",
                       {"nodes": nodes, "thistle": best.stats["thistle"], "candidates": len(cands)})


def two_linear_maxla(t: FreeTree) -> SolveResult:
    """Exact MaxLA of a tree with exactly two vertices of degree >= 3.

    The only vertex that can be a thistle in a maximum arrangement is an
    internal vertex of the bridge, and at most one of them is. The answer
    is the better of the bipartite optimum and the 1-thistle optimum at
    the bridge's lowest internal vertex.
    """
    hubs = [v for v in range(t.n) if t.deg[v] >= 3]
    if len(hubs) != 2:
        raise ValueError(f"expected exactly two vertices of degree >= 3, found {len(hubs)}")
    bip = bipartite_maxla(t)
    bridge = t.potential_thistles.bridges[0]
    if not bridge.internal:
        return SolveResult(bip.value, bip.witnesses, "TwoLinear", {"nodes": 0, "bridge": 1})
    try:
        one = known_thistle_maxla(t, bridge.designated)
    except Infeasible:
        return SolveResult(bip.value, bip.witnesses, "TwoLinear", {"nodes": 0, "bridge": bridge.length})
    stats = {"nodes": one.stats["nodes"], "bridge": bridge.length}
    if one.value > bip.value:
        return SolveResult(one.value, one.witnesses, "TwoLinear", stats)
    if one.value == bip.value:
        return SolveResult(bip.value, bip.witnesses + one.witnesses, "TwoLinear", stats)
    return SolveResult(bip.value, bip.witnesses, "TwoLinear", stats)


def rotation_heuristic(t: Graph, a: Arrangement) -> Arrangement:
    """Rotate n times; after each rotation also try the arrangement sorted by
    level. Returns the best of the 2n + 1 candidates (first one on ties)."""
    n = t.n
    best, best_cost = a, cost(t, a)
    cur = a
    dmax = t.max_degree
    for _ in range(n):
        cur = rotate(cur)
        c = cost(t, cur)
        if c > best_cost:
            best, best_cost = cur, c
        lev = list(vertex_levels(t, cur))
        resorted = Arrangement(tuple(_counting_sort(sorted(range(n)), lev, -dmax, dmax, reverse=True)))
        c = cost(t, resorted)
        if c > best_cost:
            best, best_cost = resorted, c
    return best


# ---------------------------------------------------------------- closed forms

def dmax_path(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return 0
    return n * n // 2 - 1


def dmax_cycle(n: int) -> tuple[int, Arrangement]:
    """Maximum cost of the n-cycle 0-1-...-(n-1)-0 and a witness.

    Even n: bipartite arrangement, evens before odds. Odd n: vertex 0 is a
    central thistle with the odd vertices to its left and the even ones to
    its right.
    """
    if n < 3:
        raise ValueError("a cycle needs n >= 3")
    if n % 2 == 0:
        order = list(range(0, n, 2)) + list(range(1, n, 2))
    else:
        order = list(range(1, n, 2)) + [0] + list(range(2, n, 2))
    a = Arrangement(tuple(order))
    value = n * n // 2
    assert cost(cycle_graph(n), a) == value
    return value, a


def dmax_bistar(d1: int, d2: int) -> int:
    if d1 < 1 or d2 < 1:
        raise ValueError("hub degrees must be positive")
    n = d1 + d2
    return d1 * d2 + comb(n - 1, 2)


def dmax_balanced_bistar(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return (3 * (n - 1) ** 2 + 1 - n % 2) // 4


def dmax_kquasistar(n: int, k: int) -> int:
    if k < 0 or n - 1 - 2 * k < 0:
        raise ValueError(f"no {k}-quasistar on {n} vertices")
    return (n - 1 - k) * (n + 3 * k) // 2


def dmax_upper_over_trees(n: int) -> int:
    """Largest MaxLA value of any n-vertex tree."""
    return dmax_balanced_bistar(n)


# ---------------------------------------------------------------- dispatch

_BIPARTITE_CLASSES = {"Path", "Star", "Bistar", "BalancedBistar", "KQuasistar", "Spider"}


def solve(t: FreeTree, mode: str = "exact", **bnb_options) -> SolveResult:
    """MaxLA of a free tree.

    ``exact`` uses the class-specific solver when one applies and the
    branch and bound otherwise. ``fast`` returns the better of the
    bipartite and 1-thistle optima and marks it as a lower bound unless the
    class guarantees it is optimal.
    """
    if mode not in ("exact", "fast"):
        raise ValueError(f"unknown mode {mode!r}")
    tc = classify(t)
    if tc.tag in _BIPARTITE_CLASSES:
        r = bipartite_maxla(t)
        return SolveResult(r.value, r.witnesses, f"ClosedForm({tc.tag})", r.stats)
    if tc.tag == "TwoLinear":
        return two_linear_maxla(t)
    if mode == "exact":
        from .bnb import bnb_solve, BnBOptions
        return bnb_solve(t, BnBOptions(**bnb_options))
    bip = bipartite_maxla(t)
    try:
        one = one_thistle_maxla(t)
    except Infeasible:
        one = None
    if one is not None and one.value > bip.value:
        return SolveResult(one.value, one.witnesses, "OneThistle", one.stats, exact=False)
    return SolveResult(bip.value, bip.witnesses, "BipartiteMaxLA", bip.stats, exact=False)
