"""Exhaustive ground truth for small graphs.

Every arrangement of the graph is evaluated with numpy, one row per
permutation. Nothing here prunes: the module is the reference the other
solvers are tested against.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arrangement import Arrangement, signature_key
from .graph import FreeTree, Graph
from .result import Infeasible, SolveResult

__all__ = [
    "permutation_table", "brute_maxla", "brute_restricted",
    "MaximizabilityClass", "classify_maximizability", "arrangement_table",
]

N_CAP = 10


@lru_cache(maxsize=4)
def _permutations(n: int) -> np.ndarray:
    # rows are all permutations of 0..n-1, built by inserting the largest value
    table = np.zeros((1, 1), dtype=np.int8)
    for k in range(2, n + 1):
        m = table.shape[0]
        out = np.empty((m * k, k), dtype=np.int8)
        for j in range(k):
            block = out[j * m:(j + 1) * m]
            block[:, :j] = table[:, :j]
            block[:, j] = k - 1
            block[:, j + 1:] = table[:, j:]
        table = out
    table.flags.writeable = False
    return table


def permutation_table(n: int, halve_mirrors: bool = True) -> np.ndarray:
    """All arrangements of n vertices as 0-based position rows.

    Row ``r`` gives ``pos[v]`` for every vertex v. With ``halve_mirrors``
    only rows whose first vertex has a lower index than their last vertex
    are kept, one of each mirror pair.
    """
    table = _permutations(n)
    if not halve_mirrors or n < 2:
        return table
    first = np.argmax(table == 0, axis=1)
    last = np.argmax(table == n - 1, axis=1)
    return table[first < last]


@dataclass
class ArrangementTable:
    pos: np.ndarray       # (rows, n) 0-based positions
    cost: np.ndarray      # (rows,)
    levels: np.ndarray    # (rows, n) level of each vertex
    thistles: np.ndarray  # (rows,) thistle count


def arrangement_table(g: Graph, n_cap: int = N_CAP, halve_mirrors: bool = True) -> ArrangementTable:
    if g.n > n_cap:
        raise ValueError(f"brute force limited to n <= {n_cap}, got n = {g.n}")
    pos = permutation_table(g.n, halve_mirrors)
    rows = pos.shape[0]
    cost = np.zeros(rows, dtype=np.int32)
    levels = np.zeros((rows, g.n), dtype=np.int8)
    for u, v in g.edges:
        diff = pos[:, u].astype(np.int16) - pos[:, v]
        cost += np.abs(diff)
        s = np.sign(diff).astype(np.int8)
        levels[:, u] -= s
        levels[:, v] += s
    deg = np.asarray(g.deg, dtype=np.int8)
    thistles = (np.abs(levels) < deg).sum(axis=1)
    return ArrangementTable(pos, cost, levels, thistles)


def _witnesses(tab: ArrangementTable, rows: np.ndarray) -> tuple[Arrangement, ...]:
    """One arrangement per level-isomorphism class among ``rows``."""
    pos = tab.pos[rows]
    order = np.argsort(pos, axis=1)
    sig = np.take_along_axis(tab.levels[rows], order, axis=1)
    seen = {}
    for r in range(len(rows)):
        key = signature_key(sig[r].tolist())
        if key not in seen:
            seen[key] = Arrangement(tuple(order[r].tolist()))
    return tuple(seen[k] for k in sorted(seen))


def brute_maxla(g: Graph, n_cap: int = N_CAP, halve_mirrors: bool = True) -> SolveResult:
    """Exact MaxLA by full enumeration; witnesses are all maxima up to
    level-isomorphism."""
    tab = arrangement_table(g, n_cap, halve_mirrors)
    best = int(tab.cost.max())
    rows = np.flatnonzero(tab.cost == best)
    return SolveResult(best, _witnesses(tab, rows), "Oracle", {"arrangements": int(len(tab.cost))})


def brute_restricted(g: Graph, predicate: str = "bipartite", k: int | None = None,
                     n_cap: int = N_CAP) -> SolveResult:
    """Maximum over arrangements with a prescribed number of thistles.

    ``predicate`` is ``"bipartite"`` (no thistles) or ``"thistles"`` with
    ``k`` the exact thistle count.
    """
    if predicate == "bipartite":
        k = 0
    elif predicate != "thistles" or k is None:
        raise ValueError("predicate must be 'bipartite' or 'thistles' with k given")
    tab = arrangement_table(g, n_cap)
    mask = tab.thistles == k
    if not mask.any():
        raise Infeasible(f"no arrangement with exactly {k} thistles")
    best = int(tab.cost[mask].max())
    rows = np.flatnonzero(mask & (tab.cost == best))
    return SolveResult(best, _witnesses(tab, rows), "Oracle")


@dataclass(frozen=True)
class MaximizabilityClass:
    tag: str  # BipOnly, Both or NonBipOnly
    min_thistles_over_maxima: int
    one_thistle_solves: bool
    value: int
    bipartite_value: int


def classify_maximizability(t: FreeTree, n_cap: int = N_CAP) -> MaximizabilityClass:
    tab = arrangement_table(t, n_cap)
    best = int(tab.cost.max())
    top = tab.thistles[tab.cost == best]
    bip_mask = tab.thistles == 0
    bip_value = int(tab.cost[bip_mask].max())
    has_bip = bool((top == 0).any())
    has_nonbip = bool((top > 0).any())
    tag = "Both" if has_bip and has_nonbip else ("BipOnly" if has_bip else "NonBipOnly")
    return MaximizabilityClass(tag, int(top.min()), bool((top == 1).any()), best, bip_value)
