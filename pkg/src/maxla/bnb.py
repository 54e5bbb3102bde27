"""Exact MaxLA of free trees by branch and bound.

The search extends a prefix of the arrangement one position at a time.
A vertex u placed at position r gets level d(u) - 2 d_a(u), where d_a(u)
counts its already placed neighbours, so levels are final on placement.
Maximum arrangements have non-increasing levels and no edge between equal
levels, which prunes most branches. The remaining cost of a prefix is
bounded from above by anchoring the half-placed edges at the next free
position and at the far end of the line, plus the best possible cost of
the still unplaced edges.

The search starts from the maximum bipartite arrangement and only accepts
non-bipartite completions, so it returns every level-isomorphism class of
maximum arrangement: the bipartite one (if it is still maximum) plus all
non-bipartite ones.
"""
from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

from .arrangement import Arrangement, signature_key
from .graph import FreeTree, sibling_classes
from .result import SolveResult
from .solvers import bipartite_maxla

__all__ = ["LinearSet", "BnBOptions", "BnBState", "bnb_solve", "PRUNE_REASONS"]


class LinearSet:
    """Set of integers below ``capacity`` with O(1) add, remove and lookup."""

    __slots__ = ("elements", "position")

    def __init__(self, capacity: int):
        self.elements: list[int] = []
        self.position = [-1] * capacity

    def add(self, x: int) -> None:
        if self.position[x] >= 0:
            raise KeyError(f"{x} already present")
        self.position[x] = len(self.elements)
        self.elements.append(x)

    def remove(self, x: int) -> None:
        i = self.position[x]
        if i < 0:
            raise KeyError(f"{x} not present")
        last = self.elements.pop()
        if last != x:
            self.elements[i] = last
            self.position[last] = i
        self.position[x] = -1

    def __contains__(self, x: int) -> bool:
        return self.position[x] >= 0

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass
class BnBOptions:
    """Switches for every pruning and symmetry rule, plus execution knobs.

    ``largest_cut`` enables a check that the largest cut reaches
    (n^2 - 1) / 2. For trees that bound cannot be met, so the flag is off by
    default and exists only for experiments.
    """

    non_increasing: bool = True
    adjacent_levels: bool = True
    neighbor_levels: bool = True
    path_lemma: bool = True
    no_bipartite: bool = True
    root_orbits: bool = True
    leaf_order: bool = True
    equal_level_order: bool = True
    iso_siblings: bool = True
    upper_bound: bool = True
    special_cases: bool = True
    largest_cut: bool = False
    threads: int = 1
    witness_cap: int | None = None

    @classmethod
    def rule_names(cls) -> list[str]:
        return [f.name for f in fields(cls) if f.type in ("bool", bool)]


PRUNE_REASONS = (
    "non_increasing", "adjacent_levels", "neighbor_levels", "path_lemma", "leaf_order",
    "equal_level_order", "iso_siblings", "upper_bound", "special_bound", "bipartite",
    "largest_cut",
)
_R = {name: i for i, name in enumerate(PRUNE_REASONS)}


class _Best:
    """Monotone shared maximum."""

    def __init__(self, value: int):
        self.value = value
        self.lock = threading.Lock()

    def offer(self, value: int) -> None:
        if value > self.value:
            with self.lock:
                if value > self.value:
                    self.value = value


class BnBState:
    """Prefix of an arrangement plus the incremental data the bounds need."""

    def __init__(self, t: FreeTree, options: BnBOptions | None = None, best: _Best | None = None):
        self.t = t
        self.opts = options or BnBOptions()
        n = self.n = t.n
        self.adj = t.adj
        self.deg = t.deg
        self.color = t.bipartition.color
        self.pos = [0] * n
        self.order: list[int] = []
        self.lvl = [0] * n
        self.da = [0] * n
        self.E_p = LinearSet(n * n)
        self.E_ps = LinearSet(n * n)
        self.E_s = LinearSet(n * n)
        for u, v in t.edges:
            self.E_s.add(self.key(u, v))
        self.border = LinearSet(n)
        self.D_p = 0
        self.S_ps = 0  # sum of positions of the placed endpoints of E_ps edges
        self.color_count = [0, 0]
        self.n_thistles = 0
        # path rule bookkeeping: -2 leaf-path internal, >=0 bridge id, -1 other
        self.path_kind = [-1] * n
        bridges = 0
        for p in t.branchless_paths:
            for x in p.internal:
                self.path_kind[x] = bridges if p.is_bridge else -2
            if p.is_bridge:
                bridges += 1
        self.bridge_thistles = [0] * bridges
        self.lower_leaves = [
            tuple(y for y in t.leaves_of[t.adj[u][0]] if y < u) if t.deg[u] == 1 else ()
            for u in range(n)
        ]
        self.siblings: tuple[tuple[int, ...], ...] = ((),) * n
        self.best = best or _Best(-1)
        self.found: dict[tuple[int, ...], Arrangement] = {}
        self.found_value = -1
        self.nodes = 0
        self.prunes = [0] * len(PRUNE_REASONS)

    def key(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return v * self.n + u

    @property
    def r(self) -> int:
        """Next free position."""
        return len(self.order) + 1

    @property
    def D_ps_right(self) -> int:
        return len(self.E_ps) * self.r - self.S_ps

    # ------------------------------------------------------------ add / remove

    def add(self, u: int) -> None:
        pos, da, n = self.pos, self.da, self.n
        r = len(self.order) + 1
        pos[u] = r
        self.order.append(u)
        self.lvl[u] = self.deg[u] - 2 * da[u]
        for w in self.adj[u]:
            k = w * n + u if u < w else u * n + w
            if pos[w]:
                self.E_ps.remove(k)
                self.E_p.add(k)
                self.D_p += r - pos[w]
                self.S_ps -= pos[w]
            else:
                self.E_s.remove(k)
                self.E_ps.add(k)
                self.S_ps += r
                if da[w] == 0:
                    self.border.add(w)
            da[w] += 1
        if u in self.border:
            self.border.remove(u)
        if 0 < da[u] < self.deg[u]:
            self.n_thistles += 1
            b = self.path_kind[u]
            if b >= 0:
                self.bridge_thistles[b] += 1
        self.color_count[self.color[u]] += 1

    def remove(self) -> int:
        pos, da, n = self.pos, self.da, self.n
        u = self.order.pop()
        r = pos[u]
        self.color_count[self.color[u]] -= 1
        if 0 < da[u] < self.deg[u]:
            self.n_thistles -= 1
            b = self.path_kind[u]
            if b >= 0:
                self.bridge_thistles[b] -= 1
        if da[u] > 0:
            self.border.add(u)
        for w in self.adj[u]:
            k = w * n + u if u < w else u * n + w
            da[w] -= 1
            if pos[w]:
                self.E_p.remove(k)
                self.E_ps.add(k)
                self.D_p -= r - pos[w]
                self.S_ps += pos[w]
            else:
                self.E_ps.remove(k)
                self.E_s.add(k)
                self.S_ps -= r
                if da[w] == 0:
                    self.border.remove(w)
        pos[u] = 0
        return u

    def recompute(self) -> dict:
        """From-scratch values of the incremental fields, for testing."""
        pos, n = self.pos, self.n
        r = self.r
        e_p, e_ps, e_s = set(), set(), set()
        D_p = D_ps = 0
        for u, v in self.t.edges:
            k = v * n + u
            if pos[u] and pos[v]:
                e_p.add(k)
                D_p += abs(pos[u] - pos[v])
            elif pos[u] or pos[v]:
                e_ps.add(k)
                D_ps += r - (pos[u] or pos[v])
            else:
                e_s.add(k)
        border = {w for w in range(n) if not pos[w] and any(pos[x] for x in self.adj[w])}
        return {"E_p": e_p, "E_ps": e_ps, "E_s": e_s, "D_p": D_p, "D_ps_right": D_ps, "border": border}

    def snapshot(self) -> dict:
        return {"E_p": set(self.E_p), "E_ps": set(self.E_ps), "E_s": set(self.E_s),
                "D_p": self.D_p, "D_ps_right": self.D_ps_right, "border": set(self.border)}

    # ------------------------------------------------------------ rules

    def check(self, u: int) -> str | None:
        """Reason for rejecting u at the next position, or None to accept."""
        o = self.opts
        pos, lvl = self.pos, self.lvl
        lev = self.deg[u] - 2 * self.da[u]
        if self.order:
            prev = self.order[-1]
            pl = lvl[prev]
            if o.non_increasing and lev > pl:
                return "non_increasing"
            if o.equal_level_order and lev == pl and u < prev:
                return "equal_level_order"
        if o.leaf_order:
            for y in self.lower_leaves[u]:
                if not pos[y]:
                    return "leaf_order"
        if o.iso_siblings and self.order:
            for y in self.siblings[u]:
                if not pos[y]:
                    return "iso_siblings"
        if o.adjacent_levels or o.neighbor_levels:
            deg = self.deg
            for w in self.adj[u]:
                if pos[w]:
                    if o.adjacent_levels and lvl[w] == lev:
                        return "adjacent_levels"
                elif o.neighbor_levels and -deg[w] >= lev:
                    return "neighbor_levels"
        if o.path_lemma and 0 < self.da[u] < self.deg[u]:
            kind = self.path_kind[u]
            if kind == -2:
                return "path_lemma"
            if kind >= 0 and self.bridge_thistles[kind] > 0:
                return "path_lemma"
        return None

    def upper_bound(self) -> int:
        n = self.n
        r = len(self.order) + 1
        n_s = n - r + 1
        da = self.da
        tail = sorted(da[w] for w in self.border)
        k = len(tail)
        left = 0
        for i, d in enumerate(tail, 1):
            left += (n - k + i - r) * d
        m_s = len(self.E_s)
        d_s = (m_s * (4 * (n_s - 1) - m_s) + (m_s % 2)) // 4 if m_s else 0
        return self.D_p + len(self.E_ps) * r - self.S_ps + left + d_s

    def complete_special(self):
        """Forced completion when no edge lies entirely in the suffix.

        Returns ``None`` when not applicable, a prune reason string when no
        completion can be maximum, or the completed vertex order and cost.
        """
        if len(self.E_s) or not self.order or len(self.order) == self.n:
            return None
        o = self.opts
        if o.no_bipartite and self.n_thistles == 0:
            return "bipartite"
        deg, pos = self.deg, self.pos
        suffix = sorted((w for w in range(self.n) if not pos[w]), key=lambda w: (deg[w], w))
        last = self.order[-1]
        first = suffix[0]
        if o.non_increasing and self.lvl[last] < -deg[first]:
            return "special_bound"
        if o.equal_level_order and self.lvl[last] == -deg[first] and first < last:
            return "special_bound"
        if o.adjacent_levels:
            for w in suffix:
                for x in self.adj[w]:
                    if self.lvl[x] == -deg[w]:
                        return "special_bound"
        r = len(self.order) + 1
        value = self.D_p - self.S_ps + sum(deg[w] * (r + i) for i, w in enumerate(suffix))
        return self.order + suffix, value

    # ------------------------------------------------------------ search

    def _record(self, order: list[int], value: int) -> None:
        if value < self.best.value:
            return
        if self.opts.largest_cut:
            n = self.n
            c = cmax = 0
            lev = self._levels_of(order)
            for l in lev[:-1]:
                c += l
                cmax = max(cmax, c)
            if 2 * cmax < n * n - 1:
                self.prunes[_R["largest_cut"]] += 1
                return
        if value > self.found_value:
            self.found_value = value
            self.found = {}
        if value == self.found_value:
            key = signature_key(self._levels_of(order))
            if key not in self.found:
                self.found[key] = Arrangement(tuple(order))
        self.best.offer(value)

    def _levels_of(self, order: list[int]) -> list[int]:
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        out = []
        for v in order:
            out.append(sum(1 if pos[w] > pos[v] else -1 for w in self.adj[v]))
        return out

    def search_from(self, root: int) -> None:
        if self.opts.iso_siblings:
            self.siblings = sibling_classes(self.t, root)
        self.nodes += 1
        self.add(root)
        self._dfs()
        self.remove()

    def _dfs(self) -> None:
        o = self.opts
        n = self.n
        prunes = self.prunes
        if len(self.order) == n:
            if o.no_bipartite and self.n_thistles == 0:
                prunes[_R["bipartite"]] += 1
                return
            self._record(list(self.order), self.D_p)
            return
        if o.upper_bound and self.upper_bound() < self.best.value:
            prunes[_R["upper_bound"]] += 1
            return
        if o.special_cases:
            res = self.complete_special()
            if res is not None:
                if isinstance(res, str):
                    prunes[_R[res]] += 1
                else:
                    self._record(*res)
                return
        pos = self.pos
        for u in range(n):
            if pos[u]:
                continue
            why = self.check(u)
            if why is not None:
                prunes[_R[why]] += 1
                continue
            self.nodes += 1
            self.add(u)
            self._dfs()
            self.remove()


def bnb_solve(t: FreeTree, options: BnBOptions | None = None) -> SolveResult:
    """Maximum linear arrangement of ``t`` with every maximum class as a witness."""
    opts = options or BnBOptions()
    bip = bipartite_maxla(t)
    stats = {"nodes": 0, "prunes": dict.fromkeys(PRUNE_REASONS, 0), "roots": 0}
    if t.n <= 2:
        return SolveResult(bip.value, bip.witnesses, "BnB", stats)
    best = _Best(bip.value)
    roots = t.orbits.representatives if opts.root_orbits else tuple(range(t.n))
    stats["roots"] = len(roots)

    def run(root: int) -> BnBState:
        st = BnBState(t, opts, best)
        st.search_from(root)
        return st

    if opts.threads > 1 and len(roots) > 1:
        with ThreadPoolExecutor(max_workers=opts.threads) as pool:
            states = list(pool.map(run, roots))
    else:
        states = [run(x) for x in roots]

    value = max([bip.value] + [s.found_value for s in states])
    found: dict[tuple[int, ...], Arrangement] = {}
    if bip.value == value:
        a = bip.witness
        found[signature_key(_sig(t, a))] = a
    for s in states:
        stats["nodes"] += s.nodes
        for name, c in zip(PRUNE_REASONS, s.prunes):
            stats["prunes"][name] += c
        if s.found_value == value:
            for k, a in s.found.items():
                found.setdefault(k, a)
    witnesses = tuple(found.values())
    if opts.witness_cap is not None:
        witnesses = witnesses[:opts.witness_cap]
    stats["bipartite_value"] = bip.value
    return SolveResult(value, witnesses, "BnB", stats)


def _sig(t: FreeTree, a: Arrangement) -> list[int]:
    pos = a.pos
    return [sum(1 if pos[w] > pos[v] else -1 for w in t.adj[v]) for v in a.order]
