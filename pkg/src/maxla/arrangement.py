"""Linear arrangements and the quantities derived from them.

Positions are 1-based. An :class:`Arrangement` stores ``order``, the vertex
at each position; ``pos`` is its inverse. Level signatures and cut
signatures are plain tuples indexed by position (``sig[p - 1]``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .graph import Bipartition, Graph

__all__ = [
    "Arrangement", "SwapDelta",
    "cost", "cut_signature", "level_signature", "vertex_levels", "thistles", "is_bipartite_arrangement",
    "mirror", "rotate", "swap", "swap_deltas", "signature_key",
    "level_isomorphic", "edge_isomorphic", "cost_from_levels",
    "parse_arrangement", "format_arrangement",
]


@dataclass(frozen=True)
class Arrangement:
    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(v) for v in self.order)
        if sorted(order) != list(range(len(order))):
            raise ValueError(f"not a permutation of 0..{len(order) - 1}: {order}")
        object.__setattr__(self, "order", order)

    @classmethod
    def from_order(cls, order: Iterable[int]) -> "Arrangement":
        return cls(tuple(order))

    @classmethod
    def from_positions(cls, pos: Sequence[int]) -> "Arrangement":
        """Build from 1-based positions, ``pos[v]`` for each vertex v."""
        order = [0] * len(pos)
        for v, p in enumerate(pos):
            order[p - 1] = v
        return cls(tuple(order))

    @cached_property
    def pos(self) -> tuple[int, ...]:
        out = [0] * len(self.order)
        for i, v in enumerate(self.order):
            out[v] = i + 1
        return tuple(out)

    @property
    def inv(self) -> tuple[int, ...]:
        return self.order

    @property
    def n(self) -> int:
        return len(self.order)

    def vertex_at(self, p: int) -> int:
        return self.order[p - 1]

    def position(self, v: int) -> int:
        return self.pos[v]

    def __len__(self) -> int:
        return len(self.order)

    def __str__(self) -> str:
        return format_arrangement(self)


def _check(g: Graph, a: Arrangement) -> None:
    if g.n != a.n:
        raise ValueError(f"arrangement has {a.n} positions, graph has {g.n} vertices")


def cost(g: Graph, a: Arrangement) -> int:
    _check(g, a)
    pos = a.pos
    return sum(abs(pos[u] - pos[v]) for u, v in g.edges)


def vertex_levels(g: Graph, a: Arrangement) -> tuple[int, ...]:
    """Level of each vertex: neighbours to its right minus neighbours to its left."""
    _check(g, a)
    pos = a.pos
    lev = [0] * g.n
    for u, v in g.edges:
        if pos[u] < pos[v]:
            lev[u] += 1
            lev[v] -= 1
        else:
            lev[u] -= 1
            lev[v] += 1
    return tuple(lev)


def level_signature(g: Graph, a: Arrangement) -> tuple[int, ...]:
    """Level signature, position by position."""
    lev = vertex_levels(g, a)
    return tuple(lev[v] for v in a.order)


def cut_signature(g: Graph, a: Arrangement) -> tuple[int, ...]:
    """Cut widths c(1) .. c(n-1); c(p) counts edges crossing the gap after p."""
    out = []
    c = 0
    for l in level_signature(g, a)[:-1]:
        c += l
        out.append(c)
    return tuple(out)


def cost_from_levels(sig: Sequence[int]) -> int:
    n = len(sig)
    return sum((n - p) * l for p, l in enumerate(sig, 1))


def thistles(g: Graph, a: Arrangement) -> tuple[int, ...]:
    """Vertices whose |level| is below their degree, in vertex order."""
    lev = vertex_levels(g, a)
    return tuple(v for v in range(g.n) if abs(lev[v]) < g.deg[v])


def is_bipartite_arrangement(g: Graph, bip: Bipartition, a: Arrangement) -> bool:
    """True when one colour class entirely precedes the other."""
    _check(g, a)
    colors = [bip.color[v] for v in a.order]
    changes = sum(1 for x, y in zip(colors, colors[1:]) if x != y)
    return changes <= 1


def mirror(a: Arrangement) -> Arrangement:
    return Arrangement(a.order[::-1])


def rotate(a: Arrangement) -> Arrangement:
    """One counter-clockwise step: every vertex moves one position to the left
    and the first vertex wraps around to position n."""
    return Arrangement(a.order[1:] + a.order[:1])


def swap(a: Arrangement, i: int, j: int) -> Arrangement:
    order = list(a.order)
    order[i - 1], order[j - 1] = order[j - 1], order[i - 1]
    return Arrangement(tuple(order))


@dataclass(frozen=True)
class SwapDelta:
    """Predicted change caused by swapping the vertices at positions i < j.

    ``level_deltas`` is indexed by original position and holds the change of
    the level of the vertex that was there. ``cut_deltas`` holds
    c'(p) - c(p) for p = 1 .. n-1.
    """

    level_deltas: tuple[int, ...]
    cut_deltas: tuple[int, ...]


def swap_deltas(g: Graph, a: Arrangement, i: int, j: int) -> SwapDelta:
    """Closed-form level and cut changes for a vertex swap."""
    if i > j:
        i, j = j, i
    if i == j:
        return SwapDelta((0,) * g.n, (0,) * (g.n - 1))
    pos = a.pos
    v, w = a.vertex_at(i), a.vertex_at(j)
    lev = vertex_levels(g, a)
    a_vw = 1 if g.has_edge(v, w) else 0

    def inside(x: int, lo: int, hi: int) -> bool:
        # position in (lo, hi]
        return lo < pos[x] <= hi

    nw_ij = sum(1 for x in g.adj[w] if i < pos[x] < j)
    nv_ij = sum(1 for x in g.adj[v] if i < pos[x] < j)
    dl = [0] * g.n
    dl[i - 1] = -2 * (nv_ij + a_vw)
    dl[j - 1] = 2 * (nw_ij + a_vw)
    for k in range(i + 1, j):
        u = a.vertex_at(k)
        dl[k - 1] = 2 * ((1 if g.has_edge(v, u) else 0) - (1 if g.has_edge(w, u) else 0))
    dc = [0] * (g.n - 1)
    base = lev[w] - lev[v] + 2 * (a_vw + nw_ij)
    for k in range(i, j):
        nv_ik = sum(1 for x in g.adj[v] if inside(x, i, k))
        nw_ik = sum(1 for x in g.adj[w] if inside(x, i, k))
        dc[k - 1] = base + 2 * (nv_ik - nw_ik)
    return SwapDelta(tuple(dl), tuple(dc))


def signature_key(sig: Sequence[int]) -> tuple[int, ...]:
    """Representative of a level signature up to mirroring."""
    sig = tuple(sig)
    mir = tuple(-l for l in reversed(sig))
    return min(sig, mir)


def level_isomorphic(g: Graph, a1: Arrangement, a2: Arrangement) -> bool:
    return signature_key(level_signature(g, a1)) == signature_key(level_signature(g, a2))


def edge_isomorphic(g: Graph, a1: Arrangement, a2: Arrangement) -> bool:
    """Edges of a1 and a2 occupy the same pairs of positions, directly or
    after mirroring a2."""

    def pairs(a: Arrangement) -> frozenset[tuple[int, int]]:
        pos = a.pos
        return frozenset((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges)

    p1 = pairs(a1)
    return p1 == pairs(a2) or p1 == pairs(mirror(a2))


def parse_arrangement(text: str) -> Arrangement:
    """Parse a whitespace or comma separated vertex order."""
    tokens = text.replace(",", " ").split()
    try:
        return Arrangement(tuple(int(t) for t in tokens))
    except ValueError as exc:
        raise ValueError(f"bad arrangement {text!r}: {exc}") from None


def format_arrangement(a: Arrangement) -> str:
    return " ".join(map(str, a.order))
