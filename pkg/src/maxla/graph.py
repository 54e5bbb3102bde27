"""Graphs, free trees and the structural queries the solvers depend on.

Vertices are the integers ``0 .. n-1``. Edges are stored as sorted pairs
``(u, v)`` with ``u < v``. A :class:`FreeTree` is a connected graph with
``n - 1`` edges; it additionally carries leaf lists, branchless paths,
potential thistles and vertex orbits.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "GraphError", "GraphParseError", "NotBipartite",
    "Graph", "FreeTree", "Bipartition", "BranchlessPath", "PotentialThistles",
    "TreeClass", "OrbitPartition",
    "parse_graph", "format_graph", "bipartition", "branchless_paths",
    "potential_thistles", "classify", "vertex_orbits", "canonical_code",
    "sibling_classes", "hubiness",
    "path_tree", "star_tree", "cycle_graph", "bistar_tree", "kquasistar_tree",
    "spider_tree", "two_linear_tree", "tree_from_parents",
]


class GraphError(ValueError):
    """Invalid graph input."""


class GraphParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class NotBipartite(GraphError):
    """Raised by :func:`bipartition` when the graph has an odd cycle."""


class Graph:
    """Simple undirected graph on vertices ``0 .. n-1``."""

    def __init__(self, n: int, edges: Iterable[Sequence[int]], labels: Sequence[str] | None = None):
        if not isinstance(n, int) or n < 1:
            raise GraphError(f"vertex count must be a positive integer, got {n!r}")
        norm = []
        seen = set()
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"edge {e!r} does not have two endpoints")
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
            norm.append(key)
        adj = [[] for _ in range(n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges = tuple(sorted(norm))
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self.deg = tuple(len(a) for a in adj)
        self.edge_set = frozenset(self.edges)
        if labels is not None and len(labels) != n:
            raise GraphError("label list length differs from vertex count")
        self.labels = tuple(labels) if labels is not None else None

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_set

    def degree(self, u: int) -> int:
        return self.deg[u]

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adj[u]

    @property
    def max_degree(self) -> int:
        return max(self.deg)

    def is_connected(self) -> bool:
        seen = [False] * self.n
        seen[0] = True
        stack = [0]
        count = 1
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        return count == self.n

    def is_tree(self) -> bool:
        return self.m == self.n - 1 and self.is_connected()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, edges={list(self.edges)})"


class FreeTree(Graph):
    """Connected acyclic graph. Construction fails for anything else."""

    def __init__(self, n: int, edges: Iterable[Sequence[int]], labels: Sequence[str] | None = None):
        super().__init__(n, edges, labels)
        if self.m != n - 1:
            raise GraphError(f"a tree on {n} vertices needs {n - 1} edges, got {self.m}")
        if not self.is_connected():
            raise GraphError("graph is not connected")
        self.leaves_of = tuple(
            tuple(w for w in self.adj[u] if self.deg[w] == 1) for u in range(n)
        )

    @classmethod
    def from_graph(cls, g: Graph) -> "FreeTree":
        return cls(g.n, g.edges, g.labels)

    @cached_property
    def bipartition(self) -> "Bipartition":
        return bipartition(self)

    @cached_property
    def branchless_paths(self) -> tuple["BranchlessPath", ...]:
        return tuple(branchless_paths(self))

    @cached_property
    def potential_thistles(self) -> "PotentialThistles":
        return potential_thistles(self)

    @cached_property
    def orbits(self) -> "OrbitPartition":
        return vertex_orbits(self)

    @cached_property
    def tree_class(self) -> "TreeClass":
        return classify(self)


# ---------------------------------------------------------------- text format

_LABEL_RE = re.compile(r"#\s*label\s+(\d+)\s+(\S+)\s*$")


def parse_graph(text: str) -> Graph:
    """Parse an edge list.

    One edge ``u v`` per line. An optional header ``n <count>`` fixes the
    vertex count (needed for the single-vertex tree). Lines starting with
    ``#`` are comments; ``# label <index> <name>`` comments name vertices.
    Returns a :class:`FreeTree` when the edges form a tree.
    """
    n = None
    edges = []
    seen: set[tuple[int, int]] = set()
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _LABEL_RE.match(line)
            if m:
                labels[int(m.group(1))] = m.group(2)
            continue
        parts = line.split()
        if parts[0] == "n":
            if len(parts) != 2 or not parts[1].isdigit():
                raise GraphParseError("malformed header, expected 'n <count>'", lineno)
            if n is not None or edges:
                raise GraphParseError("header must come before any edge", lineno)
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise GraphParseError(f"expected two vertex indices, got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"non-integer vertex in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphParseError(f"negative vertex index in {line!r}", lineno)
        if n is not None and max(u, v) >= n:
            raise GraphParseError(f"vertex index out of range 0..{n - 1} in {line!r}", lineno)
        if u == v:
            raise GraphParseError(f"loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"duplicate edge {u} {v}", lineno)
        seen.add(key)
        edges.append((u, v))
    if n is None:
        if not edges:
            raise GraphParseError("empty edge list without an 'n <count>' header")
        n = 1 + max(max(e) for e in edges)
    label_list = None
    if labels:
        label_list = [labels.get(i, str(i)) for i in range(n)]
    g = Graph(n, edges, label_list)
    if g.is_tree():
        return FreeTree(n, g.edges, label_list)
    return g


def format_graph(g: Graph) -> str:
    lines = [f"n {g.n}"]
    if g.labels is not None:
        lines += [f"# label {i} {name}" for i, name in enumerate(g.labels)]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- bipartition

@dataclass(frozen=True)
class Bipartition:
    color: tuple[int, ...]

    @property
    def n1(self) -> int:
        return self.color.count(0)

    @property
    def n2(self) -> int:
        return self.color.count(1)

    @property
    def sides(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        a = tuple(v for v, c in enumerate(self.color) if c == 0)
        b = tuple(v for v, c in enumerate(self.color) if c == 1)
        return a, b


def bipartition(g: Graph) -> Bipartition:
    """2-colour ``g`` by BFS; the lowest vertex of each component gets colour 0."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    raise NotBipartite(f"odd cycle through edge ({u}, {w})")
    return Bipartition(tuple(color))


# ---------------------------------------------------------------- paths

@dataclass(frozen=True)
class BranchlessPath:
    """Maximal path whose internal vertices all have degree 2."""

    vertices: tuple[int, ...]
    is_bridge: bool
    endpoint_degrees: tuple[int, int]

    @property
    def internal(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def designated(self) -> int | None:
        # the internal vertex used as a bridge's thistle candidate
        return min(self.internal) if self.internal else None


def branchless_paths(t: FreeTree) -> list[BranchlessPath]:
    n, deg, adj = t.n, t.deg, t.adj
    if n == 1:
        return []
    out = []
    seen = set()
    for s in range(n):
        if deg[s] == 2:
            continue
        for first in adj[s]:
            path = [s]
            prev, cur = s, first
            while deg[cur] == 2:
                path.append(cur)
                a, b = adj[cur]
                prev, cur = cur, (b if a == prev else a)
            path.append(cur)
            key = tuple(path) if path[0] < path[-1] else tuple(reversed(path))
            if key in seen:
                continue
            seen.add(key)
            bridge = deg[key[0]] >= 3 and deg[key[-1]] >= 3
            out.append(BranchlessPath(key, bridge, (deg[key[0]], deg[key[-1]])))
    out.sort(key=lambda p: p.vertices)
    return out


@dataclass(frozen=True)
class PotentialThistles:
    hubs: tuple[int, ...]
    bridges: tuple[BranchlessPath, ...]

    @property
    def count(self) -> int:
        """Number of vertices that can be a thistle in a maximum arrangement:
        hubs plus bridge paths that have an internal vertex."""
        return len(self.hubs) + sum(1 for b in self.bridges if b.internal)

    @property
    def structural_count(self) -> int:
        """Hubs plus all bridge paths, adjacent hubs included."""
        return len(self.hubs) + len(self.bridges)

    @property
    def designated(self) -> tuple[int, ...]:
        """Hubs plus one internal vertex per bridge path that has any."""
        extra = [b.designated for b in self.bridges if b.internal]
        return tuple(sorted(set(self.hubs) | set(extra)))

    @property
    def candidates(self) -> tuple[int, ...]:
        """Hubs plus every internal vertex of every bridge path."""
        extra = [v for b in self.bridges for v in b.internal]
        return tuple(sorted(set(self.hubs) | set(extra)))


def potential_thistles(t: FreeTree) -> PotentialThistles:
    hubs = tuple(v for v in range(t.n) if t.deg[v] >= 3)
    bridges = tuple(p for p in branchless_paths(t) if p.is_bridge)
    return PotentialThistles(hubs, bridges)


# ---------------------------------------------------------------- classes

@dataclass(frozen=True)
class TreeClass:
    tag: str
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.params:
            return self.tag
        return f"{self.tag}({', '.join(map(str, self.params))})"


def _hub_path(t: FreeTree, hubs: Sequence[int]) -> list[int] | None:
    """Path containing every hub, if one exists (hubs given as a set)."""
    hs = set(hubs)
    # the hubs lie on one path iff the minimal subtree spanning them is a path
    keep = [False] * t.n
    for h in hs:
        keep[h] = True
    # prune leaves of the spanning subtree repeatedly
    deg = [0] * t.n
    alive = [True] * t.n
    for v in range(t.n):
        deg[v] = t.deg[v]
    queue = deque(v for v in range(t.n) if deg[v] <= 1 and not keep[v])
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for w in t.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] <= 1 and not keep[w]:
                    queue.append(w)
    rest = [v for v in range(t.n) if alive[v]]
    if any(deg[v] > 2 for v in rest):
        return None
    return rest


def classify(t: FreeTree) -> TreeClass:
    """Most specific structural class of ``t``."""
    n, deg = t.n, t.deg
    if max(deg, default=0) <= 2:
        return TreeClass("Path", (n,))
    hubs = [v for v in range(n) if deg[v] >= 3]
    internal = [v for v in range(n) if deg[v] >= 2]
    if len(internal) == 1:
        return TreeClass("Star", (n,))
    if len(internal) == 2 and t.has_edge(*internal):
        d1, d2 = sorted((deg[internal[0]], deg[internal[1]]), reverse=True)
        if d1 - d2 <= 1:
            return TreeClass("BalancedBistar", (d1, d2))
        return TreeClass("Bistar", (d1, d2))
    if len(hubs) == 1:
        c = hubs[0]
        others = [v for v in range(n) if v != c and deg[v] == 2]
        if all(c in t.adj[v] and any(deg[w] == 1 for w in t.adj[v]) for v in others):
            k = len(others)
            return TreeClass("KQuasistar", (k, deg[c] - k))
        return TreeClass("Spider", (deg[c],))
    if len(hubs) == 2:
        bridge = [p for p in branchless_paths(t) if p.is_bridge]
        if len(bridge) == 1:
            return TreeClass("TwoLinear", (bridge[0].length,))
    if _hub_path(t, hubs) is not None:
        return TreeClass("KLinear", (len(hubs),))
    return TreeClass("Generic")


# ---------------------------------------------------------------- isomorphism

class _Codes:
    """AHU codes of rooted subtrees, memoised per directed edge."""

    def __init__(self, t: FreeTree):
        self.t = t
        self.memo: dict[tuple[int, int], str] = {}

    def code(self, v: int, parent: int) -> str:
        key = (v, parent)
        c = self.memo.get(key)
        if c is not None:
            return c
        # iterative post-order to stay clear of the recursion limit
        stack = [(v, parent, False)]
        while stack:
            u, p, done = stack.pop()
            if (u, p) in self.memo:
                continue
            kids = [w for w in self.t.adj[u] if w != p]
            if done:
                self.memo[(u, p)] = "(" + "".join(sorted(self.memo[(w, u)] for w in kids)) + ")"
            else:
                stack.append((u, p, True))
                stack.extend((w, u, False) for w in kids if (w, u) not in self.memo)
        return self.memo[key]

    def rooted(self, r: int) -> str:
        return self.code(r, -1)


def centroids(t: FreeTree) -> list[int]:
    n = t.n
    order = []
    parent = [-1] * n
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        order.append(u)
        for w in t.adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                stack.append(w)
    size = [1] * n
    for u in reversed(order):
        if parent[u] >= 0:
            size[parent[u]] += size[u]
    out = []
    for u in range(n):
        big = n - size[u]
        for w in t.adj[u]:
            if w != parent[u]:
                big = max(big, size[w])
        if 2 * big <= n:
            out.append(u)
    return out


def canonical_code(t: FreeTree) -> str:
    """Isomorphism invariant: smallest AHU code over the centroid rootings."""
    codes = _Codes(t)
    return min(codes.rooted(c) for c in centroids(t))


@dataclass(frozen=True)
class OrbitPartition:
    orbit_id: tuple[int, ...]  # lowest vertex in each vertex's orbit

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.orbit_id)))

    @property
    def count(self) -> int:
        return len(set(self.orbit_id))

    def same(self, u: int, v: int) -> bool:
        return self.orbit_id[u] == self.orbit_id[v]


def vertex_orbits(t: FreeTree) -> OrbitPartition:
    """Automorphism orbits: u ~ v iff the tree rooted at u and at v agree."""
    codes = _Codes(t)
    first: dict[str, int] = {}
    orbit = []
    for v in range(t.n):
        orbit.append(first.setdefault(codes.rooted(v), v))
    return OrbitPartition(tuple(orbit))


def sibling_classes(t: FreeTree, root: int) -> tuple[tuple[int, ...], ...]:
    """For each vertex, its lower-indexed isomorphic siblings under ``root``.

    Siblings are children of the same parent in the tree rooted at ``root``;
    they are isomorphic when their rooted subtrees have equal codes.
    """
    codes = _Codes(t)
    out: list[tuple[int, ...]] = [()] * t.n
    parent = [-1] * t.n
    seen = [False] * t.n
    seen[root] = True
    stack = [root]
    while stack:
        u = stack.pop()
        kids = [w for w in t.adj[u] if not seen[w]]
        for w in kids:
            seen[w] = True
            parent[w] = u
            stack.append(w)
        by_code: dict[str, list[int]] = {}
        for w in sorted(kids):
            by_code.setdefault(codes.code(w, u), []).append(w)
        for group in by_code.values():
            for i, w in enumerate(group):
                out[w] = tuple(group[:i])
    return tuple(out)


def hubiness(t: FreeTree) -> float:
    """Degree-variance coefficient: 0 for a path, 1 for a star."""
    n = t.n
    if n < 4:
        return float("nan")
    mean = 2 - 2 / n
    var = sum((d - mean) ** 2 for d in t.deg) / n
    v_lin = (2 / n) * (1 - 2 / n)
    v_star = n - 5 + (4 / n) * (2 - 1 / n)
    return (var - v_lin) / (v_star - v_lin)


# ---------------------------------------------------------------- factories

def path_tree(n: int) -> FreeTree:
    return FreeTree(n, [(i, i + 1) for i in range(n - 1)])


def star_tree(n: int) -> FreeTree:
    return FreeTree(n, [(0, i) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def bistar_tree(d1: int, d2: int) -> FreeTree:
    """Hubs 0 and 1 of degrees d1 and d2 joined by an edge."""
    if d1 < 1 or d2 < 1:
        raise GraphError("bistar degrees must be positive")
    edges = [(0, 1)]
    nxt = 2
    for hub, d in ((0, d1), (1, d2)):
        for _ in range(d - 1):
            edges.append((hub, nxt))
            nxt += 1
    return FreeTree(nxt, edges)


def spider_tree(legs: Sequence[int]) -> FreeTree:
    """Centre 0 with one path of each given length hanging from it."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return FreeTree(nxt, edges)


def kquasistar_tree(n: int, k: int) -> FreeTree:
    """Star with k of its n - 1 - k edges subdivided once."""
    l = n - 1 - 2 * k
    if k < 0 or l < 0:
        raise GraphError(f"no {k}-quasistar on {n} vertices")
    return spider_tree([2] * k + [1] * l)


def two_linear_tree(leaves1: int, leaves2: int, bridge: int) -> FreeTree:
    """Two hubs with the given leaf counts joined by a path of ``bridge`` edges."""
    edges = []
    chain = [0]
    for i in range(bridge):
        edges.append((chain[-1], i + 1))
        chain.append(i + 1)
    nxt = bridge + 1
    for hub, c in ((0, leaves1), (chain[-1], leaves2)):
        for _ in range(c):
            edges.append((hub, nxt))
            nxt += 1
    return FreeTree(nxt, edges)


def tree_from_parents(parents: Sequence[int]) -> FreeTree:
    """Tree where vertex i > 0 hangs from ``parents[i - 1]``."""
    return FreeTree(len(parents) + 1, [(p, i + 1) for i, p in enumerate(parents)])
