"""Unlabeled free trees: exhaustive enumeration and uniform sampling.

Enumeration walks canonical level sequences of centre-rooted trees in
constant amortised time per tree (Wright, Richmond, Odlyzko and McKay).
Sampling draws a uniform rooted tree with the Nijenhuis-Wilf recursive
method and accepts it with probability 1 / (number of vertex orbits), which
makes every free tree equally likely.
"""
from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable, Iterator, TextIO

from .graph import FreeTree, GraphError, vertex_orbits

__all__ = [
    "ENUM_CAP", "TreeStream", "enumerate_free_trees", "level_sequences",
    "sample_free_tree", "sample_free_trees", "rooted_tree_count", "free_tree_count",
    "tree_from_levels", "write_corpus", "read_corpus",
]

ENUM_CAP = 20


def tree_from_levels(levels: list[int]) -> FreeTree:
    """Tree of a level sequence (depths in preorder, root at depth 0)."""
    n = len(levels)
    edges = []
    stack: list[int] = []  # stack[d] = latest vertex seen at depth d
    for v, d in enumerate(levels):
        del stack[d:]
        if d:
            edges.append((stack[d - 1], v))
        stack.append(v)
    return FreeTree(n, edges)


def _split(seq: list[int]) -> tuple[list[int], list[int]]:
    """First principal subtree (re-rooted at depth 0) and the remaining tree."""
    m = len(seq)
    for i in range(2, len(seq)):
        if seq[i] == 1:
            m = i
            break
    left = [d - 1 for d in seq[1:m]]
    rest = [0] + seq[m:]
    return left, rest


def _is_canonical_free(seq: list[int]) -> bool:
    # the root must be a centre, and for two centres the heavier or
    # lexicographically larger half must come second
    left, rest = _split(seq)
    hl, hr = max(left), max(rest)
    if hr < hl:
        return False
    if hr == hl:
        if len(left) > len(rest):
            return False
        if len(left) == len(rest) and left > rest:
            return False
    return True


def _next_rooted(seq: list[int], p: int | None = None) -> list[int] | None:
    """Successor of a canonical rooted level sequence (Beyer-Hedetniemi)."""
    if p is None:
        p = len(seq) - 1
        while p > 0 and seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def level_sequences(n: int) -> Iterator[list[int]]:
    """Level sequences of all free trees on n vertices, one per class."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > ENUM_CAP:
        raise ValueError(f"enumeration is capped at n = {ENUM_CAP}")
    if n <= 2:
        yield list(range(n))
        return
    seq: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        if _is_canonical_free(seq):
            yield seq
            seq = _next_rooted(seq)
        else:
            # jump past every sequence sharing the offending first subtree
            left, _ = _split(seq)
            p = len(left)
            nxt = _next_rooted(seq, p)
            if nxt is not None and seq[p] > 2:
                new_left, _ = _split(nxt)
                h = max(new_left)
                tail = list(range(1, h + 2))
                if len(tail) < len(nxt):
                    nxt[len(nxt) - len(tail):] = tail
            seq = nxt


class TreeStream:
    """Iterable of free trees, exhaustive or sampled."""

    def __init__(self, n: int, mode: str = "exhaustive", count: int = 0, seed: int = 0):
        if mode not in ("exhaustive", "sample"):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == "exhaustive" and n > ENUM_CAP:
            raise ValueError(f"enumeration is capped at n = {ENUM_CAP}")
        self.n, self.mode, self.count, self.seed = n, mode, count, seed

    def __iter__(self) -> Iterator[FreeTree]:
        if self.mode == "exhaustive":
            for seq in level_sequences(self.n):
                yield tree_from_levels(seq)
        else:
            yield from sample_free_trees(self.n, self.count, self.seed)


def enumerate_free_trees(n: int) -> TreeStream:
    return TreeStream(n, "exhaustive")


# ---------------------------------------------------------------- counting

@lru_cache(maxsize=None)
def rooted_tree_count(n: int) -> int:
    """Unlabeled rooted trees on n vertices (OEIS A000081)."""
    if n <= 1:
        return n
    total = 0
    for j in range(1, n):
        s = 0
        for d in range(1, j + 1):
            if j % d == 0:
                s += d * rooted_tree_count(d)
        total += s * rooted_tree_count(n - j)
    return total // (n - 1)


def free_tree_count(n: int) -> int:
    """Unlabeled free trees on n vertices (OEIS A000055), via Otter's formula."""
    if n <= 2:
        return 1
    r = rooted_tree_count
    total = r(n) - sum(r(i) * r(n - i) for i in range(1, n // 2 + 1))
    if n % 2 == 0:
        total += r(n // 2) * (r(n // 2) + 1) // 2
    return total


# ---------------------------------------------------------------- sampling

def _random_rooted(n: int, rng: random.Random) -> list[list[int]]:
    """Uniform unlabeled rooted tree on n vertices as child lists (root 0)."""
    children: list[list[int]] = [[] for _ in range(n)]
    nxt = [0]

    def build(size: int) -> int:
        # root of a fresh uniform rooted tree of this size
        root = _alloc()
        _grow(root, size)
        return root

    def _alloc() -> int:
        v = nxt[0]
        nxt[0] += 1
        return v

    def _grow(root: int, size: int) -> None:
        # attach subtrees to root until it spans `size` vertices
        while size > 1:
            target = rng.randrange((size - 1) * rooted_tree_count(size))
            acc = 0
            chosen = None
            for d in range(1, size):
                rd = d * rooted_tree_count(d)
                j = 1
                while j * d <= size - 1:
                    acc += rd * rooted_tree_count(size - j * d)
                    if acc > target:
                        chosen = (j, d)
                        break
                    j += 1
                if chosen:
                    break
            j, d = chosen
            sub = build(d)
            shape = _shape(sub)
            children[root].append(sub)
            for _ in range(j - 1):
                children[root].append(_copy(shape))
            size -= j * d

    def _shape(v: int):
        return tuple(_shape(c) for c in children[v])

    def _copy(shape) -> int:
        v = _alloc()
        for s in shape:
            children[v].append(_copy(s))
        return v

    build(n)
    return children


def _rooted_to_tree(children: list[list[int]]) -> FreeTree:
    edges = [(u, c) for u, cs in enumerate(children) for c in cs]
    return FreeTree(len(children), edges)


def sample_free_tree(n: int, seed: int | random.Random | None = None) -> FreeTree:
    """Uniformly random unlabeled free tree on n vertices.

    A uniform rooted tree hits each free tree once per vertex orbit, so
    accepting with probability 1 / orbits leaves the free trees uniform.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if n <= 3:
        return _rooted_to_tree(_random_rooted(n, rng))
    while True:
        t = _rooted_to_tree(_random_rooted(n, rng))
        k = vertex_orbits(t).count
        if rng.randrange(k) == 0:
            return t


def sample_free_trees(n: int, count: int, seed: int = 0) -> Iterator[FreeTree]:
    rng = random.Random(seed)
    for _ in range(count):
        yield sample_free_tree(n, rng)


# ---------------------------------------------------------------- corpora

def write_corpus(trees: Iterable[FreeTree], out: TextIO) -> int:
    """One tree per line, edges ``u v`` separated by ``;``. The
    single-vertex tree is written as ``1:``."""
    count = 0
    for t in trees:
        if t.n == 1:
            out.write("1:\n")
        else:
            out.write(";".join(f"{u} {v}" for u, v in t.edges) + "\n")
        count += 1
    return count


def read_corpus(lines: Iterable[str]) -> Iterator[FreeTree]:
    """Inverse of :func:`write_corpus`; an optional ``<n>:`` prefix sets n."""
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        n = None
        if ":" in line:
            head, line = line.split(":", 1)
            n = int(head)
        edges = []
        for part in line.split(";"):
            part = part.strip()
            if not part:
                continue
            u, v = part.split()
            edges.append((int(u), int(v)))
        if n is None:
            n = 1 + max(max(e) for e in edges)
        try:
            yield FreeTree(n, edges)
        except GraphError as exc:
            raise GraphError(f"corpus line {lineno}: {exc}") from None
