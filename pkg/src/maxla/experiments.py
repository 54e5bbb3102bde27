"""Tree surveys: which trees a bipartite arrangement maximises, how far the
bipartite and 1-thistle optima fall from the maximum, and how that depends
on the number of potential thistles.

Every table is computed from a list of :class:`TreeOutcome`, one per tree,
produced by :func:`survey`. Trees up to :data:`ORACLE_MAX_N` vertices are
classified by brute force, larger ones by the branch and bound.
"""
from __future__ import annotations

import csv
import json
import math
import warnings
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np
from scipy import stats

from .arrangement import cost, thistles
from .bnb import bnb_solve
from .graph import FreeTree
from .oracle import classify_maximizability
from .result import Infeasible
from .solvers import bipartite_maxla, one_thistle_maxla, rotation_heuristic
from .treegen import TreeStream

__all__ = [
    "ORACLE_MAX_N", "TreeOutcome", "StatsRecord", "TwoLinearRow", "ConditioningRow",
    "DistributionRecord", "analyse_tree", "survey", "stats_table", "two_linear_table",
    "thistle_conditioning", "distributions", "bootstrap_ci",
    "write_csv", "write_jsonl", "write_tsv", "METRICS",
]

ORACLE_MAX_N = 9


@dataclass(frozen=True)
class TreeOutcome:
    n: int
    value: int
    bipartite_value: int
    tag: str  # BipOnly, Both or NonBipOnly
    one_thistle_value: int | None
    heuristic_value: int
    phi: int
    bridge_length: int | None  # set for trees with exactly two hubs

    @property
    def admits_bipartite(self) -> bool:
        return self.tag != "NonBipOnly"

    @property
    def one_thistle_solves(self) -> bool:
        return self.tag == "NonBipOnly" and self.one_thistle_value == self.value


def analyse_tree(t: FreeTree, solver: str = "auto") -> TreeOutcome:
    """Classify one tree. ``solver`` is ``auto``, ``oracle`` or ``bnb``."""
    if solver == "auto":
        solver = "oracle" if t.n <= ORACLE_MAX_N else "bnb"
    bip = bipartite_maxla(t)
    if solver == "oracle":
        mc = classify_maximizability(t)
        value, tag = mc.value, mc.tag
    elif solver == "bnb":
        r = bnb_solve(t)
        value = r.value
        if value > bip.value:
            tag = "NonBipOnly"
        elif any(thistles(t, a) for a in r.witnesses):
            tag = "Both"
        else:
            tag = "BipOnly"
    else:
        raise ValueError(f"unknown solver {solver!r}")
    try:
        one = one_thistle_maxla(t).value
    except Infeasible:
        one = None
    heur = cost(t, rotation_heuristic(t, bip.witness))
    pt = t.potential_thistles
    bridge = pt.bridges[0].length if len(pt.hubs) == 2 else None
    return TreeOutcome(t.n, value, bip.value, tag, one, heur, pt.count, bridge)


def _analyse_oracle(t):
    return analyse_tree(t, "oracle")


def _analyse_bnb(t):
    return analyse_tree(t, "bnb")


def _analyse_auto(t):
    return analyse_tree(t, "auto")


_WORKERS = {"oracle": _analyse_oracle, "bnb": _analyse_bnb, "auto": _analyse_auto}


def survey(n: int, solver: str = "auto", mode: str = "exhaustive", count: int = 1000,
           seed: int = 0, workers: int = 1) -> list[TreeOutcome]:
    """Outcomes for every n-vertex tree, or for ``count`` uniform samples."""
    trees = TreeStream(n, mode, count, seed)
    fn = _WORKERS[solver]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, trees, chunksize=16))
    return [fn(t) for t in trees]


# ---------------------------------------------------------------- table rows

@dataclass(frozen=True)
class StatsRecord:
    n: int
    total: int
    bip_only: int
    both: int
    admit_bip: int
    nonbip_only: int
    one_thistle_solved: int
    p_bip: float
    p_one: float
    mode: str = "exhaustive"
    count: int | None = None
    seed: int | None = None
    ci_low: float | None = None
    ci_high: float | None = None


def bootstrap_ci(indicator: Sequence[int], seed: int = 0, resamples: int = 10_000,
                 confidence: float = 0.99) -> tuple[float, float]:
    """Percentile bootstrap interval for a proportion."""
    data = np.asarray(indicator, dtype=float)
    if data.min() == data.max():
        return float(data[0]), float(data[0])
    res = stats.bootstrap((data,), np.mean, n_resamples=resamples, confidence_level=confidence,
                          method="percentile", rng=np.random.default_rng(seed))
    return float(res.confidence_interval.low), float(res.confidence_interval.high)


def summarise(n: int, outcomes: Sequence[TreeOutcome], mode: str = "exhaustive",
              count: int | None = None, seed: int | None = None) -> StatsRecord:
    tags = Counter(o.tag for o in outcomes)
    total = len(outcomes)
    admit = tags["BipOnly"] + tags["Both"]
    nb = tags["NonBipOnly"]
    one = sum(1 for o in outcomes if o.one_thistle_solves)
    lo = hi = None
    if mode == "sample" and total:
        lo, hi = bootstrap_ci([int(o.admits_bipartite) for o in outcomes], seed or 0)
    return StatsRecord(
        n, total, tags["BipOnly"], tags["Both"], admit, nb, one,
        admit / total if total else math.nan, one / nb if nb else math.nan,
        mode, count if mode == "sample" else None, seed if mode == "sample" else None, lo, hi,
    )


def stats_table(n_values: Iterable[int], solver: str = "auto", mode: str = "exhaustive",
                count: int = 1000, seed: int = 0, workers: int = 1) -> list[StatsRecord]:
    """Counts of trees by the kind of arrangement that maximises them."""
    rows = []
    for n in n_values:
        outs = survey(n, solver, mode, count, seed, workers)
        rows.append(summarise(n, outs, mode, count, seed))
    prev = None
    for r in rows:
        if r.n >= 6 and prev is not None and prev.n >= 6 and r.p_bip > prev.p_bip:
            warnings.warn(f"share of bipartite-maximisable trees rises from n={prev.n} to n={r.n}")
        prev = r
    return rows


@dataclass(frozen=True)
class TwoLinearRow:
    n: int
    bridge_length: int
    bip_only: int
    nonbip_only: int
    both: int


def two_linear_table(outcomes_by_n: dict[int, Sequence[TreeOutcome]]) -> list[TwoLinearRow]:
    """Trees with exactly two hubs, grouped by the length of the path joining them."""
    rows = []
    for n in sorted(outcomes_by_n):
        groups: dict[int, Counter] = defaultdict(Counter)
        for o in outcomes_by_n[n]:
            if o.bridge_length is not None:
                groups[o.bridge_length][o.tag] += 1
        for l in sorted(groups):
            c = groups[l]
            rows.append(TwoLinearRow(n, l, c["BipOnly"], c["NonBipOnly"], c["Both"]))
    return rows


@dataclass(frozen=True)
class ConditioningRow:
    n: int
    p_bip: float
    trees_by_k: dict[int, int] = field(default_factory=dict)
    admit_by_k: dict[int, int] = field(default_factory=dict)
    tau: float = math.nan
    p_value: float = math.nan

    def p_given_k(self, k: int) -> float:
        return self.admit_by_k[k] / self.trees_by_k[k]

    def share_of_k(self, k: int) -> float:
        return self.trees_by_k[k] / sum(self.trees_by_k.values())


def thistle_conditioning(outcomes_by_n: dict[int, Sequence[TreeOutcome]]) -> list[ConditioningRow]:
    """Share of bipartite-maximisable trees for each number of potential
    thistles, with Kendall's tau-b between that number and the share."""
    rows = []
    for n in sorted(outcomes_by_n):
        outs = outcomes_by_n[n]
        trees: Counter = Counter()
        admit: Counter = Counter()
        for o in outs:
            trees[o.phi] += 1
            admit[o.phi] += o.admits_bipartite
        ks = sorted(trees)
        tau = pv = math.nan
        ps = [admit[k] / trees[k] for k in ks]
        if len(ks) > 1 and len(set(ps)) > 1:
            res = stats.kendalltau(ks, ps)
            tau, pv = float(res.statistic), float(res.pvalue)
        p_bip = sum(admit.values()) / len(outs)
        rows.append(ConditioningRow(n, p_bip, {k: trees[k] for k in ks}, {k: admit[k] for k in ks}, tau, pv))
    return rows


# ---------------------------------------------------------------- distributions

@dataclass(frozen=True)
class DistributionRecord:
    n: int
    metric: str
    histogram: dict
    count: int
    max_value: float | None


def _ratio(a: int, b: int) -> float:
    return round(a / b, 6)


METRICS = {
    # all trees: maximum over bipartite optimum
    "ratio": (lambda o: True, lambda o: _ratio(o.value, o.bipartite_value)),
    # trees no bipartite arrangement maximises
    "delta": (lambda o: o.tag == "NonBipOnly", lambda o: o.value - o.bipartite_value),
    "delta_heuristic": (lambda o: o.tag == "NonBipOnly", lambda o: o.value - o.heuristic_value),
    # such trees that the 1-thistle optimum does not solve
    "one_thistle_ratio": (
        lambda o: o.tag == "NonBipOnly" and not o.one_thistle_solves and o.one_thistle_value,
        lambda o: _ratio(o.value, o.one_thistle_value),
    ),
}


def distributions(outcomes_by_n: dict[int, Sequence[TreeOutcome]], metric: str) -> list[DistributionRecord]:
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; choose from {sorted(METRICS)}")
    keep, value = METRICS[metric]
    out = []
    for n in sorted(outcomes_by_n):
        vals = [value(o) for o in outcomes_by_n[n] if keep(o)]
        hist = dict(sorted(Counter(vals).items()))
        out.append(DistributionRecord(n, metric, hist, len(vals), max(vals) if vals else None))
    return out


# ---------------------------------------------------------------- output

_E1_HEADERS = {
    "n": "n", "total": "Total trees", "bip_only": "Bip", "both": "Bip & Non-Bip",
    "admit_bip": "Admit Bip", "nonbip_only": "Non-Bip", "one_thistle_solved": "1-thistle",
}


def write_csv(records: Sequence, out: TextIO, table_headers: bool = False) -> None:
    """One CSV row per record. ``table_headers`` renames the count columns of
    :class:`StatsRecord` to the usual table captions."""
    if not records:
        return
    cols = list(asdict(records[0]))
    names = [_E1_HEADERS.get(c, c) if table_headers else c for c in cols]
    w = csv.writer(out, lineterminator="\n")
    w.writerow(names)
    for r in records:
        d = asdict(r)
        w.writerow(["" if d[c] is None else _fmt(d[c]) for c in cols])


def _fmt(x):
    if isinstance(x, float):
        return "" if math.isnan(x) else f"{x:.6f}"
    if isinstance(x, dict):
        return json.dumps({str(k): v for k, v in x.items()}, sort_keys=False)
    return x


def write_jsonl(records: Sequence, out: TextIO) -> None:
    for r in records:
        d = asdict(r)
        for k, v in d.items():
            if isinstance(v, float) and math.isnan(v):
                d[k] = None
            elif isinstance(v, dict):
                d[k] = {str(a): b for a, b in v.items()}
        out.write(json.dumps(d) + "\n")


def write_tsv(records: Sequence[DistributionRecord], out: TextIO) -> None:
    """gnuplot-friendly blocks: ``n value count cumulative_share`` per line."""
    for rec in records:
        out.write(f"# n={rec.n} metric={rec.metric} trees={rec.count}\n")
        acc = 0
        for v, c in rec.histogram.items():
            acc += c
            out.write(f"{rec.n}\t{v}\t{c}\t{acc / rec.count:.6f}\n")
        out.write("\n\n")
