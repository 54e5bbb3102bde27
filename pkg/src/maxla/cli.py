"""Command-line front end.

    maxla solve [FILE] [--exact | --fast] [--threads K] [--disable RULE ...]
    maxla oracle [FILE]
    maxla classify [FILE]
    maxla enumerate --n N [-o OUT]
    maxla sample --n N --count C [--seed S] [-o OUT]
    maxla stats --n 7..9 [--exhaustive | --sample] [--table classes|two-linear|conditioning|METRIC]
    maxla verify --suite oracle|swap-lemma|signatures [--cases C] [--seed S]

FILE is an edge list (``u v`` per line, optional ``n <count>`` header);
``-`` or no FILE reads stdin. Exit status is 2 for usage or input errors,
1 when a verification fails and 0 otherwise.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from typing import Sequence, TextIO

from .arrangement import (
    Arrangement, cost, cost_from_levels, cut_signature, format_arrangement,
    level_signature, swap, swap_deltas, vertex_levels,
)
from .bnb import BnBOptions, bnb_solve
from .experiments import (
    METRICS, distributions, stats_table, survey, thistle_conditioning, two_linear_table,
    write_csv, write_jsonl, write_tsv,
)
from .graph import FreeTree, Graph, GraphError, classify, parse_graph
from .oracle import brute_maxla
from .solvers import solve
from .treegen import ENUM_CAP, TreeStream, enumerate_free_trees, write_corpus

DEFAULT_SEED = 20240101
THREADS_ENV = "MAXLA_THREADS"


class UsageError(Exception):
    pass


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            k = int(env)
        except ValueError:
            raise UsageError(f"{THREADS_ENV} must be a positive integer, got {env!r}") from None
        if k < 1:
            raise UsageError(f"{THREADS_ENV} must be a positive integer, got {env!r}")
        return k
    return os.cpu_count() or 1


def parse_n_range(text: str) -> list[int]:
    """``7``, ``7..9`` or ``7,9,11``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}") from None
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}")
    return out


def _positive(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return k


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxla", description="Maximum linear arrangement of free trees.")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    def add_input(sp):
        sp.add_argument("input", nargs="?", default="-", help="edge-list file, '-' for stdin")

    def add_seed(sp):
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed (default {DEFAULT_SEED})")

    def add_output(sp):
        sp.add_argument("-o", "--output", default="-", help="output file, '-' for stdout")

    sp = sub.add_parser("solve", help="maximum arrangement of a tree")
    add_input(sp)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--fast", dest="mode", action="store_const", const="fast")
    sp.set_defaults(mode="exact")
    sp.add_argument("--threads", type=_positive, default=None,
                    help=f"search threads (default ${THREADS_ENV} or the CPU count)")
    sp.add_argument("--disable", action="append", default=[], choices=BnBOptions.rule_names(),
                    metavar="RULE", help="switch off a branch-and-bound rule (repeatable)")
    sp.add_argument("--bnb", action="store_true", help="always run the branch and bound")
    sp.add_argument("--all", action="store_true", help="print every maximum class")
    sp.add_argument("--stats", action="store_true", help="print search statistics")

    sp = sub.add_parser("oracle", help="maximum arrangement by brute force (n <= 10)")
    add_input(sp)
    sp.add_argument("--all", action="store_true", help="print every maximum class")

    sp = sub.add_parser("classify", help="tree class and potential thistles")
    add_input(sp)

    sp = sub.add_parser("enumerate", help="write every free tree on n vertices")
    sp.add_argument("--n", type=_positive, required=True)
    add_output(sp)

    sp = sub.add_parser("sample", help="write uniformly random free trees")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--count", type=_positive, required=True)
    add_seed(sp)
    add_output(sp)

    sp = sub.add_parser("stats", help="maximizability statistics over trees")
    sp.add_argument("--n", type=parse_n_range, required=True, help="e.g. 7..9")
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--exhaustive", dest="mode", action="store_const", const="exhaustive")
    src.add_argument("--sample", dest="mode", action="store_const", const="sample")
    sp.set_defaults(mode="exhaustive")
    sp.add_argument("--count", type=_positive, default=1000, help="trees per n when sampling")
    sp.add_argument("--solver", choices=("auto", "oracle", "bnb"), default="auto")
    sp.add_argument("--table", default="classes",
                    choices=("classes", "two-linear", "conditioning", *sorted(METRICS)))
    sp.add_argument("--format", choices=("csv", "jsonl", "tsv"), default=None,
                    help="csv by default; tsv for distributions")
    sp.add_argument("--workers", type=_positive, default=1, help="worker processes")
    add_seed(sp)
    add_output(sp)

    sp = sub.add_parser("verify", help="run an invariant suite")
    sp.add_argument("--suite", choices=("oracle", "swap-lemma", "signatures"), required=True)
    sp.add_argument("--cases", type=_positive, default=1000)
    sp.add_argument("--max-n", type=_positive, default=None,
                    help="largest tree size (oracle: 9, fuzz suites: 12)")
    add_seed(sp)
    return p


# ---------------------------------------------------------------- helpers

def _read_graph(path: str) -> Graph:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def _read_tree(path: str) -> FreeTree:
    g = _read_graph(path)
    if not isinstance(g, FreeTree):
        raise UsageError("input is not a tree")
    return g


class _Output:
    def __init__(self, path: str, stdout: TextIO):
        self.path, self.stdout, self.fh = path, stdout, None

    def __enter__(self) -> TextIO:
        if self.path == "-":
            return self.stdout
        try:
            self.fh = open(self.path, "w", newline="")
        except OSError as exc:
            raise UsageError(f"cannot write {self.path}: {exc.strerror}") from None
        return self.fh

    def __exit__(self, *exc):
        if self.fh:
            self.fh.close()


# ---------------------------------------------------------------- verbs

def cmd_solve(args, out: TextIO) -> int:
    t = _read_tree(args.input)
    threads = args.threads or default_threads()
    opts = {name: False for name in args.disable}
    opts["threads"] = threads
    if args.bnb:
        r = bnb_solve(t, BnBOptions(**opts))
    else:
        r = solve(t, args.mode, **opts)
    out.write(f"{r.value}\n")
    for a in (r.witnesses if args.all else r.witnesses[:1]):
        out.write(format_arrangement(a) + "\n")
    out.write(f"{r.method}{'' if r.exact else ' (lower bound)'}\n")
    if args.stats:
        for k, v in r.stats.items():
            if isinstance(v, dict):
                v = " ".join(f"{a}={b}" for a, b in v.items())
            out.write(f"# {k}: {v}\n")
    return 0


def cmd_oracle(args, out: TextIO) -> int:
    g = _read_graph(args.input)
    r = brute_maxla(g)
    out.write(f"{r.value}\n")
    for a in (r.witnesses if args.all else r.witnesses[:1]):
        out.write(format_arrangement(a) + "\n")
    out.write(f"{r.method}\n")
    return 0


def cmd_classify(args, out: TextIO) -> int:
    t = _read_tree(args.input)
    pt = t.potential_thistles
    out.write(f"{classify(t)}\n")
    out.write(f"Phi {pt.count}\n")
    return 0


def cmd_enumerate(args, out: TextIO) -> int:
    if args.n > ENUM_CAP:
        raise UsageError(f"enumeration is capped at n = {ENUM_CAP}")
    with _Output(args.output, out) as fh:
        write_corpus(enumerate_free_trees(args.n), fh)
    return 0


def cmd_sample(args, out: TextIO) -> int:
    with _Output(args.output, out) as fh:
        write_corpus(TreeStream(args.n, "sample", args.count, args.seed), fh)
    return 0


def cmd_stats(args, out: TextIO) -> int:
    if args.mode == "exhaustive" and max(args.n) > ENUM_CAP:
        raise UsageError(f"enumeration is capped at n = {ENUM_CAP}; use --sample")
    if args.solver == "oracle" and max(args.n) > 10:
        raise UsageError("the oracle handles n <= 10 only")
    fmt = args.format
    if args.table == "classes":
        records = stats_table(args.n, args.solver, args.mode, args.count, args.seed, args.workers)
    else:
        outs = {n: survey(n, args.solver, args.mode, args.count, args.seed, args.workers) for n in args.n}
        if args.table == "two-linear":
            records = two_linear_table(outs)
        elif args.table == "conditioning":
            records = thistle_conditioning(outs)
        else:
            records = distributions(outs, args.table)
            fmt = fmt or "tsv"
    fmt = fmt or "csv"
    if fmt == "tsv" and args.table in ("classes", "two-linear", "conditioning"):
        raise UsageError("tsv output is only available for distributions")
    with _Output(args.output, out) as fh:
        if fmt == "csv":
            write_csv(records, fh, table_headers=args.table == "classes")
        elif fmt == "jsonl":
            write_jsonl(records, fh)
        else:
            write_tsv(records, fh)
    return 0


def _random_tree(n: int, rng: random.Random) -> FreeTree:
    # random recursive tree under a shuffled labelling
    perm = list(range(n))
    rng.shuffle(perm)
    return FreeTree(n, [(perm[v], perm[rng.randrange(v)]) for v in range(1, n)])


def _random_arrangement(n: int, rng: random.Random) -> Arrangement:
    order = list(range(n))
    rng.shuffle(order)
    return Arrangement(tuple(order))


def verify_oracle(max_n: int = 9) -> list[str]:
    failures = []
    for n in range(1, max_n + 1):
        for t in enumerate_free_trees(n):
            got, want = bnb_solve(t).value, brute_maxla(t).value
            if got != want:
                failures.append(f"n={n} {t.edges}: branch and bound {got}, brute force {want}")
    return failures


def verify_swap_lemma(cases: int, seed: int, max_n: int = 12) -> list[str]:
    rng = random.Random(seed)
    failures = []
    for _ in range(cases):
        n = rng.randint(2, max_n)
        t = _random_tree(n, rng)
        a = _random_arrangement(n, rng)
        i, j = sorted(rng.sample(range(1, n + 1), 2))
        d = swap_deltas(t, a, i, j)
        b = swap(a, i, j)
        lev_a, lev_b = vertex_levels(t, a), vertex_levels(t, b)
        cut_a, cut_b = cut_signature(t, a), cut_signature(t, b)
        # level deltas are per vertex, indexed by the vertex's original position
        got_lev = tuple(lev_b[a.vertex_at(p)] - lev_a[a.vertex_at(p)] for p in range(1, n + 1))
        got_cut = tuple(y - x for x, y in zip(cut_a, cut_b))
        if got_lev != tuple(d.level_deltas) or got_cut != tuple(d.cut_deltas):
            failures.append(f"{t.edges} {a.order} swap({i},{j})")
    return failures


def verify_signatures(cases: int, seed: int, max_n: int = 12) -> list[str]:
    rng = random.Random(seed)
    failures = []
    for _ in range(cases):
        n = rng.randint(1, max_n)
        t = _random_tree(n, rng)
        a = _random_arrangement(n, rng)
        sig = level_signature(t, a)
        d = cost(t, a)
        ok = (sum(sig) == 0 and d == sum(cut_signature(t, a)) and d == cost_from_levels(sig))
        if not ok:
            failures.append(f"{t.edges} {a.order}")
    return failures


def cmd_verify(args, out: TextIO) -> int:
    if args.suite == "oracle":
        max_n = args.max_n or 9
        if max_n > 10:
            raise UsageError("the oracle handles n <= 10 only")
        failures = verify_oracle(max_n)
        label = f"oracle equivalence, n <= {max_n}"
    elif args.suite == "swap-lemma":
        failures = verify_swap_lemma(args.cases, args.seed, args.max_n or 12)
        label = f"swap deltas, {args.cases} cases"
    else:
        failures = verify_signatures(args.cases, args.seed, args.max_n or 12)
        label = f"signature identities, {args.cases} cases"
    for f in failures[:20]:
        out.write(f"FAIL {f}\n")
    out.write(f"{label}: {len(failures)} failures\n")
    return 1 if failures else 0


_COMMANDS = {
    "solve": cmd_solve, "oracle": cmd_oracle, "classify": cmd_classify,
    "enumerate": cmd_enumerate, "sample": cmd_sample, "stats": cmd_stats, "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.verb](args, stdout)
    except (UsageError, GraphError, ValueError) as exc:
        stderr.write(f"maxla {args.verb}: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
