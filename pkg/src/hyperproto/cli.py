"""Command-line interface.

    hyperproto generate --scheme rm -K 100 -n 64 --out rm.csv
    hyperproto bounds -K 100 -n 16 32 64 99
    hyperproto stats rm.csv --hist-out rm_hist.csv
    hyperproto sweep --schemes rm bch lse avg -K 100 -n 16 32 64 128 --seeds 0 1 2

Exit codes: 0 success, 2 invalid arguments or unreadable input, 3 infeasible
construction.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import achievable_max_cosine, bounds_report, rankin_converse
from .codebook_io import CodebookFormatError, dumps, read_codebook
from .construct import SCHEMES, build_codebook
from .exceptions import InfeasibleError
from .optimize import OptimizerConfig
from .sphere_map import Codebook, separation_stats

log = logging.getLogger("hyperproto")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3

RANDOMIZED = {"random", "lse", "avg"}
SWEEP_FIELDS = [
    "scheme", "K", "n", "status", "max_cosine", "max_cosine_min", "max_cosine_max",
    "mean_cosine", "gv_achievable", "rankin_converse", "certified_bound", "num_seeds", "wall_time_ms",
]


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _optimizer_config(args) -> OptimizerConfig:
    return OptimizerConfig(
        epochs=args.epochs,
        learning_rate=args.lr,
        momentum=args.momentum,
        t_start=args.t_start,
        t_end=args.t_end,
    )


def _table(rows: list[dict], fields: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if r.get(k) is None else r.get(k)) for k in fields})
    return buf.getvalue()


# --- commands ----------------------------------------------------------------


def cmd_generate(args) -> Codebook:
    cb = build_codebook(
        args.scheme,
        args.classes,
        args.dim,
        seed=args.seed,
        assignment_seed=args.assignment_seed,
        allow_puncture=args.allow_puncture,
        optimizer=_optimizer_config(args),
    )
    _emit(dumps(cb, args.format), args.out)
    if args.out:
        log.info("wrote %s codebook K=%d n=%d to %s", cb.scheme.value, cb.num_classes, cb.dim, args.out)
    return cb


def cmd_bounds(args) -> list[dict]:
    rows = [bounds_report(args.classes, n).to_dict() for n in args.dim]
    fields = ["K", "n", "k", "gv_dmin", "achievable_max_cosine", "converse_min_of_max_cosine",
              "onehot_reference", "tightened_achievable"]
    _emit(_table(rows, fields, args.format), args.out)
    return rows


def cmd_stats(args) -> dict:
    cb = read_codebook(args.codebook)
    st = separation_stats(cb, args.bins)
    doc = {
        "scheme": cb.scheme.value,
        "K": cb.num_classes,
        "n": cb.dim,
        "certified_max_cosine_bound": cb.certified_max_cosine,
        **st.to_dict(),
    }
    if cb.certified_max_cosine is not None:
        doc["certificate_holds"] = bool(st.max_cosine <= cb.certified_max_cosine + 1e-12)
    _emit(json.dumps(doc, indent=1) + "\n", args.out)
    if args.hist_out:
        edges, counts = st.bin_edges, st.bin_counts
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["bin_left", "bin_right", "count"])
        for lo, hi, c in zip(edges[:-1], edges[1:], counts):
            w.writerow([repr(float(lo)), repr(float(hi)), int(c)])
        Path(args.hist_out).write_text(buf.getvalue())
    return doc


def sweep_point(scheme: str, K: int, n: int, seeds: list[int], args) -> dict:
    row = {"scheme": scheme, "K": K, "n": n, "rankin_converse": rankin_converse(K)}
    try:
        row["gv_achievable"] = achievable_max_cosine(n, K)
    except InfeasibleError:
        row["gv_achievable"] = None
    run_seeds = seeds if scheme in RANDOMIZED else [seeds[0] if seeds else 0]
    maxes, means = [], []
    start = time.perf_counter()
    try:
        for s in run_seeds:
            cb = build_codebook(
                scheme, K, n,
                seed=s,
                assignment_seed=args.assignment_seed,
                allow_puncture=args.allow_puncture,
                optimizer=_optimizer_config(args),
            )
            st = separation_stats(cb, args.bins)
            maxes.append(st.max_cosine)
            means.append(st.mean_cosine)
            row["certified_bound"] = cb.certified_max_cosine
    except (InfeasibleError, ValueError) as exc:
        row["status"] = f"infeasible: {exc}"
        return row
    row["wall_time_ms"] = round(1000.0 * (time.perf_counter() - start) / len(run_seeds), 3)
    row["status"] = "ok"
    row["num_seeds"] = len(run_seeds)
    row["max_cosine"] = float(np.mean(maxes))
    row["max_cosine_min"] = float(np.min(maxes))
    row["max_cosine_max"] = float(np.max(maxes))
    row["mean_cosine"] = float(np.mean(means))
    return row


def cmd_sweep(args) -> list[dict]:
    rows = []
    for scheme in sorted(set(args.schemes)):
        for n in sorted(set(args.dim)):
            rows.append(sweep_point(scheme, args.classes, n, args.seeds, args))
            log.info("%s n=%d: %s", scheme, n, rows[-1]["status"])
    _emit(_table(rows, SWEEP_FIELDS, args.format), args.out)
    return rows


# --- parser ----------------------------------------------------------------


def _add_optimizer_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("optimizer (lse/avg)")
    g.add_argument("--epochs", type=int, default=1000)
    g.add_argument("--lr", type=float, default=0.1)
    g.add_argument("--momentum", type=float, default=0.9)
    g.add_argument("--t-start", type=float, default=1.0)
    g.add_argument("--t-end", type=float, default=None, help="final temperature (default: K)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperproto", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="construct a codebook and write it to a file")
    g.add_argument("--scheme", required=True, choices=SCHEMES)
    g.add_argument("-K", "--classes", type=int, required=True)
    g.add_argument("-n", "--dim", type=int, default=None)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--assignment-seed", type=int, default=None)
    g.add_argument("--allow-puncture", action="store_true")
    g.add_argument("--format", choices=["csv", "json"], default="csv")
    g.add_argument("--out", default=None)
    _add_optimizer_flags(g)
    g.set_defaults(func=cmd_generate)

    b = sub.add_parser("bounds", help="achievable and converse bounds for (K, n)")
    b.add_argument("-K", "--classes", type=int, required=True)
    b.add_argument("-n", "--dim", type=int, nargs="+", required=True)
    b.add_argument("--format", choices=["csv", "json"], default="csv")
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("stats", help="pairwise cosine statistics of a codebook file")
    s.add_argument("codebook")
    s.add_argument("--bins", type=int, default=201)
    s.add_argument("--hist-out", default=None)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_stats)

    w = sub.add_parser("sweep", help="max cosine over dimensions for several schemes")
    w.add_argument("--schemes", nargs="*", default=[], choices=SCHEMES)
    w.add_argument("-K", "--classes", type=int, required=True)
    w.add_argument("-n", "--dim", type=int, nargs="+", required=True)
    w.add_argument("--seeds", type=int, nargs="+", default=[0])
    w.add_argument("--assignment-seed", type=int, default=None)
    w.add_argument("--allow-puncture", action="store_true")
    w.add_argument("--bins", type=int, default=201)
    w.add_argument("--format", choices=["csv", "json"], default="csv")
    w.add_argument("--out", default=None)
    _add_optimizer_flags(w)
    w.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if getattr(args, "classes", 2) < 2:
            raise ValueError("need at least two classes")
        args.func(args)
    except InfeasibleError as exc:
        print(f"hyperproto: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (CodebookFormatError, ValueError, OSError) as exc:
        print(f"hyperproto: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
