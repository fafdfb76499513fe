#!/usr/bin/env python3
"""Sweep the extremal-degree search over sparsity budgets and emit plot data.

For each term-count budget t in the sweep, runs the randomized search for the
largest expanded degree d among strongly log-concave sums of products, and
writes one JSON line per budget with the best degree found next to the trivial
and product-parameter bounds.  Feed the output to any JSONL-aware plotting
tool to draw d-versus-bound curves.

Usage:
    python3 scripts/search_experiment.py --seed 7 --trials 2000 --sweep-t 2,3,4,5,6
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from logconcave import ExperimentConfig, search_extremal_kurtz


def parse_args(argv=None) -> argparse.Namespace:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=1000, help="trials per sweep point")
    ap.add_argument("--max-k", type=int, default=3)
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument(
        "--sweep-t",
        default="2,3,4,5",
        help="comma-separated term-count budgets to sweep",
    )
    ap.add_argument("--tau", type=Fraction, default=Fraction(4))
    ap.add_argument(
        "-o",
        "--output",
        default="-",
        help="output path for JSON lines ('-' for stdout)",
    )
    return ap.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    budgets = sorted({int(x) for x in args.sweep_t.split(",") if x.strip()})
    sink = sys.stdout if args.output == "-" else open(args.output, "w")
    try:
        for t in budgets:
            cfg = ExperimentConfig(
                seed=args.seed,
                trials=args.trials,
                max_k=args.max_k,
                max_m=args.max_m,
                max_t=t,
                tau=args.tau,
            )
            best = search_extremal_kurtz(cfg)
            row = {
                "max_t": t,
                "trials": cfg.trials,
                "hits": best.hits if best else 0,
                "best_d": best.d if best else None,
                "best_k": best.params.k if best else None,
                "best_m": best.params.m if best else None,
                "best_t": best.params.t if best else None,
                "trivial": best.trivial if best else None,
                "thm2": best.params.k * best.params.m * best.params.t if best else None,
                "thm1_shape_approx": best.thm1_shape if best else None,
            }
            sink.write(json.dumps(row, separators=(",", ":")) + "\n")
            sink.flush()
    finally:
        if sink is not sys.stdout:
            sink.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
