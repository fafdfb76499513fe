"""Command-line surface: every library operation behind one argparse tree.

Exit codes:
    0  verified / success
    1  the checked condition fails, or the bound is not applicable
    2  usage errors, unreadable or malformed input, resource caps
    3  internal inconsistency: a proved step failed, which is a bug in this
       package, never a property of the input

Reports are JSON on stdout with every exact value rendered in the coefficient
grammar; the only approximate field is `thm1_shape_approx`, which is labeled
as such.  Polynomial and point-set payloads accept `-` for standard input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .acceptance import run_all
from .errors import (
    DegreeTooSmall,
    FatalInconsistency,
    FormatError,
    PreconditionFailed,
    ResourceLimit,
    ShapeError,
    ZeroPolynomial,
)
from .families import gen_f, gen_g, gen_h, verify_substitution_identity
from .geometry import (
    convex_hull_vertices,
    max_convex_chain,
    minkowski_sum,
    parse_pointset,
    point_as_dict,
)
from .limits import load_env_limits
from .oracle import ExperimentConfig, search_extremal_kurtz
from .polynomials import (
    check_kurtz,
    check_newton,
    check_strong,
    format_coefficient,
    format_polynomial,
    parse_polynomial,
    parse_signed_coeffs,
    sturm_distinct_real_roots,
)
from .sps import (
    bounds_report,
    build_lifting,
    expand,
    format_sps,
    params,
    parse_sps,
    split_products,
    sparse_factor_witness,
    verify_lifting,
    verify_theorem2,
)

DEFAULT_TAU = Fraction(4)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _fraction_arg(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from exc
    return value


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _points_csv(points) -> str:
    lines = [f"{p.x},{p.r.mantissa},{p.r.pow2},{p.tau_halves}" for p in points]
    return "\n".join(lines) + ("\n" if lines else "")


def _pick_tau(flag: Fraction | None, from_file: Fraction | None) -> Fraction:
    if flag is not None:
        return flag
    if from_file is not None:
        return from_file
    return DEFAULT_TAU


# ---------------------------------------------------------------------------
# handlers, one per subcommand
# ---------------------------------------------------------------------------


def _cmd_check_newton(args) -> int:
    rep = check_newton(parse_polynomial(_read_text(args.path)))
    _print_json(
        {
            "holds_weak": rep.holds_weak,
            "holds_strict": rep.holds_strict,
            "failures": list(rep.failures),
        }
    )
    return 0 if rep.holds_weak else 1


def _cmd_check_kurtz(args) -> int:
    rep = check_kurtz(parse_polynomial(_read_text(args.path)))
    _print_json({"holds": rep.holds, "failures": list(rep.failures)})
    return 0 if rep.holds else 1


def _cmd_check_strong(args) -> int:
    rep = check_strong(parse_polynomial(_read_text(args.path)))
    _print_json({"holds": rep.holds, "failures": list(rep.failures)})
    return 0 if rep.holds else 1


def _cmd_sturm(args) -> int:
    count = sturm_distinct_real_roots(parse_signed_coeffs(_read_text(args.path)))
    _print_json({"distinct_real_roots": count})
    return 0


def _cmd_expand(args) -> int:
    e, _ = parse_sps(_read_text(args.path))
    p = expand(e)
    if args.format == "json":
        _print_json(
            {
                "degree": p.degree,
                "coefficients": [
                    [i, format_coefficient(c)]
                    for i, c in enumerate(p.coeffs)
                    if not c.is_zero
                ],
            }
        )
    else:
        sys.stdout.write(format_polynomial(p))
    return 0


def _cmd_params(args) -> int:
    e, _ = parse_sps(_read_text(args.path))
    p = params(e)
    _print_json({"k": p.k, "m": p.m, "t": p.t, "d": p.d})
    return 0


def _cmd_verify_thm2(args) -> int:
    e, _ = parse_sps(_read_text(args.path))
    v = verify_theorem2(e)
    _print_json(
        {
            "applicable": v.applicable,
            "bound_holds": v.bound_holds,
            "k": v.params.k,
            "m": v.params.m,
            "t": v.params.t,
            "d": v.params.d,
        }
    )
    return 0 if v.applicable and v.bound_holds else 1


def _cmd_witness(args) -> int:
    e, _ = parse_sps(_read_text(args.path))
    w = sparse_factor_witness(e)
    _print_json(
        {
            "product_index": w.product_index,
            "factor_index": w.factor_index,
            "dominant_exponents": list(w.dominant_exponents),
            "factor_terms": w.factor_terms,
            "threshold": str(w.threshold),
        }
    )
    return 0


def _artifacts_json(art) -> dict:
    return {
        "tau": str(art.tau),
        "max_step": art.max_step,
        "stride": art.stride,
        "peaks": [format_coefficient(c) for c in art.peaks],
        "steps": list(art.steps),
        "chain": [point_as_dict(p) for p in art.chain],
        "step_grid": [point_as_dict(p) for p in art.step_grid],
        "unit_grid": [point_as_dict(p) for p in art.unit_grid],
        "stride_grid": [point_as_dict(p) for p in art.stride_grid],
        "left_sets": [[point_as_dict(p) for p in s] for s in art.left_sets],
        "right_sets": [[point_as_dict(p) for p in s] for s in art.right_sets],
    }


def _cmd_lift(args) -> int:
    e, file_tau = parse_sps(_read_text(args.path))
    art = build_lifting(e, _pick_tau(args.tau, file_tau))
    _print_json(_artifacts_json(art))
    return 0


def _cmd_verify_lift(args) -> int:
    e, file_tau = parse_sps(_read_text(args.path))
    art = build_lifting(e, _pick_tau(args.tau, file_tau))
    v = verify_lifting(art)
    _print_json(
        {
            "holds": v.holds,
            "chain_in_cover": v.chain_in_cover,
            "chain_independent": v.chain_independent,
            "grid_covered": v.grid_covered,
            "size": v.size,
        }
    )
    return 0


def _cmd_split(args) -> int:
    e, file_tau = parse_sps(_read_text(args.path))
    sys.stdout.write(format_sps(split_products(e), file_tau))
    return 0


def _cmd_bounds(args) -> int:
    e, _ = parse_sps(_read_text(args.path))
    rep = bounds_report(e)
    _print_json(
        {
            "d": rep.d,
            "trivial": rep.trivial,
            "thm2": rep.thm2,
            "thm1_shape_approx": rep.thm1_shape,
        }
    )
    return 0


def _cmd_hull(args) -> int:
    vertices = convex_hull_vertices(parse_pointset(_read_text(args.path)), args.tau)
    if args.format == "csv":
        sys.stdout.write(_points_csv(vertices))
    else:
        _print_json(
            {"size": len(vertices), "vertices": [point_as_dict(p) for p in vertices]}
        )
    return 0


def _cmd_minkowski(args) -> int:
    total = parse_pointset(_read_text(args.paths[0]))
    for path in args.paths[1:]:
        total = minkowski_sum(total, parse_pointset(_read_text(path)))
    if args.format == "json":
        _print_json(
            {"size": len(total), "points": [point_as_dict(p) for p in total]}
        )
    else:
        sys.stdout.write(_points_csv(total))
    return 0


def _cmd_chain(args) -> int:
    size, witness = max_convex_chain(parse_pointset(_read_text(args.path)), args.tau)
    _print_json(
        {"size": size, "vertices": [point_as_dict(p) for p in witness]}
    )
    return 0


def _cmd_gen_g(args) -> int:
    sys.stdout.write(format_polynomial(gen_g(args.n, args.s)))
    return 0


def _cmd_gen_f(args) -> int:
    sys.stdout.write(format_polynomial(gen_f(args.n)))
    return 0


def _cmd_gen_h(args) -> int:
    h = gen_h(args.n)
    _print_json({"n": h.n, "monomials": h.monomials_json()})
    return 0


def _cmd_verify_identity(args) -> int:
    v = verify_substitution_identity(args.n)
    _print_json({"n": v.n, "coefficients": v.coefficients, "matches": v.matches})
    return 0


def _cmd_search(args) -> int:
    cfg = ExperimentConfig(
        seed=args.seed,
        trials=args.trials,
        max_k=args.max_k,
        max_m=args.max_m,
        max_t=args.max_t,
        max_exponent=args.max_exponent,
        coeff_pow=args.coeff_pow,
        tau=args.tau if args.tau is not None else DEFAULT_TAU,
    )

    def emit(found):
        line = {
            "trial": found.trial,
            "d": found.d,
            "k": found.params.k,
            "m": found.params.m,
            "t": found.params.t,
            "trivial": found.trivial,
            "thm2": found.params.k * found.params.m * found.params.t,
            "thm1_shape_approx": found.thm1_shape,
            "expression": json.loads(format_sps(found.expression)),
        }
        print(json.dumps(line, separators=(",", ":")))

    best = search_extremal_kurtz(cfg, on_improvement=emit)
    summary = {
        "trials": cfg.trials,
        "hits": best.hits if best else 0,
        "best_d": best.d if best else None,
    }
    print(json.dumps(summary, separators=(",", ":")))
    return 0


def _cmd_selftest(args) -> int:
    results = run_all(emit=print)
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------
# parser assembly and entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="logconcave",
        description="Exact verification of log-concavity conditions, degree "
        "bounds for sums of products of sparse polynomials, and the lifted "
        "convex-chain construction behind them.",
    )
    sub = top.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    def add_tau(p, required_default=DEFAULT_TAU, note=""):
        p.add_argument(
            "--tau",
            type=_fraction_arg,
            default=None,
            help=f"rational scale factor (default {required_default}{note})",
        )

    p = add("check-newton", _cmd_check_newton, "ratio-weighted log-concavity check")
    p.add_argument("path", help="polynomial text file, or - for stdin")

    p = add("check-kurtz", _cmd_check_kurtz, "strict log-concavity with factor 4")
    p.add_argument("path")

    p = add("check-strong", _cmd_check_strong, "strict log-concavity with factor d^(2d)")
    p.add_argument("path")

    p = add("sturm", _cmd_sturm, "count distinct real roots (signed input allowed)")
    p.add_argument("path")

    p = add("expand", _cmd_expand, "expand a sum of products exactly")
    p.add_argument("path", help="expression JSON file, or - for stdin")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("params", _cmd_params, "shape parameters k, m, t, d")
    p.add_argument("path")

    p = add("verify-thm2", _cmd_verify_thm2, "degree bound d <= k*m*t for strong expansions")
    p.add_argument("path")

    p = add("witness", _cmd_witness, "extract the dense-factor witness")
    p.add_argument("path")

    p = add("lift", _cmd_lift, "build the lifted chain and its grids")
    p.add_argument("path")
    add_tau(p, note=", overriding any tau in the file")

    p = add("verify-lift", _cmd_verify_lift, "build and verify the lifted chain")
    p.add_argument("path")
    add_tau(p, note=", overriding any tau in the file")

    p = add("split", _cmd_split, "regroup every product row into two factors")
    p.add_argument("path")

    p = add("bounds", _cmd_bounds, "report-only bound summary (no assertions)")
    p.add_argument("path")

    p = add("hull", _cmd_hull, "strict convex-hull vertices of a lifted point set")
    p.add_argument("path", help="point-set CSV file, or - for stdin")
    p.add_argument("--tau", type=_fraction_arg, default=DEFAULT_TAU)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = add("minkowski", _cmd_minkowski, "pointwise sum of two or more point sets")
    p.add_argument("paths", nargs="+", help="point-set CSV files")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = add("chain", _cmd_chain, "largest convexly independent subset")
    p.add_argument("path")
    p.add_argument("--tau", type=_fraction_arg, default=DEFAULT_TAU)

    p = add("gen-g", _cmd_gen_g, "exponential-gap family member")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)

    p = add("gen-f", _cmd_gen_f, "strong family member (s = n*2^(n+1))")
    p.add_argument("--n", type=int, required=True)

    p = add("gen-h", _cmd_gen_h, "multilinear carrier monomials")
    p.add_argument("--n", type=int, required=True)

    p = add("verify-identity", _cmd_verify_identity, "carrier substitution identity")
    p.add_argument("--n", type=int, required=True)

    p = add("search", _cmd_search, "randomized extremal-degree search (report-only)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--max-t", type=int, default=4)
    p.add_argument("--max-exponent", type=int, default=8)
    p.add_argument("--coeff-pow", type=int, default=8)
    add_tau(p)

    add("selftest", _cmd_selftest, "run the full acceptance gate")

    return top


def main(argv=None) -> int:
    load_env_limits()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.handler(args)
    except FatalInconsistency as exc:
        print(f"fatal inconsistency: {exc}", file=sys.stderr)
        return 3
    except (PreconditionFailed, DegreeTooSmall) as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return 1
    except (FormatError, ShapeError, ResourceLimit, ZeroPolynomial) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
