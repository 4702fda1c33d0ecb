"""Command-line interface.

Data goes to stdout (or --out files); progress and diagnostics go to
stderr.  Exit codes: 0 success, 2 usage errors, 3 input-data violations,
4 guard refusals.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import kernels, verify
from .distributions import distribution_csv, exact_distribution
from .errors import (
    GeneralPositionError,
    GuardError,
    InvalidForestError,
    PointsFileError,
    SingularSystemError,
    TreecrossError,
)
from .geometry import (
    ConvexConfig,
    CoordinateConfig,
    kn_crossing_pairs,
    load_point_config,
    rectilinear_crossing_number,
)
from .montecarlo import run_experiment, save_report
from .stats import (
    closed_form_mean,
    closed_form_second_moment,
    cumulant_scaling_report,
    fit_laurent_polynomial,
    raw_moment,
    rationals_csv,
)
from .trees import (
    Forest,
    contains_forest,
    count_trees_containing,
    enumerate_trees,
    forest_probability,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_GUARD = 4


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def _status(msg: str) -> None:
    print(msg, file=sys.stderr)


def _resolve_config(args) -> ConvexConfig | CoordinateConfig:
    if getattr(args, "points", None):
        return load_point_config(args.points)
    n = getattr(args, "n", None)
    if n is None:
        raise ValueError("--n is required with --convex")
    return ConvexConfig(n)


def _add_config_flags(parser: argparse.ArgumentParser, need_n: bool = True) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--convex", action="store_true",
                       help="labels in convex position in label order")
    group.add_argument("--points", metavar="FILE",
                       help="point-set file: one 'x y' integer pair per line")
    if need_n:
        parser.add_argument("--n", type=int, help="number of labels (with --convex)")


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
        _status(f"wrote {out}")
    else:
        sys.stdout.write(text)


def cmd_dist(args) -> int:
    config = _resolve_config(args)
    progress = (lambda done, total: _status(f"shard {done + 1}/{total} done")) \
        if args.verbose else None
    dist = exact_distribution(config, num_shards=args.shards, force=args.force,
                              progress=progress)
    _write_or_print(distribution_csv(dist), args.out)
    return EXIT_OK


def cmd_moments(args) -> int:
    rows = []
    entries = []
    for n in range(1, args.n_max + 1):
        dist = exact_distribution(ConvexConfig(n), num_shards=args.shards,
                                  force=args.force)
        values = [raw_moment(dist, j) for j in range(1, args.k + 1)]
        closed = {1: closed_form_mean(n)}
        if args.k >= 2:
            closed[2] = closed_form_second_moment(n)
        cells = []
        for j, val in enumerate(values, start=1):
            cell = _fmt(val)
            if j in closed:
                cell += " MATCH" if val == closed[j] else \
                    f" MISMATCH(closed {_fmt(closed[j])})"
            cells.append(f"m{j}={cell}")
            entries.append((f"m{j}_n{n}", val))
        rows.append(f"n={n}: " + "  ".join(cells))
    print("\n".join(rows))
    if args.out:
        Path(args.out).write_text(rationals_csv(entries))
        _status(f"wrote {args.out}")
    return EXIT_OK


def cmd_cumulants(args) -> int:
    report = cumulant_scaling_report(args.n_min, args.n_max, args.k_max,
                                     num_shards=args.shards, force=args.force)
    entries = []
    for row in report.rows:
        cells = []
        for k, (c, ratio) in enumerate(zip(row.cumulants, row.normalized), start=1):
            cells.append(f"C{k}={_fmt(c)} (|C{k}|/n^{1.5 * k:g}={ratio:.6g})")
            entries.append((f"c{k}_n{row.n}", c))
        print(f"n={row.n}: " + "  ".join(cells))
    slopes = ", ".join(
        f"C{k}: {s:.4f}" if s is not None else f"C{k}: n/a"
        for k, s in enumerate(report.slopes, start=1))
    print(f"log-log growth slopes over n={args.n_min}..{args.n_max}: {slopes}")
    if args.out:
        Path(args.out).write_text(rationals_csv(entries))
        _status(f"wrote {args.out}")
    return EXIT_OK


def cmd_fit(args) -> int:
    if args.moment == 1:
        source = closed_form_mean
    elif args.moment == 2:
        source = closed_form_second_moment
    else:
        raise ValueError("--moment must be 1 or 2 (no closed form beyond)")
    points = [(n, source(n)) for n in range(args.n_min, args.n_max + 1)]
    exponents = list(range(args.exp_max, args.exp_min - 1, -1))
    fit = fit_laurent_polynomial(points, exponents)
    for e, c in zip(fit.exponents, fit.coefficients):
        print(f"a[{e}] = {_fmt(c)}")
    worst = max(abs(r) for r in fit.residuals)
    print(f"residuals: {'all zero' if worst == 0 else 'max |r| = ' + _fmt(worst)}")
    return EXIT_OK


def cmd_crnumber(args) -> int:
    config = _resolve_config(args)
    n = config.n
    crbar = rectilinear_crossing_number(config)
    maximum = math.comb(n, 4)
    ratio = Fraction(crbar, maximum) if maximum else Fraction(0)
    print(f"n = {n}")
    print(f"crossing number = {crbar}")
    print(f"C(n,4) = {maximum}")
    print(f"ratio = {_fmt(ratio)} ({float(ratio):.6f})" if maximum
          else "ratio = 0 (fewer than 4 points)")
    if isinstance(config, CoordinateConfig):
        pairs = kn_crossing_pairs(config)
        agree = pairs == crbar
        print(f"segment-pair oracle = {pairs} ({'agrees' if agree else 'DISAGREES'})")
        if not agree:  # cannot happen unless a kernel is broken
            return 1
    return EXIT_OK


def _parse_edges(spec: str) -> list[tuple[int, int]]:
    edges = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        parts = token.split("-")
        if len(parts) != 2:
            raise ValueError(f"bad edge {token!r}; expected 'a-b'")
        edges.append((int(parts[0]), int(parts[1])))
    if not edges:
        raise ValueError("no edges given")
    return edges


def cmd_forest_prob(args) -> int:
    forest = Forest.from_edges(args.n, _parse_edges(args.edges))
    count = count_trees_containing(args.n, forest)
    prob = forest_probability(args.n, forest)
    print(f"containing trees = {count}")
    print(f"probability = {_fmt(prob)}")
    if args.n <= 7:
        brute = sum(contains_forest(t, forest) for t in enumerate_trees(args.n))
        print(f"brute force = {brute} ({'MATCH' if brute == count else 'MISMATCH'})")
        if brute != count:
            return 1
    else:
        _status("brute-force confirmation skipped (n > 7)")
    return EXIT_OK


def cmd_sample(args) -> int:
    config = _resolve_config(args)
    report = run_experiment(config, args.samples, args.seed,
                            num_streams=args.streams)
    if args.out:
        save_report(report, args.out)
        _status(f"wrote {args.out}")
    else:
        sys.stdout.write(report.to_json())
    if args.hist_csv:
        Path(args.hist_csv).write_text(report.histogram_csv())
        _status(f"wrote {args.hist_csv}")
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = ("tables", "formulas") if args.suite == "all" else (args.suite,)
    results = verify.run_verify(suites, max_n=args.max_n, num_shards=args.shards,
                                progress=_status)
    for r in results:
        print(r.line())
    failed = verify.verify_failed(results)
    counts = {s: sum(1 for r in results if r.status == s)
              for s in (verify.PASS, verify.FAIL, verify.DEVIATION)}
    _status(f"{counts[verify.PASS]} passed, {counts[verify.FAIL]} failed, "
            f"{counts[verify.DEVIATION]} documented deviations "
            f"[{kernels.BACKEND} kernel]")
    return 1 if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treecross",
        description="Exact and Monte Carlo crossing statistics of uniform "
                    "random labelled trees on point sets.")
    parser.add_argument("--verbose", action="store_true",
                        help="progress messages on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="exact crossing-count distribution")
    _add_config_flags(p)
    p.add_argument("--shards", type=int, default=4)
    p.add_argument("--force", action="store_true",
                   help="override the enumeration size guard")
    p.add_argument("--out", metavar="CSV", help="write 'k,count' CSV here")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("moments", help="exact moments vs closed forms")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--convex", action="store_true", required=True)
    p.add_argument("--k", type=int, default=2, help="highest moment order")
    p.add_argument("--shards", type=int, default=4)
    p.add_argument("--force", action="store_true")
    p.add_argument("--out", metavar="CSV",
                   help="write 'name,numerator,denominator' CSV here")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("cumulants", help="exact cumulant scaling report")
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--shards", type=int, default=4)
    p.add_argument("--force", action="store_true")
    p.add_argument("--out", metavar="CSV")
    p.set_defaults(func=cmd_cumulants)

    p = sub.add_parser("fit", help="recover Laurent coefficients exactly")
    p.add_argument("--moment", type=int, default=2, choices=(1, 2))
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--exp-min", type=int, default=-4)
    p.add_argument("--exp-max", type=int, default=4)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("crnumber", help="rectilinear crossing number")
    _add_config_flags(p)
    p.set_defaults(func=cmd_crnumber)

    p = sub.add_parser("forest-prob",
                       help="trees containing a forest, and the probability")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--edges", required=True, metavar='"a-b,c-d"')
    p.set_defaults(func=cmd_forest_prob)

    p = sub.add_parser("sample", help="Monte Carlo experiment report")
    _add_config_flags(p)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--streams", type=int, default=16)
    p.add_argument("--out", metavar="JSON")
    p.add_argument("--hist-csv", metavar="CSV")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="regression suite against fixtures")
    p.add_argument("--suite", choices=("tables", "formulas", "all"),
                   default="all")
    p.add_argument("--max-n", type=int, default=9)
    p.add_argument("--shards", type=int, default=4)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardError as exc:
        _status(f"refused: {exc}")
        return EXIT_GUARD
    except (GeneralPositionError, PointsFileError, InvalidForestError) as exc:
        _status(f"bad input data: {exc}")
        return EXIT_DATA
    except (ValueError, SingularSystemError) as exc:
        _status(f"error: {exc}")
        return EXIT_USAGE
    except TreecrossError as exc:
        _status(f"error: {exc}")
        return EXIT_DATA
    except OSError as exc:
        _status(f"i/o error: {exc}")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
