"""Command-line interface: ``tukeymedian <command> ...``.

Exit codes: 0 success, 1 input/output error (unreadable or malformed files),
2 precondition violation (degenerate data without ``--force``, bad levels,
``n <= p``, unknown recipes), 3 a verification suite failed.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import datasets
from .datasets import (
    DatasetError,
    dumps,
    median_json,
    rational,
    region_json,
    unlimited_int_digits,
    write_atomic,
)
from .depth import tukey_depth
from .geometry import PointCloud
from .median import (
    PreconditionError,
    Report,
    depth_bounds,
    max_depth,
    search_savings,
    tukey_median,
    verify_prop1,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)
from .region import depth_region
from . import svg

EXIT_OK, EXIT_IO, EXIT_PRECONDITION, EXIT_VERIFY = 0, 1, 2, 3
SUITES = ("thm1", "thm2", "thm3", "prop1")
PUBLISHED_CLAIM = "search interval reduced by more than one quarter (n = 5p, p = 5)"


# --- helpers --------------------------------------------------------------------

def _load(args) -> datasets.NamedCloud:
    if args.input is not None:
        return datasets.load_csv(args.input, header=args.header)
    return datasets.from_recipe(args.gen)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        write_atomic(out, text)


def _parse_point(text: str, p: int) -> tuple[Fraction, ...]:
    try:
        point = tuple(Fraction(f.strip()) for f in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise PreconditionError(f"cannot parse point {text!r}") from None
    if len(point) != p:
        raise PreconditionError(f"point has {len(point)} coordinates, cloud has p={p}")
    return point


def _require_gp(named: datasets.NamedCloud, force: bool) -> None:
    if not force:
        named.cloud.require_general_position()


# --- commands -------------------------------------------------------------------

def cmd_depth(args) -> int:
    named = _load(args)
    _require_gp(named, args.force)
    x = _parse_point(args.point, named.cloud.p)
    d = tukey_depth(x, named.cloud, force=args.force)
    doc = {
        "schema_version": datasets.SCHEMA_VERSION,
        "point": [rational(c) for c in x],
        "kappa": d.kappa,
        "n": d.n,
        "lambda": f"{d.kappa}/{d.n}",
        "witness_direction": [rational(c) for c in d.witness],
        "degenerate": d.degenerate,
    }
    _emit(dumps(doc), args.out)
    return EXIT_OK


def cmd_median(args) -> int:
    named = _load(args)
    _require_gp(named, args.force)
    fmt = _plot_format(args.format, named.cloud)
    result = tukey_median(named.cloud, strategy=args.strategy, search=args.search, force=args.force)
    if fmt == "svg":
        _emit(svg.median_svg(result), args.out)
    else:
        _emit(dumps(median_json(result)), args.out)
    _maybe_svg(args, named.cloud, lambda: svg.median_svg(result))
    return EXIT_OK


def cmd_region(args) -> int:
    named = _load(args)
    cloud = named.cloud
    _require_gp(named, args.force)
    if not 1 <= args.kappa <= cloud.n:
        raise PreconditionError(f"--kappa must satisfy 1 <= kappa <= n = {cloud.n} "
                                "(level 0 is the whole space)")
    fmt = _plot_format(args.format, cloud)
    region = depth_region(cloud, args.kappa, force=args.force)
    if fmt == "svg":
        _emit(svg.region_svg(region), args.out)
    else:
        with unlimited_int_digits():
            doc = {"schema_version": datasets.SCHEMA_VERSION, "n": cloud.n, "p": cloud.p,
                   "degenerate": not cloud.in_general_position, **region_json(region)}
        _emit(dumps(doc), args.out)
    _maybe_svg(args, cloud, lambda: svg.region_svg(region))
    return EXIT_OK


def _plot_format(fmt: str, cloud: PointCloud) -> str:
    """SVG exists for planar clouds only; otherwise note it and fall back to JSON."""
    if fmt == "svg" and cloud.p != 2:
        print(f"note: not plottable, SVG output needs p = 2 (got p = {cloud.p}); writing JSON",
              file=sys.stderr)
        return "json"
    return fmt


def _maybe_svg(args, cloud: PointCloud, render) -> None:
    if getattr(args, "svg", None) is None:
        return
    if cloud.p != 2:
        print(f"note: not plottable, SVG output needs p = 2 (got p = {cloud.p}); skipped",
              file=sys.stderr)
        return
    write_atomic(args.svg, render())


def _report_json(r: Report) -> dict:
    return {"name": r.name, "status": r.status, "details": r.details}


def cmd_verify(args) -> int:
    named = _load(args)
    cloud = named.cloud
    suites = SUITES if args.suite == "all" else (args.suite,)
    degenerate = not cloud.in_general_position
    if degenerate and not args.force:
        cloud.require_general_position()
    reports = []
    if degenerate:
        reason = {"reason": "degenerate input; general position required"}
        reports = [{"name": s, "status": "skipped", "details": reason} for s in suites]
    else:
        result = tukey_median(cloud)
        for s in suites:
            if s == "thm1":
                r = verify_theorem1(result)
            elif s == "thm2":
                r = verify_theorem2(result)
            elif s == "thm3":
                r = verify_theorem3(result) if cloud.p >= 2 else \
                    Report("thm3", False, True, {"reason": "stated for p >= 2"})
            else:
                r = verify_prop1(cloud, result.kappa_star) if cloud.p >= 3 else \
                    Report("prop1", False, True, {"reason": "stated for p >= 3"})
            reports.append(_report_json(r))
    passed = all(r["status"] != "fail" for r in reports)
    doc = {"schema_version": datasets.SCHEMA_VERSION, "n": cloud.n, "p": cloud.p,
           "degenerate": degenerate, "suites": reports, "passed": passed}
    _emit(dumps(doc), args.out)
    return EXIT_OK if passed else EXIT_VERIFY


def _fraction_json(x: Fraction) -> dict:
    return {"exact": rational(x), "percent": f"{float(x * 100):.3f}"}


def bench(n: int, p: int, reps: int, seed: int) -> dict:
    """Per-rep maximal depth and regions computed by both scan strategies."""
    savings = search_savings(n, p)
    rows = []
    totals = {"dg92": 0, "thm1": 0}
    for rep in range(reps):
        cloud = datasets.gen_gaussian(n, p, seed + rep).cloud
        counts = {}
        kappas = set()
        for strategy in ("dg92", "thm1"):
            k, computed = max_depth(cloud, strategy)
            counts[strategy] = computed
            totals[strategy] += computed
            kappas.add(k)
        if len(kappas) != 1:
            raise AssertionError(f"strategies disagree on kappa_star: {sorted(kappas)}")
        rows.append({"rep": rep, "seed": seed + rep, "kappa_star": kappas.pop(),
                     "regions_computed": counts})
    every = all(r["regions_computed"]["thm1"] <= r["regions_computed"]["dg92"] for r in rows)
    saved = Fraction(totals["dg92"] - totals["thm1"], totals["dg92"]) if totals["dg92"] else Fraction(0)
    return {
        "schema_version": datasets.SCHEMA_VERSION,
        "n": n, "p": p, "reps": reps, "seed": seed,
        "bounds": savings["bounds"],
        "interval_length": savings["interval_length"],
        "interval_reduction": _fraction_json(savings["interval_reduction"]),
        "level_count": savings["level_count"],
        "level_reduction": _fraction_json(savings["level_reduction"]),
        "published_claim": PUBLISHED_CLAIM,
        "per_rep": rows,
        "aggregate": {
            "regions_computed": totals,
            "regions_reduction": _fraction_json(saved),
            "thm1_le_dg92_every_rep": every,
        },
    }


def cmd_bench(args) -> int:
    if args.reps < 1:
        raise PreconditionError("--reps must be positive")
    depth_bounds(args.n, args.p)
    _emit(dumps(bench(args.n, args.p, args.reps, args.seed)), args.out)
    return EXIT_OK


def cmd_gen(args) -> int:
    named = datasets.from_recipe(args.recipe)
    _emit(datasets.csv_text(named.cloud), args.out)
    return EXIT_OK


# --- parser ---------------------------------------------------------------------

def _add_input(sp: argparse.ArgumentParser) -> None:
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="input", metavar="CSV", help="read points from a CSV file")
    src.add_argument("--gen", metavar="RECIPE",
                     help="generate points: square4, triangle-center, "
                          "gaussian:n=..,p=..,seed=.., bound-attaining:p=..")
    sp.add_argument("--header", action="store_true", help="the CSV's first line is a header")
    sp.add_argument("--force", action="store_true",
                    help="compute on data that is not in general position (flagged degenerate)")
    sp.add_argument("--out", metavar="PATH", help="write the result here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tukeymedian", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("depth", help="exact depth of one point")
    _add_input(sp)
    sp.add_argument("--point", required=True, help="comma-separated coordinates")
    sp.set_defaults(func=cmd_depth)

    sp = sub.add_parser("median", help="deepest region and Tukey median")
    _add_input(sp)
    sp.add_argument("--strategy", choices=("dg92", "thm1"), default="thm1")
    sp.add_argument("--search", choices=("scan", "binary"), default="scan")
    sp.add_argument("--format", choices=("json", "svg"), default="json")
    sp.add_argument("--svg", metavar="PATH", help="also write an SVG plot (p = 2 only)")
    sp.set_defaults(func=cmd_median)

    sp = sub.add_parser("region", help="depth region at a level")
    _add_input(sp)
    sp.add_argument("--kappa", type=int, required=True, help="level in 1..n")
    sp.add_argument("--format", choices=("json", "svg"), default="json")
    sp.add_argument("--svg", metavar="PATH", help="also write an SVG plot (p = 2 only)")
    sp.set_defaults(func=cmd_region)

    sp = sub.add_parser("verify", help="check the depth bounds on one cloud")
    _add_input(sp)
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="compare search strategies on Gaussian clouds")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--reps", type=int, default=10)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("gen", help="write a generated cloud as CSV")
    sp.add_argument("--recipe", required=True)
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with unlimited_int_digits():
            return args.func(args)
    except (DatasetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        # precondition violations: general position, n <= p, levels, recipes
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
