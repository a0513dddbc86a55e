"""``aiecon`` command-line interface.

Exit statuses: 0 success, 1 data/validation error, 2 usage error,
3 reproduction FAIL.
"""
from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
from dataclasses import dataclass

from . import golden
from .composite import REJECT, ZeroPolicy, technology_level
from .errors import DataError, EmptyReportError
from .panel import (
    AI_FACTOR_KEYS,
    GDP_KEY,
    MAGNITUDE_KEY,
    TECH_FACTOR_KEYS,
    TECH_LEVEL_KEY,
    UNIFORM,
    WeightScheme,
    aggregate,
    read_panel,
    read_weights,
)
from .regstats import RegressionResult, audit_reported, regress_loglog
from .report import (
    DEFAULT_YEARS,
    FIXED2,
    SIG6,
    TEXT,
    render_audit,
    render_csv,
    render_json,
    render_reproduction,
    render_table,
    reproduce,
)
from .special import ConvergenceError
from .vector import build_vector, magnitude, minmax_normalize

log = logging.getLogger("aiecon")

EXIT_OK, EXIT_DATA, EXIT_USAGE, EXIT_FAIL = 0, 1, 2, 3
FORMATS = ("table", "csv", "json")


@dataclass(frozen=True)
class RunConfig:
    input_path: str | None = None
    years: tuple[int, int] = DEFAULT_YEARS
    zero_policy: ZeroPolicy = REJECT
    weights: WeightScheme = UNIFORM
    swap_axes: bool = False
    output_format: str = "table"

    def __post_init__(self):
        if self.years[0] > self.years[1]:
            raise ValueError(f"empty year interval {self.years}")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown output format {self.output_format!r}")


def _years(text: str) -> tuple[int, int]:
    try:
        start, end = (int(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <start>:<end>, got {text!r}") from None
    if start > end:
        raise argparse.ArgumentTypeError(f"empty year interval {text!r}")
    return start, end


def _zero_policy(text: str) -> ZeroPolicy:
    try:
        return ZeroPolicy.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _config(args) -> RunConfig:
    weights = read_weights(args.weights) if getattr(args, "weights", None) else UNIFORM
    return RunConfig(
        input_path=getattr(args, "input", None),
        years=getattr(args, "years", DEFAULT_YEARS),
        zero_policy=getattr(args, "zero_policy", REJECT),
        weights=weights,
        swap_axes=getattr(args, "swap_axes", False),
        output_format=args.format,
    )


def _emit(rows, columns, fmt, json_payload) -> str:
    if fmt == "json":
        return render_json(json_payload)
    if fmt == "csv":
        return render_csv(rows, columns)
    return render_table(rows, columns)


# ------------------------------------------------------------------ commands


def cmd_techlevel(config: RunConfig, strict: bool = True) -> str:
    path = config.input_path or golden.fixture_path(golden.TABLE1_FIXTURE)
    panel = read_panel(path, strict=strict)
    if not panel.countries:
        raise EmptyReportError("input contains no countries")
    rows = []
    for country in sorted(panel.countries):
        indicators = TECH_FACTOR_KEYS if strict else None
        profile = aggregate(panel, country, config.years, config.weights, indicators)
        level = technology_level(profile, config.zero_policy, strict=strict)
        rows.append({
            "country": country,
            "technology_level": level.value,
            "n_factors": level.n_factors,
            "excluded_factors": ";".join(level.excluded_factors),
        })
    columns = [("country", TEXT), ("technology_level", FIXED2), ("n_factors", TEXT),
               ("excluded_factors", TEXT)]
    payload = {
        r["country"]: {
            "technology_level": r["technology_level"],
            "n_factors": r["n_factors"],
            "excluded_factors": [f for f in r["excluded_factors"].split(";") if f],
        }
        for r in rows
    }
    return _emit(rows, columns, config.output_format, payload)


VECTOR_FIELDS = ("technological_development", "ai_adoption", "ai_workforce",
                 "ai_productivity", "market_demand", "regulatory_environment")


def cmd_vector(config: RunConfig, normalize: bool = False) -> str:
    path = config.input_path or golden.fixture_path(golden.TABLE2_FIXTURE)
    panel = read_panel(path)
    if not panel.countries:
        raise EmptyReportError("input contains no countries")
    vectors = []
    for country in sorted(panel.countries):
        ai = aggregate(panel, country, config.years, config.weights, AI_FACTOR_KEYS)
        if TECH_LEVEL_KEY in panel.indicators(country):
            tech = aggregate(panel, country, config.years, config.weights,
                             (TECH_LEVEL_KEY,)).factors[TECH_LEVEL_KEY]
        else:
            factors = aggregate(panel, country, config.years, config.weights, TECH_FACTOR_KEYS)
            tech = technology_level(factors, config.zero_policy)
        vectors.append(build_vector(country, tech, ai))
    if normalize:
        vectors = minmax_normalize(vectors)
    rows = []
    for v in vectors:
        row = {"country": v.country}
        row.update({name: getattr(v, name) for name in VECTOR_FIELDS})
        row["magnitude"] = magnitude(v).value
        rows.append(row)
    columns = [("country", TEXT)] + [(f, FIXED2) for f in VECTOR_FIELDS] + [("magnitude", FIXED2)]
    payload = {r["country"]: {k: r[k] for k in r if k != "country"} for r in rows}
    return _emit(rows, columns, config.output_format, payload)


REGRESSION_FIELDS = ("slope_b1", "intercept_b0", "pearson_r", "r_squared", "t_stat",
                     "df", "p_value", "n", "perfect_fit")


def _regression_series(panel, country, years):
    if country is None:
        candidates = sorted(
            c for c in panel.countries
            if {MAGNITUDE_KEY, GDP_KEY} <= panel.indicators(c)
        )
        if len(candidates) != 1:
            raise DataError(
                f"pass --country: {len(candidates)} countries carry both "
                f"{MAGNITUDE_KEY} and {GDP_KEY}"
            )
        country = candidates[0]
    start, end = years
    xs = {y: v for y, v in panel.series(country, MAGNITUDE_KEY).items() if start <= y <= end}
    ys = {y: v for y, v in panel.series(country, GDP_KEY).items() if start <= y <= end}
    unpaired = sorted(set(xs) ^ set(ys))
    if unpaired:
        log.warning("%s: skipping unpaired years %s", country, unpaired)
    labels = sorted(set(xs) & set(ys))
    if len(labels) < 3:
        raise DataError(f"{country}: need at least 3 paired years, found {len(labels)}")
    return country, labels, [xs[y] for y in labels], [ys[y] for y in labels]


def write_points(path, result: RegressionResult, lx, ly) -> None:
    """Scatter of the logged series plus the two fitted-line endpoints."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["kind", "label", "ln_x", "ln_y"])
        for label, a, b in zip(result.labels, lx, ly):
            writer.writerow(["point", label, f"{a:.17g}", f"{b:.17g}"])
        for a in (min(lx), max(lx)):
            fit = result.intercept_b0 + result.slope_b1 * a
            writer.writerow(["fit", "", f"{a:.17g}", f"{fit:.17g}"])


def cmd_regress(config: RunConfig, country: str | None = None, emit_points=None) -> str:
    panel = read_panel(config.input_path)
    country, labels, x, y = _regression_series(panel, country, config.years)
    result = regress_loglog(x, y, labels, swap_axes=config.swap_axes)
    if emit_points:
        lx, ly = [math.log(v) for v in x], [math.log(v) for v in y]
        if config.swap_axes:
            lx, ly = ly, lx
        write_points(emit_points, result, lx, ly)

    row = {"country": country, "x": GDP_KEY if config.swap_axes else MAGNITUDE_KEY,
           "y": MAGNITUDE_KEY if config.swap_axes else GDP_KEY}
    row.update({name: getattr(result, name) for name in REGRESSION_FIELDS})
    fmt = config.output_format
    if fmt == "json":
        payload = dict(row, p_display=result.p_display, years=list(labels))
        return render_json(payload)
    if fmt == "csv":
        columns = [(k, TEXT) for k in ("country", "x", "y")] + [(k, SIG6) for k in REGRESSION_FIELDS]
        return render_csv([row], columns)
    lines = [f"{'country':<14} {country}", f"{'regressor':<14} ln {row['x']}",
             f"{'response':<14} ln {row['y']}"]
    for name in REGRESSION_FIELDS:
        value = result.p_display if name == "p_value" else row[name]
        if isinstance(value, float):
            value = f"{value:.6g}"
        lines.append(f"{name:<14} {value}")
    return "\n".join(lines) + "\n"


def cmd_reproduce(fmt: str = "table", golden_path=None, table1=None, table2=None):
    overrides = golden.read_golden_csv(golden_path) if golden_path else None
    report = reproduce(table1, table2, overrides)
    return report, render_reproduction(report, fmt)


def cmd_audit(n: int, r2: float, p: float, fmt: str = "table", rel_tol: float = 0.25) -> str:
    return render_audit(audit_reported(n, r2, p, rel_tol), fmt)


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="table")

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--input", metavar="PATH")
    data.add_argument("--years", type=_years, default=DEFAULT_YEARS, metavar="START:END")
    data.add_argument("--zero-policy", type=_zero_policy, default=REJECT,
                      metavar="reject|exclude|epsilon=V")
    data.add_argument("--weights", metavar="PATH", help="CSV with header year,weight")

    parser = argparse.ArgumentParser(
        prog="aiecon",
        description="Technology-level index, AI factor vector magnitude and log-log regression.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("techlevel", parents=[common, data],
                       help="geometric-mean technology level per country")
    p.add_argument("--lenient", action="store_true",
                   help="accept custom indicator keys and use every factor present")

    p = sub.add_parser("vector", parents=[common, data],
                       help="AI factor vector and its magnitude per country")
    p.add_argument("--normalize", action="store_true",
                   help="min-max normalize components across countries first")

    p = sub.add_parser("regress", parents=[common, data],
                       help="log-log regression of GDP per capita on vector magnitude")
    p.add_argument("--country")
    p.add_argument("--swap-axes", action="store_true")
    p.add_argument("--emit-points", metavar="PATH")

    p = sub.add_parser("reproduce", parents=[common],
                       help="compare recomputed tables with the published values")
    p.add_argument("--golden", metavar="PATH",
                   help="CSV (table,country,value) overriding the built-in published values")
    p.add_argument("--table1", metavar="PATH", help="replacement technology-factor fixture")
    p.add_argument("--table2", metavar="PATH", help="replacement vector fixture")

    p = sub.add_parser("audit", parents=[common],
                       help="check a reported (n, R², p) triple against the slope t test")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r2", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--rel-tol", type=float, default=0.25)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        if args.command == "reproduce":
            report, text = cmd_reproduce(args.format, args.golden, args.table1, args.table2)
            sys.stdout.write(text)
            if args.format == "csv":
                print(f"audit: {report.audit.verdict}; {report.audit.note}", file=sys.stderr)
            for e in report.failures:
                print(f"FAIL {e.table} {e.country}: published {e.paper_value} vs "
                      f"computed {e.computed_value:.6g}", file=sys.stderr)
            return EXIT_OK if report.ok else EXIT_FAIL
        if args.command == "audit":
            sys.stdout.write(cmd_audit(args.n, args.r2, args.p, args.format, args.rel_tol))
            return EXIT_OK
        config = _config(args)
        if args.command == "techlevel":
            out = cmd_techlevel(config, strict=not args.lenient)
        elif args.command == "vector":
            out = cmd_vector(config, normalize=args.normalize)
        else:
            if not config.input_path:
                parser.error("regress needs --input")
            out = cmd_regress(config, args.country, args.emit_points)
        sys.stdout.write(out)
        return EXIT_OK
    except (DataError, ConvergenceError, OSError, ValueError) as exc:
        print(f"aiecon: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
