"""Command-line interface: ``cbalance compute | trend | fetch | plotdata``.

Exit codes: 0 success, 1 input error, 2 fetch error.
"""

import argparse
import csv
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from cbalance import ingest
from cbalance.errors import CBError, FetchError
from cbalance.indices import MEASURES, group_indices, season_indices
from cbalance.reference import all_reference_series, bundled_season_file, reference_series
from cbalance.stats import IndexSeries, fit_trend

EXIT_OK, EXIT_INPUT, EXIT_FETCH = 0, 1, 2

log = logging.getLogger("cbalance")


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # Usage errors are input errors; exit code 2 is reserved for fetch failures.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class ReportRow:
    measure: str
    period: str
    intercept: float
    slope: float
    r_squared: float
    p_value: float
    n: int


def season_label(year: int) -> str:
    return f"{year}/{(year + 1) % 100:02d}"


def _write(rows, header, fmt, out, formats=None):
    """Emit rows as CSV (full precision) or an aligned text table."""
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([[repr(v) if isinstance(v, float) else v for v in row] for row in rows])
        return
    formats = formats or {}
    cells = [[formats.get(h, "{}").format(v) if isinstance(v, float) else str(v) for h, v in zip(header, row)] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h) for i, h in enumerate(header)]
    out.write("  ".join(h.rjust(w) for h, w in zip(header, widths)).rstrip() + "\n")
    for r in cells:
        out.write("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _dataset_path(args):
    if args.dataset:
        return Path(args.dataset)
    if args.season is None:
        raise _InputError("give --dataset PATH or --season YEAR")
    path = bundled_season_file(args.season)
    if path is None:
        raise _InputError(f"no bundled season file for {args.season}; pass --dataset")
    return path


def _load(path, args):
    return ingest.load_season(path, args.cache_dir, network=not args.offline)


def cmd_compute(args, out):
    dataset = _load(_dataset_path(args), args)
    header = ["season", "group", *MEASURES]
    rows = []
    for g in dataset.groups:
        rows.append([dataset.season, g.label, *group_indices(g).as_dict().values()])
    rows.append([dataset.season, "mean", *season_indices(dataset).as_dict().values()])
    _write(rows, header, args.format, out, {m: "{:.4f}" for m in MEASURES})
    return EXIT_OK


def _series_from_datasets(paths, measures, args):
    means = {m: {} for m in measures}
    for p in paths:
        ds = _load(p, args)
        si = season_indices(ds).as_dict()
        for m in measures:
            means[m][ds.season] = si[m]
    return {m: IndexSeries.from_mapping(m, means[m]) for m in measures}


def _measures(arg):
    if arg is None or arg.lower() == "all":
        return list(MEASURES)
    m = arg.lower()
    if m not in MEASURES:
        raise _InputError(f"unknown measure {arg!r}; expected one of {', '.join(MEASURES)} or 'all'")
    return [m]


def trend_rows(series_by_measure, from_year=None, to_year=None):
    rows = []
    for m, series in series_by_measure.items():
        sub = series.between(from_year, to_year)
        fit = fit_trend(sub)
        period = f"{season_label(sub.seasons[0])}-{season_label(sub.seasons[-1])}"
        rows.append(ReportRow(m, period, fit.intercept, fit.slope, fit.r_squared, fit.p_value, fit.n))
    return rows


def cmd_trend(args, out):
    measures = _measures(args.measure)
    if args.dataset:
        series = _series_from_datasets(args.dataset, measures, args)
    else:
        ref = all_reference_series()
        series = {m: ref[m] for m in measures}
    rows = trend_rows(series, args.from_year, args.to_year)
    header = ["measure", "period", "intercept", "slope", "r_squared", "p_value", "n"]
    _write(
        [[r.measure, r.period, r.intercept, r.slope, r.r_squared, r.p_value, r.n] for r in rows],
        header,
        args.format,
        out,
        {"intercept": "{:.4f}", "slope": "{:.6f}", "r_squared": "{:.3f}", "p_value": "{:.4f}"},
    )
    return EXIT_OK


def cmd_fetch(args, out):
    if args.date:
        date = args.date
    elif args.season is not None:
        date = ingest.snapshot_date_for(args.season).isoformat()
    else:
        raise _InputError("give --date YYYY-MM-DD or --season YEAR")
    try:
        path = ingest.cache_path(date, args.cache_dir)
    except ValueError as exc:
        raise _InputError(str(exc)) from None
    snapshot = ingest.fetch_snapshot(date, args.cache_dir, base_url=args.base_url, network=not args.offline)
    out.write(f"{path}\t{len(snapshot)} clubs\n")
    return EXIT_OK


def cmd_plotdata(args, out):
    if args.measure.lower() == "all":
        raise _InputError("plotdata takes a single measure")
    (measure,) = _measures(args.measure)
    series = reference_series(measure).between(args.from_year, args.to_year)
    fit = fit_trend(series)
    # Trend line spans half a season beyond the data on each side, like the figure's axes.
    x0, x1 = series.seasons[0] - 0.5, series.seasons[-1] + 0.5
    rows = [["observed", s, v] for s, v in series.points]
    rows += [["trend", x, fit.intercept + fit.slope * x] for x in (x0, x1)]
    target = Path(args.output) if args.output else None
    if target is None or str(target) == "-":
        _write(rows, ["kind", "season", "value"], "csv", out)
    else:
        with open(target, "w", newline="") as fh:
            _write(rows, ["kind", "season", "value"], "csv", fh)
        out.write(f"wrote {len(rows)} rows to {target}\n")
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=None, help=f"snapshot cache (default ${ingest.CACHE_ENV} or ~/.cache/cbalance)")
    common.add_argument("--offline", action="store_true", help="never touch the network; cache misses are errors")
    common.add_argument("--format", choices=("table", "csv"), default="table")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="cbalance", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", parents=[common], help="six indices per group and the season means")
    p.add_argument("--dataset", help="season file (JSON)")
    p.add_argument("--season", type=int, help="use the bundled season file for this year")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("trend", parents=[common], help="OLS trend of seasonal means against season")
    p.add_argument("--measure", default="all", help="cb1a, cb2a, cb1p, cb2p, cb3p, cb4p or all")
    p.add_argument("--dataset", action="append", help="season file to recompute from (repeatable); default: bundled series")
    p.add_argument("--from", dest="from_year", type=int)
    p.add_argument("--to", dest="to_year", type=int)
    p.set_defaults(func=cmd_trend)

    p = sub.add_parser("fetch", parents=[common], help="download an Elo snapshot into the cache")
    p.add_argument("--date", help="YYYY-MM-DD")
    p.add_argument("--season", type=int, help="fetch 1 September of this year")
    p.add_argument("--base-url", default=ingest.API_BASE, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_fetch)

    p = sub.add_parser("plotdata", parents=[common], help="observed points and trend line endpoints as CSV")
    p.add_argument("--measure", required=True)
    p.add_argument("--output", "-o", help="output CSV path (default: stdout)")
    p.add_argument("--from", dest="from_year", type=int)
    p.add_argument("--to", dest="to_year", type=int)
    p.set_defaults(func=cmd_plotdata)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except FetchError as exc:
        print(f"cbalance: fetch error: {exc}", file=sys.stderr)
        return EXIT_FETCH
    except (CBError, _InputError, OSError, ValueError) as exc:
        print(f"cbalance: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
