"""Command-line surface for the whole pipeline.

Subcommands:

* ``ingest``  - load a corpus, report per-format counts, optionally export CSV
* ``stats``   - totals histograms and normal fits per (format, innings)
* ``curves``  - wicket-conditioned mean curves and polynomial fits, w = 0..9
* ``target``  - revise an interrupted chase from a scenario file and a fit file
* ``compare`` - area-ratio revision next to exponential-model resource percentages

All outputs are plain CSV / JSON and deterministic: the same corpus bytes and
flags produce byte-identical files.  Exit codes: 0 success, 2 data errors,
3 scenario errors, 4 fit errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from datetime import date
from pathlib import Path

import numpy as np

from . import dl_reference, run_curves, score_stats, target_engine
from .ball_log import Corpus, MatchFormat, export_csv, load_corpus
from .dl_reference import ResourceTable
from .errors import (
    DataError,
    EmptyCurveError,
    EmptySelectionError,
    FitError,
    InvalidScenarioError,
    ParseError,
    ScenarioError,
    UnsupportedFormatError,
)
from .fixtures import demo_corpus
from .run_curves import PolyFit

EXIT_OK = 0
EXIT_DATA = 2
EXIT_SCENARIO = 3
EXIT_FIT = 4

_FORMATS = (MatchFormat.ODI, MatchFormat.T20I, MatchFormat.IPL)


@dataclass(frozen=True)
class RunConfig:
    """Resolved command options shared by the corpus-driven subcommands."""

    data_dir: Path | None
    format: MatchFormat | None
    innings_index: int
    bin_width: float
    min_support: int
    degree: int
    output_dir: Path
    until: date | None = None
    fixture: bool = False
    export: Path | None = None

    def __post_init__(self):
        if self.innings_index not in (1, 2):
            raise InvalidScenarioError("innings must be 1 or 2")
        if not self.bin_width > 0:
            raise InvalidScenarioError("bin-width must be positive")
        if self.min_support < 1:
            raise InvalidScenarioError("min-support must be a positive integer")
        if self.degree not in (2, 3):
            raise InvalidScenarioError("degree must be 2 or 3")


def _config(args: argparse.Namespace) -> RunConfig:
    data_dir = getattr(args, "data_dir", None)
    if data_dir is None:
        env = os.environ.get("RAINRULE_DATA_DIR")
        data_dir = Path(env) if env else None
    return RunConfig(
        data_dir=Path(data_dir) if data_dir is not None else None,
        format=getattr(args, "format", None),
        innings_index=getattr(args, "innings", 1),
        bin_width=getattr(args, "bin_width", 10.0),
        min_support=getattr(args, "min_support", 10),
        degree=getattr(args, "degree", 3),
        output_dir=Path(getattr(args, "out", None) or "rainrule_out"),
        until=getattr(args, "until", None),
        fixture=getattr(args, "fixture", False),
        export=getattr(args, "export_csv", None),
    )


def _corpus(config: RunConfig) -> Corpus:
    if config.fixture:
        matches = sorted(demo_corpus(), key=lambda m: m.match_id)
        corpus = Corpus(tuple(matches), ())
    else:
        if config.data_dir is None:
            raise EmptySelectionError(
                "no data source: pass --data-dir, set RAINRULE_DATA_DIR, or use --fixture"
            )
        corpus = load_corpus(config.data_dir, config.format)
    if config.until is not None:
        kept = tuple(m for m in corpus if m.date <= config.until)
        corpus = Corpus(kept, corpus.diagnostics)
    return corpus


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _read_json(path: Path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, position=f"{path}:{e.lineno}:{e.colno}")


# ---------------------------------------------------------------------------
# ingest


def cmd_ingest(args: argparse.Namespace) -> int:
    config = _config(args)
    corpus = _corpus(config)
    for diag in corpus.diagnostics:
        print(f"warning: {diag.source}: {diag.message}", file=sys.stderr)
    counts = {fmt: 0 for fmt in _FORMATS}
    for match in corpus:
        counts[match.format] += 1
    print(f"matches: {len(corpus)}")
    for fmt in _FORMATS:
        print(f"  {fmt.value}: {counts[fmt]}")
    print(f"diagnostics: {len(corpus.diagnostics)}")
    if len(corpus) == 0:
        print("error: corpus is empty", file=sys.stderr)
        return EXIT_DATA
    if config.export is not None:
        rows = export_csv(corpus, config.export)
        print(f"exported {rows} deliveries to {config.export}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# stats


def cmd_stats(args: argparse.Namespace) -> int:
    config = _config(args)
    corpus = _corpus(config)
    formats = (config.format,) if config.format else _FORMATS
    config.output_dir.mkdir(parents=True, exist_ok=True)

    rows = []
    for fmt in formats:
        for innings in (1, 2):
            tag = f"{fmt.value}_i{innings}"
            try:
                values = score_stats.totals(corpus, fmt, innings)
                hist = score_stats.build_histogram(values, config.bin_width)
                fit = score_stats.fit_normal(hist)
            except (DataError, FitError) as e:
                print(f"warning: {fmt.value} innings {innings}: {e}", file=sys.stderr)
                continue
            (config.output_dir / f"hist_{tag}.csv").write_text(
                score_stats.histogram_csv(hist, fit), encoding="utf-8"
            )
            summary = {"format": fmt.value, "innings": innings}
            summary.update(score_stats.fit_summary(fit, hist))
            _write_json(config.output_dir / f"normal_{tag}.json", summary)
            rows.append((fmt.value, innings, hist.n_samples, fit))

    if not rows:
        print("error: no (format, innings) cell could be fitted", file=sys.stderr)
        return EXIT_FIT
    print(f"{'format':<8}{'innings':>8}{'n':>6}{'xi':>12}{'sigma':>12}{'amplitude':>14}")
    for fmt_name, innings, n, fit in rows:
        print(
            f"{fmt_name:<8}{innings:>8}{n:>6}"
            f"{fit.xi:>12.3f}{fit.sigma:>12.3f}{fit.amplitude:>14.3f}"
        )
    print(f"wrote {2 * len(rows)} files to {config.output_dir}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# curves


def cmd_curves(args: argparse.Namespace) -> int:
    config = _config(args)
    corpus = _corpus(config)
    fmt = config.format or MatchFormat.ODI
    config.output_dir.mkdir(parents=True, exist_ok=True)

    fits: dict[str, dict] = {}
    for w in range(10):
        try:
            curve = run_curves.wicket_curve(
                corpus, fmt, config.innings_index, w, config.min_support
            )
            fit = run_curves.fit_poly(curve, config.degree)
        except FitError as e:
            print(f"warning: w={w}: {e}", file=sys.stderr)
            continue
        tag = f"{fmt.value}_i{config.innings_index}_w{w}"
        (config.output_dir / f"curve_{tag}.csv").write_text(
            run_curves.curve_csv(curve, fit), encoding="utf-8"
        )
        fits[str(w)] = run_curves.fit_summary(curve, fit)
    if not fits:
        print("error: no wicket state could be fitted", file=sys.stderr)
        return EXIT_FIT

    family_path = config.output_dir / f"poly_{fmt.value}_i{config.innings_index}.json"
    _write_json(
        family_path,
        {
            "format": fmt.value,
            "innings": config.innings_index,
            "degree": config.degree,
            "fits": fits,
        },
    )
    print(f"fitted {len(fits)} of 10 wicket curves")
    print(f"wrote {len(fits) + 1} files to {config.output_dir}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# target


def _poly_from_summary(doc: dict, source: str) -> PolyFit:
    try:
        return PolyFit(
            a=float(doc.get("a", 0.0)),
            b=float(doc["b"]),
            c=float(doc["c"]),
            degree=int(doc.get("degree", 3)),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad polynomial fit in {source}: {e}")


def _load_poly_fit(path: Path, wickets: int) -> PolyFit:
    doc = _read_json(path)
    if "fits" in doc:
        per_wicket = doc["fits"]
        key = str(wickets)
        if key not in per_wicket:
            raise EmptyCurveError(
                f"{path} has no fitted curve for wickets={wickets} "
                f"(available: {', '.join(sorted(per_wicket))})"
            )
        return _poly_from_summary(per_wicket[key], f"{path}[fits][{key}]")
    return _poly_from_summary(doc, str(path))


def cmd_target(args: argparse.Namespace) -> int:
    doc = _read_json(args.scenario)
    scenario = target_engine.scenario_from_json(doc)
    fit = _load_poly_fit(args.fits, scenario.wickets_at_stoppage)

    ratio = target_engine.resource_ratio(fit, scenario)
    if ratio <= 0.0:
        print(json.dumps({"ratio": 0.0}, indent=2, sort_keys=True))
        print(
            "error: nothing to chase: every scheduled ball falls inside the "
            "lost interval",
            file=sys.stderr,
        )
        return EXIT_SCENARIO
    revision = target_engine.revise_target(fit, scenario)
    payload = target_engine.revision_to_json(revision)
    print(json.dumps(payload, indent=2, sort_keys=True))
    if getattr(args, "out", None):
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        _write_json(out_dir / "revision.json", payload)
    return EXIT_OK


# ---------------------------------------------------------------------------
# compare


def _scenario_format(doc: dict, config: RunConfig, scenario) -> MatchFormat:
    if "format" in doc:
        return MatchFormat.from_string(str(doc["format"]))
    if config.format is not None:
        return config.format
    # fall back on the scheduled length
    return MatchFormat.ODI if scenario.N >= 300 else MatchFormat.T20I


def _load_resource_table(path: Path) -> ResourceTable:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}")
    expected = "overs_remaining," + ",".join(str(w) for w in range(11))
    if not lines or lines[0].strip() != expected:
        raise ParseError("resource table header mismatch", position=f"{path}:1")
    rows: dict[int, list[float]] = {}
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 12:
            raise ParseError("expected 12 fields", position=f"{path}:{line_no}")
        try:
            rows[int(parts[0])] = [float(v) for v in parts[1:]]
        except ValueError as e:
            raise ParseError(f"bad cell: {e}", position=f"{path}:{line_no}")
    if not rows or sorted(rows) != list(range(max(rows) + 1)):
        raise ParseError(f"resource table rows must cover u = 0..max ({path})")
    max_overs = max(rows)
    grid = np.array([rows[u] for u in range(max_overs + 1)])
    return ResourceTable(max_overs=max_overs, grid=grid)


def cmd_compare(args: argparse.Namespace) -> int:
    config = _config(args)
    doc = _read_json(args.scenario)
    scenario = target_engine.scenario_from_json(doc)
    fit = _load_poly_fit(args.fits, scenario.wickets_at_stoppage)
    revision = target_engine.revise_target(fit, scenario)
    payload: dict = {"area_ratio": target_engine.revision_to_json(revision)}

    fmt = _scenario_format(doc, config, scenario)
    table = None
    if getattr(args, "dl_table", None):
        table = _load_resource_table(args.dl_table)
    elif config.fixture or config.data_dir is not None:
        corpus = _corpus(config)
        family = dl_reference.fit_dl_family(
            corpus, fmt, min_support=config.min_support
        )
        table = dl_reference.resource_table(family, fmt.scheduled_overs)
        config.output_dir.mkdir(parents=True, exist_ok=True)
        table_path = config.output_dir / f"resource_{fmt.value}.csv"
        table_path.write_text(dl_reference.resource_table_csv(table), encoding="utf-8")
        print(f"wrote fitted resource table to {table_path}", file=sys.stderr)

    if table is None:
        print(
            "warning: no resource table (pass --dl-table, --data-dir or --fixture); "
            "emitting the area-ratio result only",
            file=sys.stderr,
        )
        payload["resource_model"] = None
    else:
        w = scenario.wickets_at_stoppage
        try:
            at_stop = table.percentage(min((scenario.N - scenario.n) // 6, table.max_overs), w)
            at_restart = table.percentage(min((scenario.N - scenario.m) // 6, table.max_overs), w)
        except ValueError as e:
            raise InvalidScenarioError(str(e))
        payload["resource_model"] = {
            "percent_at_stoppage": at_stop,
            "percent_at_restart": at_restart,
            "percent_lost": at_stop - at_restart,
        }
    print(json.dumps(payload, indent=2, sort_keys=True))
    if getattr(args, "out", None):
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        _write_json(out_dir / "comparison.json", payload)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _format_arg(token: str) -> MatchFormat:
    try:
        return MatchFormat.from_string(token)
    except UnsupportedFormatError as e:
        raise argparse.ArgumentTypeError(str(e))


def _date_arg(token: str) -> date:
    try:
        return date.fromisoformat(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad date {token!r}, expected YYYY-MM-DD")


def _positive_float(token: str) -> float:
    value = float(token)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _positive_int(token: str) -> int:
    value = int(token)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _add_corpus_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument(
        "--data-dir",
        type=Path,
        default=None,
        help="directory of match files (default: $RAINRULE_DATA_DIR)",
    )
    sp.add_argument(
        "--fixture",
        action="store_true",
        help="use the bundled deterministic synthetic corpus",
    )
    sp.add_argument(
        "--format",
        type=_format_arg,
        default=None,
        metavar="{odi,t20i,ipl}",
        help="restrict to one format",
    )
    sp.add_argument(
        "--until",
        type=_date_arg,
        default=None,
        metavar="YYYY-MM-DD",
        help="keep only matches dated on or before this day",
    )
    sp.add_argument("--out", type=Path, default=None, help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rainrule",
        description="Rain-rule analytics for limited-overs cricket ball logs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="load a corpus and report counts")
    _add_corpus_flags(p_ingest)
    p_ingest.add_argument(
        "--export-csv", type=Path, default=None, metavar="FILE",
        help="write the normalized ball log CSV",
    )
    p_ingest.set_defaults(func=cmd_ingest)

    p_stats = sub.add_parser("stats", help="totals histograms and normal fits")
    _add_corpus_flags(p_stats)
    p_stats.add_argument("--bin-width", type=_positive_float, default=10.0)
    p_stats.set_defaults(func=cmd_stats)

    p_curves = sub.add_parser("curves", help="wicket curves and polynomial fits")
    _add_corpus_flags(p_curves)
    p_curves.add_argument("--innings", type=int, choices=(1, 2), default=1)
    p_curves.add_argument("--min-support", type=_positive_int, default=10)
    p_curves.add_argument("--degree", type=int, choices=(2, 3), default=3)
    p_curves.set_defaults(func=cmd_curves)

    p_target = sub.add_parser("target", help="revise an interrupted chase")
    p_target.add_argument("--scenario", type=Path, required=True, help="scenario JSON file")
    p_target.add_argument("--fits", type=Path, required=True, help="polynomial fit JSON file")
    p_target.add_argument("--out", type=Path, default=None, help="output directory")
    p_target.set_defaults(func=cmd_target)

    p_compare = sub.add_parser(
        "compare", help="area-ratio revision next to resource-model percentages"
    )
    _add_corpus_flags(p_compare)
    p_compare.add_argument("--scenario", type=Path, required=True)
    p_compare.add_argument("--fits", type=Path, required=True)
    p_compare.add_argument(
        "--dl-table", type=Path, default=None,
        help="resource table CSV (otherwise fitted from the corpus when available)",
    )
    p_compare.add_argument("--min-support", type=_positive_int, default=10)
    p_compare.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCENARIO
    except (DataError, NotADirectoryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA
    except FitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FIT


if __name__ == "__main__":
    sys.exit(main())
