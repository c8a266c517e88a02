"""Command-line interface: ``fingerprint``, ``strip`` and ``analyze``.

Exit codes: 0 success, 1 the score could not be parsed, 2 invalid arguments
or bar out of range, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import configparser
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import harmony, patterns, render, report
from .score import Measure, Score, ScoreError, parse_musicxml

EXIT_OK, EXIT_PARSE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

DEFAULTS = {
    "policy": "onsets",
    "threshold": 0.95,
    "min_len": 2,
    "columns": 8,
    "diameter": 96.0,
}
CONFIG_TYPES = {"policy": str, "threshold": float, "min_len": int, "columns": int, "diameter": float}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def read_config(path: Optional[str]) -> dict[str, Any]:
    """Read ``key = value`` lines (``#`` comments allowed) into typed defaults."""
    if path is None:
        return {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}", EXIT_IO) from None
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        parser.read_string("[config]\n" + text)
    except configparser.Error as exc:
        raise CliError(f"bad config file {path}: {exc}", EXIT_USAGE) from None
    values: dict[str, Any] = {}
    for key, raw in parser["config"].items():
        key = key.replace("-", "_")
        if key not in CONFIG_TYPES:
            raise CliError(f"unknown config key {key!r}", EXIT_USAGE)
        try:
            values[key] = CONFIG_TYPES[key](raw.strip().strip("\"'"))
        except ValueError:
            raise CliError(f"bad value for {key}: {raw!r}", EXIT_USAGE) from None
    return values


def _setting(args: argparse.Namespace, config: dict[str, Any], key: str) -> Any:
    value = getattr(args, key, None)
    if value is not None:
        return value
    return config.get(key, DEFAULTS[key])


def _load(path: str) -> Score:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from None
    try:
        return parse_musicxml(data)
    except ScoreError as exc:
        raise CliError(f"{path}: {type(exc).__name__}: {exc}", EXIT_PARSE) from None


def _policy(name: str) -> harmony.CountingPolicy:
    try:
        return harmony.CountingPolicy.from_name(name)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc}", EXIT_IO) from None


def select_bar(score: Score, bar: int, zero_based: bool) -> Measure:
    """Resolve a CLI bar address: printed bar number, or 0-based ordinal with ``zero_based``."""
    if zero_based:
        if 0 <= bar < len(score.measures):
            return score.measures[bar]
        raise CliError(f"bar index {bar} out of range 0..{len(score.measures) - 1}", EXIT_USAGE)
    measure = score.find_bar(str(bar))
    if measure is None:
        raise CliError(f"no bar numbered {bar} (score has {len(score.measures)} measures)", EXIT_USAGE)
    return measure


def select_range(score: Score, bars: Optional[str]) -> Sequence[Measure]:
    """Measures for a ``FIRST:LAST`` printed-bar range, or the whole score."""
    if bars is None:
        return score.measures
    first, sep, last = bars.partition(":")
    if not sep or not first or not last:
        raise CliError(f"--bars expects FIRST:LAST, got {bars!r}", EXIT_USAGE)
    try:
        return score.slice_bars(first, last)
    except (KeyError, ValueError) as exc:
        raise CliError(f"--bars {bars}: {exc}", EXIT_USAGE) from None


def _render_spec(args, config, parser) -> render.RenderSpec:
    diameter = _setting(args, config, "diameter")
    columns = _setting(args, config, "columns") if hasattr(args, "columns") else DEFAULTS["columns"]
    if columns < 1:
        parser.error(f"--columns must be >= 1, got {columns}")
    if not diameter > 0:
        parser.error(f"--diameter must be positive, got {diameter}")
    return render.RenderSpec(glyph_diameter_px=diameter, strip_columns=columns)


def cmd_fingerprint(args, config, parser) -> int:
    policy_name = _setting(args, config, "policy")
    policy = _policy(policy_name)
    spec = _render_spec(args, config, parser)
    score = _load(args.input)
    if args.bar is not None:
        measures = [select_bar(score, args.bar, args.zero_based)]
    else:
        measures = list(score.measures)
    fps = harmony.fingerprints(measures, policy)

    if not args.svg:
        _write(report.dumps(report.fingerprints_payload(score.title, fps, policy_name)), args.out)
        return EXIT_OK
    if len(fps) == 1:
        _write(render.render_glyph(fps[0], spec), args.out)
        return EXIT_OK
    if args.out is None:
        parser.error("--all --svg writes one file per bar and needs --out DIR")
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(f"cannot create {out_dir}: {exc}", EXIT_IO) from None
    for fp in fps:
        _write(render.render_glyph(fp, spec), str(out_dir / f"bar-{fp.measure_index + 1:04d}.svg"))
    return EXIT_OK


def cmd_strip(args, config, parser) -> int:
    policy = _policy(_setting(args, config, "policy"))
    spec = _render_spec(args, config, parser)
    score = _load(args.input)
    measures = select_range(score, args.bars)
    if not measures:
        raise CliError("score has no measures", EXIT_USAGE)
    _write(render.render_strip(harmony.fingerprints(measures, policy), spec), args.out)
    return EXIT_OK


def analyze_score(
    score: Score,
    measures: Sequence[Measure],
    threshold: float,
    min_len: int,
    policy_name: str,
) -> report.AnalysisReport:
    fps = harmony.fingerprints(measures, harmony.CountingPolicy.from_name(policy_name))
    themes = patterns.find_themes(fps, threshold, min_len) if fps else []
    return report.AnalysisReport(
        score_title=score.title,
        measure_count=len(measures),
        fingerprints=tuple(fps),
        themes=tuple(themes),
        parameters={"threshold": threshold, "min_len": min_len, "counting_policy": policy_name},
    )


def cmd_analyze(args, config, parser) -> int:
    threshold = _setting(args, config, "threshold")
    min_len = _setting(args, config, "min_len")
    policy_name = _setting(args, config, "policy")
    if not 0 < threshold <= 1:
        parser.error(f"--threshold must lie in (0, 1], got {threshold}")
    if min_len < 1:
        parser.error(f"--min-len must be >= 1, got {min_len}")
    _policy(policy_name)
    score = _load(args.input)
    measures = select_range(score, args.bars)
    result = analyze_score(score, measures, threshold, min_len, policy_name)
    _write(report.dumps(result.to_dict()), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonic-fingerprint",
        description="Pitch-class fingerprint glyphs and theme analysis for MusicXML scores.",
    )
    parser.add_argument("--config", help="key=value file with default settings")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("input", help="MusicXML file (.xml, .musicxml or .mxl)")
        p.add_argument("--policy", choices=sorted(harmony.POLICIES), help="counting policy")
        p.add_argument("--out", help="output path (default: stdout)")

    fp = sub.add_parser("fingerprint", help="fingerprint JSON or glyph SVG for bars")
    common(fp)
    which = fp.add_mutually_exclusive_group(required=True)
    which.add_argument("--bar", type=int, help="printed bar number (1-based)")
    which.add_argument("--all", action="store_true", help="every measure")
    fp.add_argument("--zero-based", action="store_true", help="--bar is a 0-based ordinal")
    fmt = fp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--svg", action="store_true", help="SVG glyph output")
    fp.add_argument("--diameter", type=float, help="glyph diameter in px")
    fp.set_defaults(handler=cmd_fingerprint)

    st = sub.add_parser("strip", help="whole-piece glyph strip SVG")
    common(st)
    st.add_argument("--columns", type=int, help="glyphs per row")
    st.add_argument("--diameter", type=float, help="glyph diameter in px")
    st.add_argument("--bars", help="printed bar range FIRST:LAST")
    st.set_defaults(handler=cmd_strip)

    an = sub.add_parser("analyze", help="fingerprints plus recurring-theme report (JSON)")
    common(an)
    an.add_argument("--threshold", type=float, help="minimum bar similarity (0, 1]")
    an.add_argument("--min-len", dest="min_len", type=int, help="minimum theme length in bars")
    an.add_argument("--json", action="store_true", help="JSON output (the only format)")
    an.add_argument("--bars", help="printed bar range FIRST:LAST")
    an.set_defaults(handler=cmd_analyze)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = read_config(args.config)
        return args.handler(args, config, parser)
    except CliError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return exc.code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
