"""JSON serialization for fingerprints and analysis reports.

Reals are rounded to four decimals and keys are emitted in a fixed order, so
identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from .harmony import Fingerprint, RootEstimate, Segment
from .patterns import Span, ThemeMatch

SCHEMA_VERSION = "1"
PRECISION = 4


def _real(x: float) -> float:
    return round(float(x), PRECISION)


def fingerprint_to_dict(fp: Fingerprint) -> dict[str, Any]:
    return {
        "measure_index": fp.measure_index,
        "printed_number": fp.printed_number,
        "counts": list(fp.histogram.counts),
        "segments": [
            {
                "circle_position": s.circle_position,
                "pitch_class": s.pitch_class,
                "label": s.label,
                "count": s.count,
                "normalized_radius": _real(s.normalized_radius),
            }
            for s in fp.segments
        ],
        "root": {
            "pitch_class": fp.root.pitch_class,
            "label": fp.root.label,
            "confidence": _real(fp.root.confidence),
        },
    }


def fingerprint_from_dict(d: dict[str, Any]) -> Fingerprint:
    segments = tuple(
        Segment(s["circle_position"], s["pitch_class"], s["count"], s["normalized_radius"])
        for s in d["segments"]
    )
    root = d["root"]
    return Fingerprint(
        d["measure_index"],
        segments,
        RootEstimate(root["pitch_class"], root["label"], root["confidence"]),
        d.get("printed_number", ""),
    )


def theme_to_dict(m: ThemeMatch) -> dict[str, Any]:
    return {
        "span_a": {"start": m.span_a.start, "length": m.span_a.length},
        "span_b": {"start": m.span_b.start, "length": m.span_b.length},
        "min_pair_similarity": _real(m.min_pair_similarity),
    }


def theme_from_dict(d: dict[str, Any]) -> ThemeMatch:
    return ThemeMatch(
        Span(d["span_a"]["start"], d["span_a"]["length"]),
        Span(d["span_b"]["start"], d["span_b"]["length"]),
        d["min_pair_similarity"],
    )


def round_fingerprint(fp: Fingerprint) -> Fingerprint:
    """The fingerprint exactly as it reads back from JSON."""
    return fingerprint_from_dict(json.loads(json.dumps(fingerprint_to_dict(fp))))


@dataclass(frozen=True)
class AnalysisReport:
    score_title: str
    measure_count: int
    fingerprints: tuple[Fingerprint, ...]
    themes: tuple[ThemeMatch, ...] = ()
    parameters: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "score_title": self.score_title,
            "measure_count": self.measure_count,
            "parameters": {
                "threshold": self.parameters.get("threshold"),
                "min_len": self.parameters.get("min_len"),
                "counting_policy": self.parameters.get("counting_policy"),
            },
            "fingerprints": [fingerprint_to_dict(fp) for fp in self.fingerprints],
            "themes": [theme_to_dict(m) for m in self.themes],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "AnalysisReport":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {d.get('schema_version')!r}")
        return cls(
            d["score_title"],
            d["measure_count"],
            tuple(fingerprint_from_dict(f) for f in d["fingerprints"]),
            tuple(theme_from_dict(t) for t in d["themes"]),
            dict(d["parameters"]),
        )


def dumps(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def fingerprints_payload(
    title: str, fps: Sequence[Fingerprint], policy_name: str
) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "score_title": title,
        "counting_policy": policy_name,
        "fingerprints": [fingerprint_to_dict(fp) for fp in fps],
    }

