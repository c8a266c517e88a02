import json

from hypothesis import given, strategies as st

from harmonic_fingerprint.harmony import PitchClassHistogram, fingerprint_from_histogram
from harmonic_fingerprint.patterns import Span, ThemeMatch
from harmonic_fingerprint.report import (
    AnalysisReport,
    dumps,
    fingerprint_to_dict,
    round_fingerprint,
)

hist_st = st.lists(st.integers(0, 7), min_size=12, max_size=12).map(lambda c: PitchClassHistogram(tuple(c)))


def test_fingerprint_dict_layout():
    fp = fingerprint_from_histogram(PitchClassHistogram((2, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0)), 5, "6")
    d = fingerprint_to_dict(fp)
    assert list(d) == ["measure_index", "printed_number", "counts", "segments", "root"]
    assert d["root"] == {"pitch_class": 0, "label": "C", "confidence": 0.5}
    assert d["segments"][4] == {
        "circle_position": 4, "pitch_class": 4, "label": "E", "count": 1, "normalized_radius": 0.5,
    }


def test_reals_have_four_decimals():
    fp = fingerprint_from_histogram(PitchClassHistogram((3, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0)))
    text = dumps(fingerprint_to_dict(fp))
    assert '"normalized_radius": 0.3333' in text


@given(st.lists(hist_st, min_size=1, max_size=8), st.floats(0.01, 1.0), st.integers(1, 5))
def test_report_round_trips(hists, threshold, min_len):
    fps = tuple(round_fingerprint(fingerprint_from_histogram(h, k, str(k + 1))) for k, h in enumerate(hists))
    themes = (ThemeMatch(Span(0, 1), Span(1, 1), 0.5),) if len(fps) > 1 else ()
    report = AnalysisReport("t", len(fps), fps, themes,
                            {"threshold": round(threshold, 4), "min_len": min_len, "counting_policy": "onsets"})
    text = dumps(report.to_dict())
    back = AnalysisReport.from_dict(json.loads(text))
    assert back == report
    assert dumps(back.to_dict()) == text
