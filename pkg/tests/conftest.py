import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from harmonic_fingerprint.score import Measure, NoteEvent, Pitch

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = Path(__file__).parent / "fixtures"


def note(name: str, duration: int = 1, **kw) -> NoteEvent:
    """``note("F#4")`` / ``note("Bbb3")`` -> NoteEvent."""
    step, rest = name[0], name[1:]
    alter = 0
    while rest and rest[0] in "#b":
        alter += 1 if rest[0] == "#" else -1
        rest = rest[1:]
    if kw.get("is_grace"):
        duration = 0
    return NoteEvent(Pitch(step, alter, int(rest)), duration, **kw)


def measure(*names: str, index: int = 0) -> Measure:
    return Measure(index, str(index + 1), tuple(note(n) for n in names))


# acceptance criteria summary: one line per criterion at the end of the run

_criteria: dict[str, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria.setdefault(str(marker.args[0]), []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_criteria, key=lambda c: (len(c), c)):
        results = _criteria[cid]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(
            f"criterion {cid}: {status} ({sum(results)}/{len(results)} checks)"
        )


# reference score (not redistributable here): drop the MusicXML export of the
# waltz at tests/fixtures/grande_valse_brillante.mxl or point HARMONIC_FP_REFERENCE at it

REFERENCE_STEM = "grande_valse_brillante"


def reference_score_path():
    env = os.environ.get("HARMONIC_FP_REFERENCE")
    if env:
        return Path(env)
    for suffix in (".mxl", ".musicxml", ".xml"):
        p = FIXTURES / f"{REFERENCE_STEM}{suffix}"
        if p.exists():
            return p
    return None


@pytest.fixture(scope="session")
def reference_bytes():
    path = reference_score_path()
    if path is None or not path.exists():
        pytest.fail(
            f"reference score missing: expected {FIXTURES / (REFERENCE_STEM + '.mxl')} "
            "or $HARMONIC_FP_REFERENCE (Chopin op. 18 MusicXML, 311 bars)",
            pytrace=False,
        )
    return path.read_bytes()


@pytest.fixture(scope="session")
def reference_meta():
    """Hand-transcribed facts about the reference score (theme boxes, bar-6 counts)."""
    import json

    path = FIXTURES / f"{REFERENCE_STEM}.json"
    if not path.exists():
        pytest.fail(f"reference metadata missing: {path}", pytrace=False)
    return json.loads(path.read_text(encoding="utf-8"))
