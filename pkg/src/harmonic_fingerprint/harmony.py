"""Pitch-class statistics per measure: histograms, circle-of-fifths layout,
normalization and root estimation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .score import STEP_BASE, Measure, NoteEvent

# Sharp/flat pairs as printed around the circle of fifths.
PITCH_LABELS = (
    "C", "C♯/D♭", "D", "D♯/E♭", "E", "F",
    "F♯/G♭", "G", "G♯/A♭", "A", "A♯/B♭", "B",
)

# interval above candidate root (semitones) -> template weight
ROOT_WEIGHTS = {0: 3, 7: 2, 4: 2, 3: 2, 10: 1, 11: 1, 5: 1}


def pitch_class(step: str, alter: int) -> int:
    return (STEP_BASE[step] + alter) % 12


def circle_index(pc: int) -> int:
    """Position of a pitch class on the circle of fifths (C=0, G=1, ... F=11)."""
    return (pc * 7) % 12


def circle_to_pitch_class(position: int) -> int:
    return (position * 7) % 12


@dataclass(frozen=True)
class CountingPolicy:
    """Which note events contribute to a histogram, and with what weight.

    The default counts every onset once: tie continuations and grace notes
    are skipped, chord members are included. ``duration_weighted`` adds the
    note's duration in divisions instead of 1.
    """

    include_tie_continuations: bool = False
    include_grace: bool = False
    include_chord_members: bool = True
    duration_weighted: bool = False

    def accepts(self, ev: NoteEvent) -> bool:
        if ev.is_tie_continuation and not self.include_tie_continuations:
            return False
        if ev.is_grace and not self.include_grace:
            return False
        if ev.is_chord_member and not self.include_chord_members:
            return False
        return True

    def weight(self, ev: NoteEvent) -> int:
        return ev.duration_divisions if self.duration_weighted else 1

    @property
    def name(self) -> str:
        for name, policy in POLICIES.items():
            if policy == self:
                return name
        return "custom"

    @classmethod
    def from_name(cls, name: str) -> "CountingPolicy":
        try:
            return POLICIES[name]
        except KeyError:
            known = ", ".join(POLICIES)
            raise ValueError(f"unknown counting policy {name!r} (known: {known})") from None


POLICIES = {
    "onsets": CountingPolicy(),
    "all-onsets": CountingPolicy(include_tie_continuations=True, include_grace=True),
    "duration": CountingPolicy(duration_weighted=True),
}
DEFAULT_POLICY = POLICIES["onsets"]


@dataclass(frozen=True)
class PitchClassHistogram:
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != 12:
            raise ValueError("a pitch-class histogram has exactly 12 bins")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative")

    @classmethod
    def from_pitch_classes(cls, pcs: Iterable[int]) -> "PitchClassHistogram":
        counts = [0] * 12
        for pc in pcs:
            counts[pc % 12] += 1
        return cls(tuple(counts))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def is_empty(self) -> bool:
        return not any(self.counts)

    def __getitem__(self, pc: int) -> int:
        return self.counts[pc]


@dataclass(frozen=True)
class RootEstimate:
    pitch_class: Optional[int]
    label: str
    confidence: float

    @classmethod
    def none(cls) -> "RootEstimate":
        return cls(None, "", 0.0)


@dataclass(frozen=True)
class Segment:
    circle_position: int
    pitch_class: int
    count: int
    normalized_radius: float

    @property
    def label(self) -> str:
        return PITCH_LABELS[self.pitch_class]


@dataclass(frozen=True)
class Fingerprint:
    measure_index: int
    segments: tuple[Segment, ...]
    root: RootEstimate
    printed_number: str = ""

    @property
    def histogram(self) -> PitchClassHistogram:
        counts = [0] * 12
        for seg in self.segments:
            counts[seg.pitch_class] = seg.count
        return PitchClassHistogram(tuple(counts))

    @property
    def caption(self) -> str:
        return self.printed_number or str(self.measure_index + 1)


def histogram(measure: Measure, policy: CountingPolicy = DEFAULT_POLICY) -> PitchClassHistogram:
    counts = [0] * 12
    for ev in measure.events:
        if policy.accepts(ev):
            counts[ev.pitch.pitch_class] += policy.weight(ev)
    return PitchClassHistogram(tuple(counts))


def root_scores(hist: PitchClassHistogram) -> dict[int, int]:
    """Template score for every pitch class present in ``hist``."""
    present = [pc for pc in range(12) if hist.counts[pc] > 0]
    return {
        r: sum(ROOT_WEIGHTS.get((p - r) % 12, 0) * hist.counts[p] for p in present)
        for r in present
    }


def estimate_root(hist: PitchClassHistogram) -> RootEstimate:
    """Pick the present pitch class that best explains the bar as a chord root.

    Ties go to the more frequent candidate, then to the one closer to C on the
    circle of fifths.
    """
    scores = root_scores(hist)
    if not scores:
        return RootEstimate.none()
    root = min(scores, key=lambda r: (-scores[r], -hist.counts[r], circle_index(r)))
    return RootEstimate(root, PITCH_LABELS[root], scores[root] / sum(scores.values()))


def fingerprint_from_histogram(
    hist: PitchClassHistogram, measure_index: int = 0, printed_number: str = ""
) -> Fingerprint:
    peak = max(hist.counts)
    segments = []
    for pos in range(12):
        pc = circle_to_pitch_class(pos)
        count = hist.counts[pc]
        segments.append(Segment(pos, pc, count, count / peak if peak else 0.0))
    return Fingerprint(measure_index, tuple(segments), estimate_root(hist), printed_number)


def fingerprint(measure: Measure, policy: CountingPolicy = DEFAULT_POLICY) -> Fingerprint:
    return fingerprint_from_histogram(
        histogram(measure, policy), measure.index, measure.printed_number
    )


def fingerprints(
    measures: Iterable[Measure], policy: CountingPolicy = DEFAULT_POLICY
) -> list[Fingerprint]:
    return [fingerprint(m, policy) for m in measures]
