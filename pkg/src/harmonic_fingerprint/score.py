"""MusicXML ingestion.

Reads the score-partwise subset needed for pitch-class statistics into an
immutable score model. Plain ``.xml``/``.musicxml`` and zipped ``.mxl``
containers are both accepted.
"""

from __future__ import annotations

import io
import xml.etree.ElementTree as ET
import zipfile
from dataclasses import dataclass
from pathlib import Path
from typing import Union

STEP_BASE = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}

CONTAINER_PATH = "META-INF/container.xml"


class ScoreError(Exception):
    """Base class for everything that can go wrong while reading a score."""


class MalformedXml(ScoreError):
    pass


class UnsupportedRoot(ScoreError):
    pass


class InconsistentParts(ScoreError):
    pass


class MissingPitch(ScoreError):
    """A non-rest note has no usable pitch (absent, unpitched or out of range)."""


@dataclass(frozen=True)
class Pitch:
    step: str
    alter: int
    octave: int

    def __post_init__(self):
        if self.step not in STEP_BASE:
            raise ValueError(f"invalid step {self.step!r}")
        if not -2 <= self.alter <= 2:
            raise ValueError(f"alter {self.alter} outside [-2, 2]")
        if not 0 <= self.octave <= 9:
            raise ValueError(f"octave {self.octave} outside [0, 9]")

    @property
    def pitch_class(self) -> int:
        return (STEP_BASE[self.step] + self.alter) % 12

    @property
    def midi(self) -> int:
        return 12 * (self.octave + 1) + STEP_BASE[self.step] + self.alter


@dataclass(frozen=True)
class NoteEvent:
    pitch: Pitch
    duration_divisions: int
    voice: int = 1
    staff: int = 1
    is_tie_continuation: bool = False
    is_grace: bool = False
    is_chord_member: bool = False

    def __post_init__(self):
        if self.duration_divisions < 0 or (
            self.duration_divisions == 0 and not self.is_grace
        ):
            raise ValueError("only grace notes may have zero duration")


@dataclass(frozen=True)
class Measure:
    index: int
    printed_number: str
    events: tuple[NoteEvent, ...]
    key_fifths: int = 0
    divisions: int = 1


@dataclass(frozen=True)
class Score:
    title: str
    part_ids: tuple[str, ...]
    measures: tuple[Measure, ...]

    def __len__(self) -> int:
        return len(self.measures)

    def find_bar(self, printed_number: str) -> Measure | None:
        """First measure whose printed number matches, or None."""
        for m in self.measures:
            if m.printed_number == printed_number:
                return m
        return None

    def slice_bars(self, first: str, last: str) -> tuple[Measure, ...]:
        """Measures from printed bar ``first`` through ``last`` inclusive."""
        a, b = self.find_bar(first), self.find_bar(last)
        if a is None or b is None:
            missing = first if a is None else last
            raise KeyError(f"no bar numbered {missing!r}")
        if b.index < a.index:
            raise ValueError(f"bar {last} precedes bar {first}")
        return self.measures[a.index : b.index + 1]


def _int(elem: ET.Element | None, default: int) -> int:
    if elem is None or elem.text is None or not elem.text.strip():
        return default
    text = elem.text.strip()
    try:
        value = float(text)
    except ValueError:
        value = float("nan")
    if not value.is_integer():
        raise MalformedXml(f"expected an integer, got {text!r}")
    return int(value)


def _parse_pitch(note: ET.Element) -> Pitch:
    pitch = note.find("pitch")
    if pitch is None:
        raise MissingPitch("note without pitch or rest")
    step = (pitch.findtext("step") or "").strip()
    try:
        alter = _int(pitch.find("alter"), 0)
        octave = _int(pitch.find("octave"), -1)
        return Pitch(step, alter, octave)
    except (ValueError, MalformedXml) as exc:
        raise MissingPitch(f"unusable pitch data: {exc}") from None


def _parse_part(part: ET.Element) -> list[tuple[str, list[NoteEvent], int, int]]:
    divisions = 1
    fifths = 0
    measures = []
    for measure in part.iterfind("measure"):
        events: list[NoteEvent] = []
        for child in measure:
            if child.tag == "attributes":
                divisions = _int(child.find("divisions"), divisions)
                fifths = _int(child.find("key/fifths"), fifths)
                if divisions <= 0:
                    raise MalformedXml(f"non-positive divisions {divisions}")
            elif child.tag == "note":
                if child.find("rest") is not None:
                    continue
                pitch = _parse_pitch(child)
                is_grace = child.find("grace") is not None
                duration = _int(child.find("duration"), 0)
                if is_grace:
                    duration = 0
                elif duration <= 0:
                    raise MalformedXml("note without a positive duration")
                events.append(
                    NoteEvent(
                        pitch=pitch,
                        duration_divisions=duration,
                        voice=_int(child.find("voice"), 1),
                        staff=_int(child.find("staff"), 1),
                        is_tie_continuation=any(
                            t.get("type") == "stop" for t in child.iterfind("tie")
                        ),
                        is_grace=is_grace,
                        is_chord_member=child.find("chord") is not None,
                    )
                )
            # backup/forward only move the cursor; onsets are not tracked
        measures.append((measure.get("number", ""), events, fifths, divisions))
    return measures


def _title(root: ET.Element) -> str:
    for path in ("work/work-title", "movement-title"):
        text = root.findtext(path)
        if text and text.strip():
            return text.strip()
    return ""


def _unzip(data: bytes) -> bytes:
    try:
        with zipfile.ZipFile(io.BytesIO(data)) as archive:
            names = archive.namelist()
            if CONTAINER_PATH not in names:
                raise MalformedXml(f"compressed score lacks {CONTAINER_PATH}")
            try:
                container = ET.fromstring(archive.read(CONTAINER_PATH))
            except ET.ParseError as exc:
                raise MalformedXml(f"bad container.xml: {exc}") from None
            rootfile = container.find("rootfiles/rootfile")
            if rootfile is None or not rootfile.get("full-path"):
                raise MalformedXml("container.xml names no rootfile")
            path = rootfile.get("full-path")
            if path not in names:
                raise MalformedXml(f"rootfile {path!r} missing from archive")
            return archive.read(path)
    except zipfile.BadZipFile as exc:
        raise MalformedXml(f"bad .mxl container: {exc}") from None


def parse_musicxml(document: bytes) -> Score:
    """Parse a score-partwise document (plain XML or .mxl bytes)."""
    if document[:4] == b"PK\x03\x04":
        document = _unzip(document)
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        raise MalformedXml(str(exc)) from None
    if root.tag != "score-partwise":
        raise UnsupportedRoot(f"root element <{root.tag}> is not score-partwise")

    parts = root.findall("part")
    part_ids = tuple(p.get("id", "") for p in parts)
    parsed = [_parse_part(p) for p in parts]
    counts = {len(p) for p in parsed}
    if len(counts) > 1:
        detail = ", ".join(f"{pid}={len(p)}" for pid, p in zip(part_ids, parsed))
        raise InconsistentParts(f"parts disagree on measure count: {detail}")

    measures = []
    for k in range(counts.pop() if counts else 0):
        number, _, fifths, divisions = parsed[0][k]
        events = tuple(ev for part in parsed for ev in part[k][1])
        measures.append(Measure(k, number, events, fifths, divisions))
    return Score(_title(root), part_ids, tuple(measures))


def load_score(path: Union[str, Path]) -> Score:
    return parse_musicxml(Path(path).read_bytes())
