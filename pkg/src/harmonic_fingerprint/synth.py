"""Minimal MusicXML writer for test fixtures and synthetic benchmark scores.

Only the elements the ingester reads are emitted. Not a general exporter.
"""

from __future__ import annotations

import io
import random
import zipfile
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence
from xml.sax.saxutils import escape

from .score import STEP_BASE

SHARP_SPELLING = [("C", 0), ("C", 1), ("D", 0), ("D", 1), ("E", 0), ("F", 0),
                  ("F", 1), ("G", 0), ("G", 1), ("A", 0), ("A", 1), ("B", 0)]


@dataclass(frozen=True)
class SynthNote:
    step: str = "C"
    alter: int = 0
    octave: int = 4
    duration: int = 1
    chord: bool = False
    tie_stop: bool = False
    tie_start: bool = False
    grace: bool = False
    staff: int = 1
    voice: int = 1
    rest: bool = False

    @property
    def pitch_class(self) -> int:
        return (STEP_BASE[self.step] + self.alter) % 12

    def transposed(self, octaves: int) -> "SynthNote":
        return replace(self, octave=self.octave + octaves)

    @classmethod
    def from_midi(cls, midi: int, **kw) -> "SynthNote":
        step, alter = SHARP_SPELLING[midi % 12]
        return cls(step, alter, midi // 12 - 1, **kw)


Bar = Sequence[SynthNote]


def _note_xml(n: SynthNote) -> str:
    parts = ["<note>"]
    if n.grace:
        parts.append("<grace/>")
    if n.chord:
        parts.append("<chord/>")
    if n.rest:
        parts.append("<rest/>")
    else:
        alter = f"<alter>{n.alter}</alter>" if n.alter else ""
        parts.append(f"<pitch><step>{n.step}</step>{alter}<octave>{n.octave}</octave></pitch>")
    if not n.grace:
        parts.append(f"<duration>{n.duration}</duration>")
    if n.tie_stop:
        parts.append('<tie type="stop"/>')
    if n.tie_start:
        parts.append('<tie type="start"/>')
    parts.append(f"<voice>{n.voice}</voice><staff>{n.staff}</staff></note>")
    return "".join(parts)


def build_musicxml(
    parts: Mapping[str, Sequence[Bar]],
    title: str = "",
    divisions: int = 1,
    fifths: int = 0,
    numbers: Optional[Sequence[str]] = None,
) -> bytes:
    """Serialize ``{part_id: [bar, ...]}`` as a score-partwise document."""
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<score-partwise version="4.0">',
    ]
    if title:
        out.append(f"<work><work-title>{escape(title)}</work-title></work>")
    out.append("<part-list>")
    for pid in parts:
        out.append(f'<score-part id="{pid}"><part-name>{pid}</part-name></score-part>')
    out.append("</part-list>")
    for pid, bars in parts.items():
        out.append(f'<part id="{pid}">')
        for k, bar in enumerate(bars):
            number = numbers[k] if numbers else str(k + 1)
            out.append(f'<measure number="{number}">')
            if k == 0:
                out.append(
                    f"<attributes><divisions>{divisions}</divisions>"
                    f"<key><fifths>{fifths}</fifths></key><staves>2</staves></attributes>"
                )
            out.extend(_note_xml(n) for n in bar)
            out.append("</measure>")
        out.append("</part>")
    out.append("</score-partwise>")
    return ("\n".join(out) + "\n").encode("utf-8")


def build_mxl(document: bytes, inner_name: str = "score.xml") -> bytes:
    """Wrap a MusicXML document in a compressed .mxl container."""
    container = (
        '<?xml version="1.0" encoding="UTF-8"?>\n<container><rootfiles>'
        f'<rootfile full-path="{inner_name}" '
        'media-type="application/vnd.recordare.musicxml+xml"/>'
        "</rootfiles></container>\n"
    )
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w", zipfile.ZIP_DEFLATED) as z:
        z.writestr(zipfile.ZipInfo("mimetype", (1980, 1, 1, 0, 0, 0)), "application/vnd.recordare.musicxml")
        z.writestr(zipfile.ZipInfo("META-INF/container.xml", (1980, 1, 1, 0, 0, 0)), container)
        z.writestr(zipfile.ZipInfo(inner_name, (1980, 1, 1, 0, 0, 0)), document)
    return buf.getvalue()


def random_bar(rng: random.Random, max_notes: int = 10) -> list[SynthNote]:
    """A bar of random onsets over a random pitch-class subset, split over two staves."""
    pcs = rng.sample(range(12), rng.randint(1, 5))
    notes = []
    for _ in range(rng.randint(1, max_notes)):
        pc = rng.choice(pcs)
        staff = rng.choice((1, 2))
        octave = rng.randint(4, 6) if staff == 1 else rng.randint(1, 3)
        notes.append(SynthNote.from_midi(12 * (octave + 1) + pc, duration=rng.randint(1, 4), staff=staff))
    return notes


def planted_score(n_bars: int = 311, seed: int = 18) -> tuple[list[list[SynthNote]], dict]:
    """Random piano bars with known repeats planted at printed bar numbers.

    Returns the bars and the planted layout, ``{"repeats": [(first, last, copy_first), ...],
    "octave_shift": (first, last, copy_first)}`` using 1-based bar numbers.
    """
    rng = random.Random(seed)
    bars = [random_bar(rng) for _ in range(n_bars)]
    layout = {
        "repeats": [(5, 11, 13), (37, 43, 45)],
        "octave_shift": (119, 124, 127),
    }

    def copy(first, last, dest, transform):
        for k in range(last - first + 1):
            bars[dest - 1 + k] = [transform(n) for n in bars[first - 1 + k]]

    for first, last, dest in layout["repeats"]:
        # restatement with different rhythm but the same onsets
        copy(first, last, dest, lambda n: replace(n, duration=rng.randint(1, 4)))
    first, last, dest = layout["octave_shift"]
    copy(first, last, dest, lambda n: n.transposed(1))
    return bars, layout
