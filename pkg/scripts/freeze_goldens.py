"""Regenerate the golden SVG files under tests/fixtures/golden.

Run only after reviewing a rendering change; the tests compare byte-for-byte.
The reference-score goldens are written only when that score is present.
"""

import os
from pathlib import Path

from harmonic_fingerprint import fingerprint, fingerprints, load_score, render_glyph, render_strip
from harmonic_fingerprint.score import Measure, NoteEvent, Pitch

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
GOLDEN = FIXTURES / "golden"


def reference_score_path():
    env = os.environ.get("HARMONIC_FP_REFERENCE")
    if env:
        return Path(env)
    for suffix in (".mxl", ".musicxml", ".xml"):
        p = FIXTURES / f"grande_valse_brillante{suffix}"
        if p.exists():
            return p
    return None


def write(name, text):
    (GOLDEN / name).write_text(text, encoding="utf-8", newline="\n")
    print("wrote", GOLDEN / name)


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    notes = [("C", 4), ("E", 4), ("G", 4), ("C", 5), ("B", 3), ("D", 5)]
    cmaj = Measure(0, "1", tuple(NoteEvent(Pitch(s, 0, o), 1) for s, o in notes))
    write("cmaj7_glyph.svg", render_glyph(fingerprint(cmaj)))

    synth = load_score(FIXTURES / "synthetic_311.mxl")
    write("synthetic_bar6.svg", render_glyph(fingerprint(synth.find_bar("6"))))
    write("synthetic_strip.svg", render_strip(fingerprints(synth.measures)))

    ref = reference_score_path()
    if ref is None or not ref.exists():
        print("reference score absent; skipped its goldens")
        return
    score = load_score(ref)
    write("gvb_bar6.svg", render_glyph(fingerprint(score.find_bar("6"))))
    write("gvb_strip.svg", render_strip(fingerprints(score.measures)))


if __name__ == "__main__":
    main()
