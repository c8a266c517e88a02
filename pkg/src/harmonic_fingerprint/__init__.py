"""Harmonic fingerprints: per-bar pitch-class glyphs on the circle of fifths."""

from .harmony import (
    DEFAULT_POLICY,
    CountingPolicy,
    Fingerprint,
    PitchClassHistogram,
    RootEstimate,
    circle_index,
    estimate_root,
    fingerprint,
    fingerprints,
    histogram,
    pitch_class,
)
from .patterns import ThemeMatch, find_themes, similarity, similarity_matrix
from .render import ColorTable, RenderSpec, render_glyph, render_strip
from .score import Measure, NoteEvent, Pitch, Score, load_score, parse_musicxml

__version__ = "0.1.0"
