"""SVG rendering of fingerprint glyphs and whole-piece glyph strips.

Output is byte-deterministic: element order is fixed and every coordinate is
written with four decimals.
"""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence
from xml.sax.saxutils import escape

from .harmony import Fingerprint

RGB = tuple[int, int, int]

# HSV(i * 30deg, 0.85, 0.90) per circle position, rounded to 8-bit.
DEFAULT_COLORS: tuple[RGB, ...] = (
    (230, 34, 34),
    (230, 132, 34),
    (230, 230, 34),
    (132, 230, 34),
    (34, 230, 34),
    (34, 230, 132),
    (34, 230, 230),
    (34, 132, 230),
    (34, 34, 230),
    (132, 34, 230),
    (230, 34, 230),
    (230, 34, 132),
)

OUTLINE_COLOR = "#999999"
LABEL_COLOR = "#000000"


class InvalidSpec(ValueError):
    pass


class EmptyInput(ValueError):
    pass


@dataclass(frozen=True)
class ColorTable:
    entries: tuple[RGB, ...] = DEFAULT_COLORS

    def __post_init__(self):
        if len(self.entries) != 12:
            raise InvalidSpec("a color table needs exactly 12 entries")

    @classmethod
    def from_hsv(cls, saturation: float = 0.85, value: float = 0.90) -> "ColorTable":
        entries = []
        for pos in range(12):
            r, g, b = colorsys.hsv_to_rgb(pos * 30 / 360, saturation, value)
            entries.append((round(r * 255), round(g * 255), round(b * 255)))
        return cls(tuple(entries))

    def hex(self, position: int) -> str:
        return "#{:02x}{:02x}{:02x}".format(*self.entries[position])


@dataclass(frozen=True)
class RenderSpec:
    """Geometry and style for glyph output.

    Glyphs are always drawn with C at twelve o'clock, proceeding clockwise.
    """

    glyph_diameter_px: float = 96.0
    gap_angle_deg: float = 1.0
    show_root_label: bool = True
    strip_columns: int = 8
    background: Optional[RGB] = None
    label_reserve_ratio: float = 0.125
    cell_padding_px: float = 8.0

    def validate(self) -> None:
        if not self.glyph_diameter_px > 0:
            raise InvalidSpec(f"glyph diameter must be positive, got {self.glyph_diameter_px}")
        if not 0 <= self.gap_angle_deg < 5:
            raise InvalidSpec(f"gap angle must lie in [0, 5), got {self.gap_angle_deg}")
        if self.strip_columns < 1:
            raise InvalidSpec(f"strip columns must be >= 1, got {self.strip_columns}")
        if not 0 <= self.label_reserve_ratio < 0.5:
            raise InvalidSpec("label reserve ratio must lie in [0, 0.5)")
        if self.cell_padding_px < 0:
            raise InvalidSpec("cell padding must be non-negative")

    @property
    def outer_radius(self) -> float:
        return self.glyph_diameter_px / 2

    @property
    def label_reserve(self) -> float:
        return self.glyph_diameter_px * self.label_reserve_ratio


def fmt(x: float) -> str:
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


def segment_span(position: int, gap_deg: float) -> tuple[float, float]:
    """Clockwise start/end angle in degrees from twelve o'clock."""
    center = position * 30.0
    return center - 15.0 + gap_deg / 2, center + 15.0 - gap_deg / 2


def _polar(cx: float, cy: float, r: float, deg: float) -> tuple[str, str]:
    theta = math.radians(deg)
    return fmt(cx + r * math.sin(theta)), fmt(cy - r * math.cos(theta))


def sector_path(cx: float, cy: float, r_in: float, r_out: float, a0: float, a1: float) -> str:
    """Annular sector between two clockwise angles (span < 180 degrees)."""
    ox0, oy0 = _polar(cx, cy, r_out, a0)
    ox1, oy1 = _polar(cx, cy, r_out, a1)
    ix1, iy1 = _polar(cx, cy, r_in, a1)
    ix0, iy0 = _polar(cx, cy, r_in, a0)
    ro, ri = fmt(r_out), fmt(r_in)
    return (
        f"M {ox0} {oy0} A {ro} {ro} 0 0 1 {ox1} {oy1} "
        f"L {ix1} {iy1} A {ri} {ri} 0 0 0 {ix0} {iy0} Z"
    )


def _glyph_elements(
    fp: Fingerprint, spec: RenderSpec, colors: ColorTable, cx: float, cy: float
) -> Iterator[str]:
    r_out = spec.outer_radius
    r_in = spec.label_reserve
    yield (
        f'<circle cx="{fmt(cx)}" cy="{fmt(cy)}" r="{fmt(r_out)}" fill="none" '
        f'stroke="{OUTLINE_COLOR}" stroke-width="0.5000"/>'
    )
    for seg in fp.segments:
        if seg.count == 0:
            continue
        a0, a1 = segment_span(seg.circle_position, spec.gap_angle_deg)
        r = r_in + seg.normalized_radius * (r_out - r_in)
        d = sector_path(cx, cy, r_in, r, a0, a1)
        yield (
            f'<path d="{d}" fill="{colors.hex(seg.circle_position)}" '
            f'data-pitch-class="{seg.pitch_class}" data-count="{seg.count}"/>'
        )
    if spec.show_root_label and fp.root.pitch_class is not None:
        size = spec.glyph_diameter_px / 6
        yield (
            f'<text x="{fmt(cx)}" y="{fmt(cy)}" font-family="sans-serif" '
            f'font-size="{fmt(size)}" fill="{LABEL_COLOR}" text-anchor="middle" '
            f'dominant-baseline="central">{escape(fp.root.label)}</text>'
        )


def _document(width: float, height: float, spec: RenderSpec, body: Sequence[str]) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{fmt(width)}" '
        f'height="{fmt(height)}" viewBox="0 0 {fmt(width)} {fmt(height)}">',
    ]
    if spec.background is not None:
        r, g, b = spec.background
        lines.append(
            f'<rect x="0.0000" y="0.0000" width="{fmt(width)}" height="{fmt(height)}" '
            f'fill="#{r:02x}{g:02x}{b:02x}"/>'
        )
    lines.extend(body)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_glyph(
    fp: Fingerprint, spec: RenderSpec = RenderSpec(), colors: ColorTable = ColorTable()
) -> str:
    spec.validate()
    d = spec.glyph_diameter_px
    body = [f'<g class="glyph" data-measure-index="{fp.measure_index}">']
    body.extend(_glyph_elements(fp, spec, colors, d / 2, d / 2))
    body.append("</g>")
    return _document(d, d, spec, body)


@dataclass(frozen=True)
class StripLayout:
    columns: int
    rows: int
    cell_width: float
    cell_height: float

    @property
    def width(self) -> float:
        return self.columns * self.cell_width

    @property
    def height(self) -> float:
        return self.rows * self.cell_height


def strip_layout(n: int, spec: RenderSpec) -> StripLayout:
    cols = min(spec.strip_columns, n)
    rows = -(-n // spec.strip_columns)
    d, pad = spec.glyph_diameter_px, spec.cell_padding_px
    return StripLayout(cols, rows, d + 2 * pad, d + 2 * pad + d / 6)


def render_strip(
    fps: Sequence[Fingerprint],
    spec: RenderSpec = RenderSpec(),
    colors: ColorTable = ColorTable(),
) -> str:
    """Grid of glyphs, ``spec.strip_columns`` per row, each captioned with its bar number."""
    spec.validate()
    if not fps:
        raise EmptyInput("no fingerprints to render")
    for prev, cur in zip(fps, fps[1:]):
        if cur.measure_index <= prev.measure_index:
            raise ValueError("measure indices must be strictly increasing")

    layout = strip_layout(len(fps), spec)
    d, pad = spec.glyph_diameter_px, spec.cell_padding_px
    caption_size = d / 8
    body = []
    for k, fp in enumerate(fps):
        row, col = divmod(k, spec.strip_columns)
        x0, y0 = col * layout.cell_width, row * layout.cell_height
        cx, cy = x0 + pad + d / 2, y0 + pad + d / 2
        body.append(
            f'<g class="glyph" data-measure-index="{fp.measure_index}" '
            f'data-row="{row}" data-column="{col}">'
        )
        body.extend(_glyph_elements(fp, spec, colors, cx, cy))
        body.append(
            f'<text x="{fmt(cx)}" y="{fmt(y0 + pad + d + d / 12)}" font-family="sans-serif" '
            f'font-size="{fmt(caption_size)}" fill="{LABEL_COLOR}" text-anchor="middle" '
            f'dominant-baseline="central">{escape(fp.caption)}</text>'
        )
        body.append("</g>")
    return _document(layout.width, layout.height, spec, body)
