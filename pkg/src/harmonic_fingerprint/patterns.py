"""Fingerprint similarity and recurring-theme discovery."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .harmony import Fingerprint, PitchClassHistogram


class InvalidThreshold(ValueError):
    pass


class InvalidMinLen(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Span:
    start: int
    length: int

    @property
    def stop(self) -> int:
        return self.start + self.length

    def overlaps(self, other: "Span") -> bool:
        return self.start < other.stop and other.start < self.stop

    def indices(self) -> range:
        return range(self.start, self.stop)


@dataclass(frozen=True)
class ThemeMatch:
    span_a: Span
    span_b: Span
    min_pair_similarity: float

    @property
    def length(self) -> int:
        return self.span_a.length

    def overlaps(self, other: "ThemeMatch") -> bool:
        """True when both matches claim the same cells of the similarity matrix."""
        return self.span_a.overlaps(other.span_a) and self.span_b.overlaps(other.span_b)


def _counts(h) -> Sequence[int]:
    if isinstance(h, Fingerprint):
        return h.histogram.counts
    if isinstance(h, PitchClassHistogram):
        return h.counts
    return h


def similarity(a, b) -> float:
    """Cosine similarity of two pitch-class count vectors, in [0, 1].

    Two empty bars are identical (1.0); an empty bar matches nothing else (0.0).
    Parallel vectors yield exactly 1.0.
    """
    a, b = _counts(a), _counts(b)
    na = sum(x * x for x in a)
    nb = sum(x * x for x in b)
    if na == 0 and nb == 0:
        return 1.0
    if na == 0 or nb == 0:
        return 0.0
    dot = sum(x * y for x, y in zip(a, b))
    if dot * dot == na * nb:
        return 1.0
    return min(1.0, max(0.0, dot / math.sqrt(na * nb)))


def similarity_matrix(fps: Sequence[Fingerprint]) -> np.ndarray:
    """Pairwise similarity of all measure histograms as an n x n array."""
    if len(fps) == 0:
        raise ValueError("need at least one fingerprint")
    h = np.array([_counts(fp) for fp in fps], dtype=np.int64)
    dot = h @ h.T
    norms = np.diag(dot).copy()
    outer = np.outer(norms, norms)
    with np.errstate(divide="ignore", invalid="ignore"):
        sim = dot / np.sqrt(outer)
    sim = np.clip(np.nan_to_num(sim, nan=0.0), 0.0, 1.0)
    sim[dot * dot == outer] = 1.0
    empty = norms == 0
    sim[np.ix_(empty, ~empty)] = 0.0
    sim[np.ix_(~empty, empty)] = 0.0
    sim[np.ix_(empty, empty)] = 1.0
    return sim


def _validate(threshold: float, min_len: int) -> None:
    if not 0 < threshold <= 1:
        raise InvalidThreshold(f"threshold must lie in (0, 1], got {threshold}")
    if min_len < 1:
        raise InvalidMinLen(f"min_len must be >= 1, got {min_len}")


def candidate_matches(
    sim: np.ndarray, threshold: float = 0.95, min_len: int = 2
) -> list[ThemeMatch]:
    """Every maximal non-overlapping span pair above threshold, before pruning.

    Works diagonal by diagonal: a run of R qualifying cells at offset d gives
    one match of length R when R <= d, otherwise every length-d window of the
    run (longer windows would make the two spans overlap).
    """
    _validate(threshold, min_len)
    n = sim.shape[0]
    found = []
    for d in range(1, n):
        diag = np.diagonal(sim, offset=d) >= threshold
        k = 0
        while k < len(diag):
            if not diag[k]:
                k += 1
                continue
            start = k
            while k < len(diag) and diag[k]:
                k += 1
            run = k - start
            length = min(run, d)
            if length < min_len:
                continue
            for i in range(start, start + run - length + 1):
                cells = sim[np.arange(i, i + length), np.arange(i + d, i + d + length)]
                found.append(
                    ThemeMatch(Span(i, length), Span(i + d, length), float(cells.min()))
                )
    return found


def prune_overlaps(matches: Iterable[ThemeMatch]) -> list[ThemeMatch]:
    """Keep longest matches first (earliest start on ties), drop any that overlap a kept one."""
    kept: list[ThemeMatch] = []
    for m in sorted(matches, key=lambda m: (-m.length, m.span_a.start, m.span_b.start)):
        if not any(m.overlaps(k) for k in kept):
            kept.append(m)
    return sorted(kept, key=lambda m: (m.span_a.start, m.span_b.start))


def find_themes(
    fps: Sequence[Fingerprint], threshold: float = 0.95, min_len: int = 2
) -> list[ThemeMatch]:
    """Recurring bar sequences whose fingerprints match bar-for-bar."""
    _validate(threshold, min_len)
    if len(fps) == 0:
        return []
    return prune_overlaps(candidate_matches(similarity_matrix(fps), threshold, min_len))
