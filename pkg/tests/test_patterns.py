import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from harmonic_fingerprint.harmony import PitchClassHistogram, fingerprint, fingerprint_from_histogram
from harmonic_fingerprint.patterns import (
    InvalidMinLen,
    InvalidThreshold,
    Span,
    ThemeMatch,
    candidate_matches,
    find_themes,
    prune_overlaps,
    similarity,
    similarity_matrix,
)
from harmonic_fingerprint.score import Measure, NoteEvent, Pitch

from oracles import brute_force_themes, cosine


def H(*pcs):
    return PitchClassHistogram.from_pitch_classes(pcs)


def fps_of(hists):
    return [fingerprint_from_histogram(h, k) for k, h in enumerate(hists)]


def as_tuples(matches):
    return [(m.span_a.start, m.span_b.start, m.length) for m in matches]


A, B, C = H(0, 4, 7), H(2, 5, 9), H(7, 11, 2, 5)
EMPTY = H()


def test_similarity_identical():
    assert similarity(A, A) == 1.0


def test_similarity_disjoint():
    assert similarity(H(0, 4), H(1, 6)) == 0.0


def test_similarity_c_vs_c_g():
    dot = sum(x * y for x, y in zip(H(0).counts, H(0, 7).counts))
    assert dot == 1
    expected = 1 / math.sqrt(2)
    assert similarity(H(0), H(0, 7)) == pytest.approx(expected, abs=1e-12)
    assert round(similarity(H(0), H(0, 7)), 4) == 0.7071


def test_similarity_empty_conventions():
    assert similarity(EMPTY, EMPTY) == 1.0
    assert similarity(EMPTY, A) == 0.0
    assert similarity(A, EMPTY) == 0.0


def test_similarity_is_scale_free_and_exact():
    doubled = PitchClassHistogram(tuple(2 * c for c in C.counts))
    assert similarity(C, doubled) == 1.0


def test_similarity_accepts_fingerprints_and_sequences():
    fa, fb = fps_of([A, B])
    assert similarity(fa, fb) == similarity(A, B) == similarity(A.counts, B.counts)


def test_matrix_single():
    m = similarity_matrix(fps_of([A]))
    assert m.shape == (1, 1) and m[0, 0] == 1.0


def test_matrix_two_identical():
    assert np.all(similarity_matrix(fps_of([A, A])) == 1.0)


def test_matrix_agrees_with_pairwise_and_oracle():
    hists = [A, B, C, EMPTY, H(0, 0, 7), H(0, 7), EMPTY]
    m = similarity_matrix(fps_of(hists))
    for i, a in enumerate(hists):
        for j, b in enumerate(hists):
            assert m[i, j] == similarity(a, b)
            assert m[i, j] == pytest.approx(cosine(a.counts, b.counts), abs=1e-12)
    assert np.array_equal(m, m.T)
    assert np.all(np.diag(m) == 1.0)
    assert m.min() >= 0 and m.max() <= 1


def test_matrix_rejects_empty_input():
    with pytest.raises(ValueError):
        similarity_matrix([])


def test_find_themes_abab_c():
    themes = find_themes(fps_of([A, B, A, B, C]), threshold=0.95, min_len=2)
    assert themes == [ThemeMatch(Span(0, 2), Span(2, 2), 1.0)]
    assert as_tuples(themes) == brute_force_themes([h.counts for h in [A, B, A, B, C]], 0.95, 2)


def test_find_themes_all_distinct():
    hists = [H(k) for k in range(6)]
    assert find_themes(fps_of(hists)) == []


def test_find_themes_three_occurrences():
    seq = [A, B, A, B, A, B]
    found = as_tuples(find_themes(fps_of(seq), 0.95, 2))
    assert found == brute_force_themes([h.counts for h in seq], 0.95, 2)
    assert (0, 2, 2) in found and (0, 4, 2) in found and (2, 4, 2) in found


def test_find_themes_long_run_is_split_into_nonoverlapping_windows():
    seq = [A] * 5
    cands = as_tuples(candidate_matches(similarity_matrix(fps_of(seq)), 0.95, 1))
    # offset 1: windows of length 1; offset 2: length 2 windows; etc.
    assert (0, 2, 2) in cands and (0, 1, 1) in cands
    assert all(j >= i + L for i, j, L in cands)
    assert as_tuples(find_themes(fps_of(seq), 0.95, 1)) == brute_force_themes(
        [h.counts for h in seq], 0.95, 1
    )


def test_min_pair_similarity_reported():
    near = H(0, 4, 7, 7, 7, 7, 7, 7, 7, 7, 11)
    seq = [A, near, B, A, A, B]
    themes = find_themes(fps_of(seq), threshold=0.5, min_len=2)
    assert themes
    for m in themes:
        pairs = [similarity(seq[m.span_a.start + k], seq[m.span_b.start + k]) for k in range(m.length)]
        assert m.min_pair_similarity == pytest.approx(min(pairs))
        assert all(p >= 0.5 for p in pairs)


def test_prune_keeps_longest_first():
    long = ThemeMatch(Span(0, 4), Span(10, 4), 1.0)
    short = ThemeMatch(Span(2, 2), Span(12, 2), 1.0)
    other = ThemeMatch(Span(2, 2), Span(20, 2), 1.0)
    assert prune_overlaps([short, other, long]) == [long, other]


@pytest.mark.parametrize("threshold", [0, -0.1, 1.5])
def test_invalid_threshold(threshold):
    with pytest.raises(InvalidThreshold):
        find_themes(fps_of([A, B]), threshold=threshold)


def test_invalid_min_len():
    with pytest.raises(InvalidMinLen):
        find_themes(fps_of([A, B]), min_len=0)


def test_threshold_one_is_allowed():
    assert as_tuples(find_themes(fps_of([A, B, A, B]), threshold=1.0, min_len=2)) == [(0, 2, 2)]


# invariants

PROTOS = [(0, 4, 7), (2, 5, 9), (7, 11, 2), (0, 4, 7, 7), (5, 9, 0, 3), ()]


def bars_st(max_size=12):
    return st.lists(st.sampled_from(PROTOS), min_size=1, max_size=max_size)


def to_measures(bars, octave_of=lambda k: 4):
    steps = ["C", "C", "D", "D", "E", "F", "F", "G", "G", "A", "A", "B"]
    alters = [0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0]
    return [
        Measure(k, str(k + 1), tuple(NoteEvent(Pitch(steps[pc], alters[pc], octave_of(k)), 1) for pc in bar))
        for k, bar in enumerate(bars)
    ]


@given(bars_st(), st.lists(st.integers(1, 8), min_size=12, max_size=12))
def test_octave_transposed_bars_give_same_themes(bars, octaves):
    plain = [fingerprint(m) for m in to_measures(bars)]
    moved = [fingerprint(m) for m in to_measures(bars, lambda k: octaves[k])]
    assert find_themes(plain, 0.9, 2) == find_themes(moved, 0.9, 2)


@given(bars_st(), st.floats(0.05, 1.0), st.floats(0.0, 0.5), st.integers(1, 3))
def test_higher_threshold_matches_are_contained_in_lower_ones(bars, hi, delta, min_len):
    lo = max(0.01, hi - delta)
    sim = similarity_matrix([fingerprint(m) for m in to_measures(bars)])
    loose = candidate_matches(sim, lo, min_len)
    for m in candidate_matches(sim, hi, min_len):
        d = m.span_b.start - m.span_a.start
        assert any(
            l.span_b.start - l.span_a.start == d
            and l.span_a.start <= m.span_a.start
            and m.span_a.stop <= l.span_a.stop
            for l in loose
        )


@given(bars_st(16), st.floats(0.05, 1.0), st.integers(1, 4))
def test_matches_are_non_overlapping_and_above_threshold(bars, threshold, min_len):
    fps = [fingerprint(m) for m in to_measures(bars)]
    sim = similarity_matrix(fps)
    themes = find_themes(fps, threshold, min_len)
    for m in themes:
        assert m.length >= min_len
        assert not m.span_a.overlaps(m.span_b)
        assert all(sim[a, b] >= threshold for a, b in zip(m.span_a.indices(), m.span_b.indices()))
    for x in themes:
        for y in themes:
            assert x is y or not x.overlaps(y)
    assert themes == sorted(themes, key=lambda m: (m.span_a.start, m.span_b.start))
