import numpy as np
import pytest

from src.core.errors import LengthMismatch, ResolutionTooCoarse
from src.music.metrics import (
    chroma_onsets,
    chroma_similarity,
    grooving_pattern,
    grooving_similarity,
    grooving_xor,
    metric_bundle,
    note_density_distance,
    ssmd,
)
from src.music.pianoroll import N_PITCHES, Pianoroll


@pytest.fixture
def target(make_roll):
    # C major triad on beat one of each half-measure (8 steps at 4 per quarter)
    return make_roll(
        [(60, 0, 4), (64, 0, 4), (67, 0, 4), (60, 8, 12), (64, 8, 12), (67, 8, 12)],
        length=16,
    )


def test_identical_rolls(target):
    assert metric_bundle(target, target) == pytest.approx(
        {"ssmd": 0.0, "cs": 100.0, "gs": 100.0, "ndd": 0.0}
    )


def test_chroma_onsets(target):
    seq = chroma_onsets(target)
    assert len(seq) == 2
    assert seq.vectors[0].nonzero()[0].tolist() == [0, 4, 7]


def test_ssmd_of_changed_harmony(target, make_roll):
    pred = make_roll([(60, 0, 4), (66, 8, 12)], length=16)
    # target SSM is all ones, prediction's is the identity
    assert ssmd(target, pred) == pytest.approx(25.0)


def test_chroma_similarity_with_silent_prediction(target, make_roll):
    silent = make_roll([], length=16)
    assert chroma_similarity(target, silent) == 0.0


def test_chroma_similarity_partial_overlap(make_roll):
    t = make_roll([(60, 0, 1), (64, 0, 1)], length=8)
    p = make_roll([(60, 0, 1)], length=8)
    assert chroma_similarity(t, p) == pytest.approx(100 / 2**0.5)


def test_grooving(make_roll):
    t = make_roll([(60, 0, 1), (62, 4, 5)], length=16)
    p = make_roll([(60, 1, 2)], length=16)
    assert grooving_pattern(t).tolist() == [1, 1, 0, 0]
    assert grooving_xor(t, p) == pytest.approx(0.25)
    assert grooving_similarity(t, p) == pytest.approx(75.0)


def test_note_density_distance(make_roll):
    t = make_roll([(60, 0, 1), (64, 0, 1), (67, 1, 2)], length=4)
    p = make_roll([(60, 0, 1), (67, 1, 2), (72, 1, 2)], length=4)
    # first 16th misses half its pitches, second misses none
    assert note_density_distance(t, p) == pytest.approx(25.0)


def test_note_density_of_silent_target(make_roll):
    silent = make_roll([], length=4)
    assert note_density_distance(silent, make_roll([(60, 0, 4)], length=4)) == 0.0


def test_note_density_needs_sixteenths(make_roll):
    coarse = make_roll([(60, 0, 2)], length=4, spq=2)
    with pytest.raises(ResolutionTooCoarse):
        note_density_distance(coarse, coarse)


def test_length_mismatch(make_roll):
    with pytest.raises(LengthMismatch):
        ssmd(make_roll([], length=8), make_roll([], length=16))


def test_coarse_bundle_keeps_other_metrics(make_roll):
    t = make_roll([(60, 0, 1), (64, 2, 3)], length=8, spq=2)
    p = make_roll([(60, 0, 1)], length=8, spq=2)
    bundle = metric_bundle(t, p)
    assert bundle["ndd"] is None
    assert bundle["gs"] == pytest.approx(75.0)
    # first half-measure matches one of two chromas, the second is silent
    assert bundle["cs"] == pytest.approx(100 / (2 * 2**0.5))
    assert bundle["ssmd"] == pytest.approx(0.0)


METRICS = [ssmd, chroma_similarity, grooving_similarity, note_density_distance]


@pytest.mark.parametrize("metric", METRICS, ids=lambda m: m.__name__)
def test_tiling_leaves_metrics_unchanged(make_roll, metric):
    # two half-measures; no note reaches the last step, so tiling adds no merges
    t = make_roll(
        [(60, 0, 2), (64, 0, 2), (67, 4, 6), (62, 8, 10), (65, 12, 14)], length=16
    )
    p = make_roll([(60, 0, 2), (67, 5, 6), (62, 8, 9), (69, 13, 15)], length=16)
    once = metric(t, p)
    twice = metric(t.tiled(2), p.tiled(2))
    assert twice == pytest.approx(once, abs=1e-9)


@pytest.mark.parametrize("metric", METRICS, ids=lambda m: m.__name__)
def test_metrics_stay_in_range(metric):
    rng = np.random.default_rng(0)
    for _ in range(1000):
        grid = rng.random((2, 2, N_PITCHES, 16)) < rng.uniform(0.0, 0.05)
        t, p = (Pianoroll(g.astype(np.uint8), 4) for g in grid)
        value = metric(t, p)
        assert 0.0 <= value <= 100.0
