import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from scipy.stats import chisquare

from cama.datagen import GenConfig, generate, popularity_weights

# Frozen from an offline run of the default generator, seed 42.
SEED42_CHI2 = 1394.8839050131926


def test_defaults_respect_ranges(default_corpus):
    c = default_corpus
    assert (c.n, c.m) == (100, 50)
    assert all(11 <= len(p) <= 19 for p in c.playlists)
    assert all(2 <= len(a) <= 4 for a in c.song_artists)
    assert all(len(set(p)) == len(p) for p in c.playlists)


def test_deterministic():
    assert generate(GenConfig(seed=7)) == generate(GenConfig(seed=7))
    assert generate(GenConfig(seed=7)) != generate(GenConfig(seed=8))


def test_song_popularity_non_uniform(default_corpus):
    counts = np.bincount([s for p in default_corpus.playlists for s in p], minlength=50)
    result = chisquare(counts)
    assert result.statistic == pytest.approx(SEED42_CHI2, rel=1e-12)
    assert result.pvalue < 0.01
    # unimodal over rank: decade bins fall off from the most popular end
    bins = counts.reshape(5, 10).sum(axis=1)
    assert all(a >= b for a, b in zip(bins, bins[1:]))


def test_artist_frequency_skewed(default_corpus):
    c = default_corpus
    by_name = {f"A{i + 1}": 0 for i in range(20)}
    for artists in c.song_artists:
        for x in artists:
            by_name[c.artist_ids[x]] += 1
    assert chisquare(list(by_name.values())).pvalue < 0.01


def test_weights_single():
    assert popularity_weights(1, 0.3).tolist() == [1.0]


def test_weights_flat_limit():
    np.testing.assert_allclose(popularity_weights(3, 1e6), [1 / 3] * 3, atol=1e-6)


def test_weights_formula():
    raw = [math.exp(-i * i / 3.125) for i in range(5)]
    expected = [x / sum(raw) for x in raw]
    np.testing.assert_allclose(popularity_weights(5, 1.25), expected, rtol=1e-14)
    np.testing.assert_allclose(
        expected,
        [0.48395750482593836, 0.35142527611394125, 0.13455823817586757, 0.027166839755203176, 0.0028921411290497565],
        rtol=1e-14,
    )


@given(st.integers(1, 200), st.floats(0.5, 1e4))
def test_weights_properties(count, sigma):
    assume((count - 1) ** 2 / (2 * sigma**2) < 700)  # tail stays above float64 underflow
    w = popularity_weights(count, sigma)
    assert w.shape == (count,)
    assert np.all(w > 0)
    assert abs(w.sum() - 1) <= 1e-12
    assert np.all(np.diff(w) <= 0)


@pytest.mark.parametrize("sigma", [0.0, -1.0])
def test_weights_reject_sigma(sigma):
    with pytest.raises(ValueError):
        popularity_weights(3, sigma)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(playlist_len_range=(0, 5)),
        dict(playlist_len_range=(11, 60)),
        dict(playlist_len_range=(12, 11)),
        dict(artists_per_song_range=(2, 21)),
        dict(popularity_sigma=0.0),
        dict(artist_sigma=-2.0),
        dict(n_songs=0),
        dict(seed=-1),
    ],
)
def test_config_invariants(kwargs):
    with pytest.raises(ValueError):
        GenConfig(**kwargs)


def test_small_config():
    c = generate(GenConfig(seed=1, n_listeners=3, n_songs=4, n_artists=2,
                           playlist_len_range=(4, 4), artists_per_song_range=(1, 2)))
    assert all(sorted(p) == [0, 1, 2, 3] for p in c.playlists)
    assert c.a <= 2
