"""Seeded synthetic corpora: popular songs and prolific artists follow a
half-normal weight over rank.

Randomness comes from numpy's PCG64 bit generator, so a seed reproduces the
same corpus on any platform.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .corpus import Corpus


@dataclass(frozen=True)
class GenConfig:
    seed: int = 42
    n_listeners: int = 100
    n_songs: int = 50
    n_artists: int = 20
    playlist_len_range: tuple[int, int] = (11, 19)
    artists_per_song_range: tuple[int, int] = (2, 4)
    popularity_sigma: float | None = None  # None -> n_songs / 4
    artist_sigma: float | None = None  # None -> n_artists / 4

    def __post_init__(self) -> None:
        object.__setattr__(self, "playlist_len_range", tuple(self.playlist_len_range))
        object.__setattr__(self, "artists_per_song_range", tuple(self.artists_per_song_range))
        if self.n_listeners < 1 or self.n_songs < 1 or self.n_artists < 1:
            raise ValueError("n_listeners, n_songs and n_artists must be >= 1")
        lo, hi = self.playlist_len_range
        if not 1 <= lo <= hi <= self.n_songs:
            raise ValueError(f"playlist_len_range {self.playlist_len_range} must lie within [1, {self.n_songs}]")
        lo, hi = self.artists_per_song_range
        if not 1 <= lo <= hi <= self.n_artists:
            raise ValueError(
                f"artists_per_song_range {self.artists_per_song_range} must lie within [1, {self.n_artists}]"
            )
        if self.song_sigma <= 0 or self.artist_weight_sigma <= 0:
            raise ValueError("popularity sigmas must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def song_sigma(self) -> float:
        return self.n_songs / 4 if self.popularity_sigma is None else float(self.popularity_sigma)

    @property
    def artist_weight_sigma(self) -> float:
        return self.n_artists / 4 if self.artist_sigma is None else float(self.artist_sigma)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["playlist_len_range"] = list(self.playlist_len_range)
        d["artists_per_song_range"] = list(self.artists_per_song_range)
        d["popularity_sigma"] = self.song_sigma
        d["artist_sigma"] = self.artist_weight_sigma
        return d


def popularity_weights(count: int, sigma: float) -> np.ndarray:
    """Normalized ``exp(-i**2 / (2 sigma**2))`` for ranks ``i = 0..count-1``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    i = np.arange(count, dtype=np.float64)
    w = np.exp(-(i * i) / (2.0 * sigma * sigma))
    return w / w.sum()


def generate(config: GenConfig) -> Corpus:
    rng = np.random.Generator(np.random.PCG64(config.seed))
    artist_w = popularity_weights(config.n_artists, config.artist_weight_sigma)
    song_w = popularity_weights(config.n_songs, config.song_sigma)

    songs = []
    lo, hi = config.artists_per_song_range
    for j in range(config.n_songs):
        k = int(rng.integers(lo, hi, endpoint=True))
        picks = rng.choice(config.n_artists, size=k, replace=False, p=artist_w)
        songs.append((f"S{j + 1}", [f"A{x + 1}" for x in sorted(picks.tolist())]))

    playlists = []
    lo, hi = config.playlist_len_range
    for i in range(config.n_listeners):
        k = int(rng.integers(lo, hi, endpoint=True))
        picks = rng.choice(config.n_songs, size=k, replace=False, p=song_w)
        playlists.append((f"L{i + 1}", [f"S{s + 1}" for s in picks.tolist()]))

    return Corpus.from_records(playlists, songs)
