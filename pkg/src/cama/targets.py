"""Target listener selection from common-artist playlist statistics.

``cama1`` is the share of unordered song pairs in a playlist whose artist sets
intersect; ``cama2`` is how many playlist songs feature the single most
frequent artist, over the playlist length.  Both are kept as exact fractions
so threshold comparisons at ratios like 2/5 are not at the mercy of binary
floating point.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .corpus import Corpus, CorpusError


class IneligibleListener(CorpusError):
    """Playlist too short for pairwise statistics."""


def _exact(value: float | Fraction | str) -> Fraction:
    # 0.4 means 2/5, not the nearest binary double
    return value if isinstance(value, Fraction) else Fraction(str(value))


@dataclass(frozen=True)
class CamaScores:
    cama1_exact: Fraction
    cama2_exact: Fraction

    @property
    def cama1(self) -> float:
        return float(self.cama1_exact)

    @property
    def cama2(self) -> float:
        return float(self.cama2_exact)


@dataclass(frozen=True)
class Thresholds:
    t1: float = 0.4
    t2: float = 0.5

    def __post_init__(self) -> None:
        for name in ("t1", "t2"):
            if not 0 <= _exact(getattr(self, name)) <= 1:
                raise ValueError(f"threshold {name} must lie in [0, 1]")

    def admits(self, scores: CamaScores) -> bool:
        return scores.cama1_exact > _exact(self.t1) and scores.cama2_exact > _exact(self.t2)


def playlist_scores(songs: tuple[int, ...] | list[int], song_artists) -> CamaScores:
    k = len(songs)
    if k < 2:
        raise IneligibleListener(f"playlist of {k} song(s) has no song pairs")
    artist_sets = [frozenset(song_artists[s]) for s in songs]
    shared = sum(1 for a, b in combinations(artist_sets, 2) if not a.isdisjoint(b))
    counts = Counter(x for artists in artist_sets for x in artists)
    top = max(counts.values())
    return CamaScores(Fraction(shared, k * (k - 1) // 2), Fraction(top, k))


def cama_scores(listener: int, corpus: Corpus) -> CamaScores:
    if not 0 <= listener < corpus.n:
        raise CorpusError(f"listener index {listener} out of range")
    try:
        return playlist_scores(corpus.playlists[listener], corpus.song_artists)
    except IneligibleListener as exc:
        raise IneligibleListener(f"listener {corpus.listener_ids[listener]!r}: {exc}") from None


def score_all(corpus: Corpus) -> list[CamaScores | None]:
    """Scores per listener, ``None`` for playlists shorter than two songs."""
    out: list[CamaScores | None] = []
    for l, songs in enumerate(corpus.playlists):
        out.append(playlist_scores(songs, corpus.song_artists) if len(songs) >= 2 else None)
    return out


def select_targets(corpus: Corpus, thresholds: Thresholds = Thresholds()) -> list[int]:
    """Listener indices, ascending, whose cama1 and cama2 both strictly exceed the thresholds."""
    return [l for l, s in enumerate(score_all(corpus)) if s is not None and thresholds.admits(s)]
