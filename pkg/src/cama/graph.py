"""Listener-song graph with common-artist song-song edges.

Node ``l`` (``0 <= l < n``) is listener ``l``; node ``n + s`` is song ``s``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy import sparse

from .corpus import Corpus


def common_artist_pairs(corpus: Corpus) -> set[tuple[int, int]]:
    """Unordered song pairs ``(i, j)``, ``i < j``, that share at least one artist."""
    by_artist: dict[int, list[int]] = defaultdict(list)
    for s, artists in enumerate(corpus.song_artists):
        for x in artists:
            by_artist[x].append(s)
    pairs: set[tuple[int, int]] = set()
    for songs in by_artist.values():
        pairs.update(combinations(songs, 2))  # songs are appended in ascending order
    return pairs


@dataclass(frozen=True)
class HeteroGraph:
    n: int
    m: int
    adjacency: sparse.csr_array  # symmetric 0/1, (n+m) x (n+m), sorted indices

    @property
    def size(self) -> int:
        return self.n + self.m

    def song_node(self, song: int) -> int:
        return self.n + song

    def neighbors(self, node: int) -> np.ndarray:
        a = self.adjacency
        return a.indices[a.indptr[node] : a.indptr[node + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.adjacency.indptr)

    @property
    def ls_edges(self) -> list[tuple[int, int]]:
        """``(listener, song)`` pairs, song as a song index."""
        return [(l, int(v) - self.n) for l in range(self.n) for v in self.neighbors(l)]

    @property
    def ss_edges(self) -> list[tuple[int, int]]:
        out = []
        for s in range(self.m):
            for v in self.neighbors(self.n + s):
                if v > self.n + s:
                    out.append((s, int(v) - self.n))
        return out


def build_graph(corpus: Corpus) -> HeteroGraph:
    n, m = corpus.n, corpus.m
    rows: list[int] = []
    cols: list[int] = []
    for l, songs in enumerate(corpus.playlists):
        for s in songs:
            rows += (l, n + s)
            cols += (n + s, l)
    for i, j in common_artist_pairs(corpus):
        rows += (n + i, n + j)
        cols += (n + j, n + i)
    size = n + m
    adj = sparse.coo_array(
        (np.ones(len(rows)), (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))),
        shape=(size, size),
    ).tocsr()
    adj.sum_duplicates()
    adj.sort_indices()
    return HeteroGraph(n=n, m=m, adjacency=adj)
