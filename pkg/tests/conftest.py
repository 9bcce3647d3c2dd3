from __future__ import annotations

import numpy as np
import pytest

from cama.corpus import Corpus
from cama.datagen import GenConfig, generate

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


FIG1_SONGS = [
    ("S1", ["A1", "A3"]),
    ("S2", ["A1"]),
    ("S3", ["A1"]),
    ("S4", ["A2"]),
    ("S5", ["A2", "A3"]),
]


def fig1_corpus(extra_songs=()) -> Corpus:
    return Corpus.from_records([("L1", ["S1", "S2", "S3", "S4", "S5"])], FIG1_SONGS + list(extra_songs))


def chain_corpus() -> Corpus:
    # song i and i+1 share artist Ci, nothing else is shared
    songs = [(f"S{i}", [x for x in (f"C{i - 1}" if i > 0 else None, f"C{i}" if i < 9 else None) if x])
             for i in range(10)]
    return Corpus.from_records([("L", [s for s, _ in songs])], songs)


def split_corpus() -> Corpus:
    songs = [(f"F{i}", ["Fav"]) for i in range(25)] + [(f"O{i}", [f"X{i}"]) for i in range(25)]
    return Corpus.from_records([("L", [s for s, _ in songs])], songs)


def two_node_corpus() -> Corpus:
    return Corpus.from_records([("L", ["S"])], [("S", ["A"])])


def random_corpus(rng: np.random.Generator, max_nodes: int = 60) -> Corpus:
    """Small random corpus; songs may be unheard, artists may be shared or not."""
    n = int(rng.integers(1, 16))
    m = int(rng.integers(1, max_nodes - n + 1))
    a = int(rng.integers(1, max(2, m)))
    songs = []
    for s in range(m):
        k = int(rng.integers(1, min(3, a) + 1))
        songs.append((f"S{s}", [f"A{x}" for x in rng.choice(a, size=k, replace=False).tolist()]))
    playlists = []
    for l in range(n):
        k = int(rng.integers(1, min(m, 8) + 1))
        playlists.append((f"L{l}", [f"S{x}" for x in rng.choice(m, size=k, replace=False).tolist()]))
    return Corpus.from_records(playlists, songs)


@pytest.fixture
def fig1() -> Corpus:
    return fig1_corpus()


@pytest.fixture(scope="session")
def default_corpus() -> Corpus:
    return generate(GenConfig(seed=42))
