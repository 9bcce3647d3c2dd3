from itertools import combinations

import numpy as np
from hypothesis import given, settings, strategies as st

from cama.corpus import Corpus
from cama.graph import build_graph, common_artist_pairs

from conftest import random_corpus

FIG1_PAIRS = {(0, 1), (0, 2), (1, 2), (3, 4), (0, 4)}  # S1S2 S1S3 S2S3 S4S5 S1S5


def all_pairs_oracle(corpus):
    return {
        (i, j)
        for i, j in combinations(range(corpus.m), 2)
        if set(corpus.song_artists[i]) & set(corpus.song_artists[j])
    }


def test_fig1_pairs(fig1):
    assert all_pairs_oracle(fig1) == FIG1_PAIRS
    assert common_artist_pairs(fig1) == FIG1_PAIRS


def test_fig1_graph(fig1):
    g = build_graph(fig1)
    assert (g.n, g.m, g.size) == (1, 5, 6)
    assert g.ls_edges == [(0, s) for s in range(5)]
    assert set(g.ss_edges) == FIG1_PAIRS


def test_single_pair():
    g = build_graph(Corpus.from_records([("L", ["S"])], [("S", ["A"])]))
    assert g.size == 2 and g.ls_edges == [(0, 0)] and g.ss_edges == []


def test_disjoint_artists():
    c = Corpus.from_records([("L", ["S", "T"])], [("S", ["A"]), ("T", ["B"])])
    assert build_graph(c).ss_edges == []
    assert common_artist_pairs(c) == set()


def test_complete_when_all_share():
    c = Corpus.from_records([("L", ["S0"])], [(f"S{i}", ["A1", f"B{i}"]) for i in range(6)])
    assert common_artist_pairs(c) == set(combinations(range(6), 2))


def test_multiple_shared_artists_single_edge(fig1):
    c = Corpus.from_records([("L", ["S", "T"])], [("S", ["A", "B"]), ("T", ["A", "B"])])
    g = build_graph(c)
    assert g.adjacency[1, 2] == 1.0 and g.ss_edges == [(0, 1)]


def check_invariants(corpus, g):
    adj = g.adjacency.toarray()
    n = g.n
    assert np.array_equal(adj, adj.T)
    assert not adj[:n, :n].any()
    assert not np.diag(adj).any()
    assert set(np.unique(adj)) <= {0.0, 1.0}
    assert set(g.ss_edges) == all_pairs_oracle(corpus)
    deg = g.degrees()
    assert deg[:n].sum() == sum(len(p) for p in corpus.playlists)
    partners = {s: 0 for s in range(g.m)}
    for i, j in g.ss_edges:
        partners[i] += 1
        partners[j] += 1
    for s in range(g.m):
        listeners = sum(s in p for p in corpus.playlists)
        assert deg[n + s] == listeners + partners[s]
    for v in range(g.size):
        nb = g.neighbors(v)
        assert np.all(np.diff(nb) > 0)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_invariants_random(seed):
    c = random_corpus(np.random.default_rng(seed))
    check_invariants(c, build_graph(c))
    assert common_artist_pairs(c) == all_pairs_oracle(c)


def test_invariants_default(default_corpus):
    assert default_corpus.m == 50
    check_invariants(default_corpus, build_graph(default_corpus))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.randoms(use_true_random=False))
def test_line_order_invariance(seed, rnd):
    c = random_corpus(np.random.default_rng(seed))
    playlists, catalog = c.logical()
    p_items = list(playlists.items())
    s_items = [(s, sorted(a)) for s, a in catalog.items()]
    rnd.shuffle(p_items)
    rnd.shuffle(s_items)
    d = Corpus.from_records(p_items, s_items)

    def named_edges(corpus):
        g = build_graph(corpus)
        names = list(corpus.listener_ids) + list(corpus.song_ids)
        a = g.adjacency.tocoo()
        return {(names[i], names[j]) for i, j in zip(a.row.tolist(), a.col.tolist())}

    assert named_edges(c) == named_edges(d)
