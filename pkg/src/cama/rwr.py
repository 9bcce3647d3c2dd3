"""Random walk with restart from a listener node.

Each step starts from a zero vector, pushes ``alpha * score[x] * TP[x, y]``
from every node ``x`` to every neighbour ``y`` and then adds ``1 - alpha`` at
the source.  In matrix form this is ``s <- alpha * TP.T @ s + (1 - alpha) e``,
which :func:`rwr_oracle` solves directly for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .corpus import Corpus, CorpusError
from .graph import HeteroGraph
from .transition import TransitionMatrix

ORACLE_MAX_DIM = 500


@dataclass(frozen=True)
class WalkConfig:
    alpha: float = 0.8
    maximum_step: int = 50
    convergence_tol: float = 1e-10

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.maximum_step < 1:
            raise ValueError("maximum_step must be >= 1")
        if self.convergence_tol < 0:
            raise ValueError("convergence_tol must be non-negative")


def _check_source(tp: TransitionMatrix, source: int) -> None:
    if not 0 <= source < tp.dim:
        raise ValueError(f"source node {source} out of range [0, {tp.dim})")
    if source >= tp.n:
        raise ValueError(f"source node {source} is a song node; walks start at a listener")


def rwr_iterates(tp: TransitionMatrix, source: int, alpha: float, maximum_step: int) -> Iterator[np.ndarray]:
    """Yield the score vector after each of ``maximum_step`` synchronous steps."""
    _check_source(tp, source)
    pull = tp.matrix.T.tocsr()  # row y of TP.T gathers every x -> y transition
    score = np.zeros(tp.dim)
    score[source] = 1.0
    for _ in range(maximum_step):
        temp = alpha * (pull @ score)
        temp[source] += 1.0 - alpha
        score = temp
        yield score


def rwr_rank(tp: TransitionMatrix, source: int, config: WalkConfig = WalkConfig()) -> np.ndarray:
    """Scores for all ``n + m`` nodes; the song slice is ``scores[tp.n:]``.

    Stops after ``config.maximum_step`` steps, or earlier once the L1 change
    between consecutive iterates drops below ``config.convergence_tol``.
    """
    _check_source(tp, source)
    prev = np.zeros(tp.dim)
    prev[source] = 1.0
    score = prev
    for score in rwr_iterates(tp, source, config.alpha, config.maximum_step):
        if config.convergence_tol > 0 and np.abs(score - prev).sum() < config.convergence_tol:
            break
        prev = score
    return score


def rwr_oracle(tp: TransitionMatrix, source: int, alpha: float) -> np.ndarray:
    """Fixed point of the walk by dense solve of ``(I - alpha TP.T) s = (1 - alpha) e``."""
    if tp.dim > ORACLE_MAX_DIM:
        raise ValueError(f"oracle limited to {ORACLE_MAX_DIM} nodes, got {tp.dim}")
    _check_source(tp, source)
    if not 0.0 <= alpha < 1.0:
        raise ValueError("oracle system is singular unless 0 <= alpha < 1")
    a = np.eye(tp.dim) - alpha * tp.toarray().T
    b = np.zeros(tp.dim)
    b[source] = 1.0 - alpha
    return np.linalg.solve(a, b)


def rank_songs(scores: np.ndarray, n: int, exclude, top_n: int) -> list[tuple[int, float]]:
    """Best ``top_n`` songs not in ``exclude`` as ``(song, score)``; ties go to the lower index."""
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    song_scores = scores[n:]
    order = np.lexsort((np.arange(song_scores.size), -song_scores))
    skip = set(exclude)
    out = []
    for s in order.tolist():
        if s in skip:
            continue
        out.append((s, float(song_scores[s])))
        if len(out) == top_n:
            break
    return out


def recommend(
    corpus: Corpus,
    graph: HeteroGraph,
    tp: TransitionMatrix,
    listener: int,
    config: WalkConfig = WalkConfig(),
    top_n: int = 5,
) -> list[int]:
    """Top-``top_n`` song indices for ``listener`` that are not already in its playlist."""
    if not 0 <= listener < corpus.n:
        raise CorpusError(f"listener index {listener} out of range")
    scores = rwr_rank(tp, listener, config)
    return [s for s, _ in rank_songs(scores, graph.n, corpus.playlists[listener], top_n)]
