"""Holdout evaluation: per-listener 4:1 split, top-N recommendation for target
listeners, macro-averaged precision / recall / F1, and one-at-a-time
hyperparameter sweeps.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import asdict, dataclass, replace
from typing import IO, Iterable, Sequence

import numpy as np

from .corpus import Corpus, CorpusError
from .graph import HeteroGraph, build_graph
from .rwr import WalkConfig, rank_songs, rwr_rank
from .targets import Thresholds, select_targets
from .transition import TransitionMatrix, build_transition

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ("label", "alpha", "t1", "t2", "n", "precision", "recall", "f1", "n_target_listeners")
METRICS = ("precision", "recall", "f1")


def holdout_size(k: int) -> int:
    return max(2, round(k / 5))


@dataclass(frozen=True)
class SplitCorpus:
    train: Corpus
    test: tuple[frozenset[int], ...]


def split(corpus: Corpus, seed: int) -> SplitCorpus:
    """Hold out ``max(2, round(k/5))`` uniformly chosen songs per listener."""
    rng = np.random.Generator(np.random.PCG64(seed))
    train, test = [], []
    for l, songs in enumerate(corpus.playlists):
        k = len(songs)
        t = holdout_size(k)
        if k - t < 1:
            raise CorpusError(
                f"listener {corpus.listener_ids[l]!r} has {k} songs; need at least {t + 1} to hold out {t}"
            )
        held = set(rng.choice(k, size=t, replace=False).tolist())
        test.append(frozenset(songs[i] for i in held))
        train.append(tuple(s for i, s in enumerate(songs) if i not in held))
    return SplitCorpus(train=corpus.with_playlists(train), test=tuple(test))


def listener_metrics(recs: Sequence[int], test: Iterable[int], top_n: int) -> tuple[float, float, float]:
    test = set(test)
    hits = len(set(recs) & test)
    precision = hits / top_n
    recall = hits / len(test)
    f1 = 0.0 if hits == 0 else 2 * precision * recall / (precision + recall)
    return precision, recall, f1


@dataclass(frozen=True)
class EvalRow:
    label: str
    alpha: float
    t1: float
    t2: float
    n: int
    precision: float | None
    recall: float | None
    f1: float | None
    n_target_listeners: int


class Evaluation:
    """A fixed split and its training graph; walk scores are cached per (walk config, listener)."""

    def __init__(self, corpus: Corpus, seed: int):
        self.split = split(corpus, seed)
        self.graph: HeteroGraph = build_graph(self.split.train)
        self.tp: TransitionMatrix = build_transition(self.graph)
        self._scores: dict[tuple[WalkConfig, int], np.ndarray] = {}

    @property
    def train(self) -> Corpus:
        return self.split.train

    def recommendations(self, listener: int, walk: WalkConfig, top_n: int) -> list[int]:
        key = (walk, listener)
        if key not in self._scores:
            self._scores[key] = rwr_rank(self.tp, listener, walk)
        ranked = rank_songs(self._scores[key], self.graph.n, self.train.playlists[listener], top_n)
        return [s for s, _ in ranked]

    def row(self, label: str, thresholds: Thresholds, walk: WalkConfig, top_n: int) -> EvalRow:
        targets = select_targets(self.train, thresholds)
        if not targets:
            return EvalRow(label, walk.alpha, thresholds.t1, thresholds.t2, top_n, None, None, None, 0)
        per = [listener_metrics(self.recommendations(l, walk, top_n), self.split.test[l], top_n) for l in targets]
        # fsum keeps the report byte-stable regardless of numpy's summation order
        p, r, f = (math.fsum(column) / len(per) for column in zip(*per))
        return EvalRow(label, walk.alpha, thresholds.t1, thresholds.t2, top_n, p, r, f, len(targets))


def evaluate(
    corpus: Corpus,
    thresholds: Thresholds = Thresholds(),
    walk: WalkConfig = WalkConfig(),
    top_n: int = 5,
    seed: int = 42,
) -> EvalRow:
    return Evaluation(corpus, seed).row("base", thresholds, walk, top_n)


@dataclass(frozen=True)
class SweepSpec:
    alphas: tuple[float, ...] = (0.2, 0.4, 0.6, 0.8)
    t1s: tuple[float, ...] = tuple(i / 10 for i in range(1, 8))
    t2s: tuple[float, ...] = tuple(i / 10 for i in range(1, 10))
    ns: tuple[int, ...] = tuple(range(1, 11))

    def __post_init__(self) -> None:
        for name in ("alphas", "t1s", "t2s", "ns"):
            values = tuple(getattr(self, name))
            if not values:
                raise ValueError(f"sweep list {name!r} is empty")
            object.__setattr__(self, name, values)


def sweep(
    corpus: Corpus,
    spec: SweepSpec = SweepSpec(),
    seed: int = 42,
    thresholds: Thresholds = Thresholds(),
    walk: WalkConfig = WalkConfig(),
    evaluation: Evaluation | None = None,
) -> list[EvalRow]:
    """Vary alpha, t1 and t2 one at a time around a base point, over every N.

    The base point is ``walk.alpha`` / ``thresholds``, overridden by any sweep
    list holding a single value.  Each axis with two or more values yields one
    series labelled by the axis name; if no axis varies, a single ``base``
    series is produced.  All rows share one split.
    """
    ev = evaluation or Evaluation(corpus, seed)
    base_alpha = spec.alphas[0] if len(spec.alphas) == 1 else walk.alpha
    base_t1 = spec.t1s[0] if len(spec.t1s) == 1 else thresholds.t1
    base_t2 = spec.t2s[0] if len(spec.t2s) == 1 else thresholds.t2

    points: list[tuple[str, float, float, float]] = []
    if len(spec.alphas) > 1:
        points += [("alpha", a, base_t1, base_t2) for a in spec.alphas]
    if len(spec.t1s) > 1:
        points += [("t1", base_alpha, t1, base_t2) for t1 in spec.t1s]
    if len(spec.t2s) > 1:
        points += [("t2", base_alpha, base_t1, t2) for t2 in spec.t2s]
    if not points:
        points = [("base", base_alpha, base_t1, base_t2)]

    rows = []
    for label, alpha, t1, t2 in points:
        w = replace(walk, alpha=alpha)
        th = Thresholds(t1, t2)
        for top_n in spec.ns:
            rows.append(ev.row(label, th, w, top_n))
        logger.debug("sweep %s alpha=%s t1=%s t2=%s done", label, alpha, t1, t2)
    return rows


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_report(rows: Iterable[EvalRow], out: IO[str], fmt: str = "csv") -> None:
    """CSV with a header row, or one JSON object per line for ``fmt="json"``."""
    if fmt == "json":
        for row in rows:
            out.write(json.dumps(asdict(row)) + "\n")
        return
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for row in rows:
        w.writerow([_cell(getattr(row, c)) for c in REPORT_COLUMNS])


def plot_series(rows: Sequence[EvalRow]) -> dict[str, list[list[str]]]:
    """Metric-vs-N tables, one per (metric, swept hyperparameter).

    Keys look like ``precision_vs_n_by_alpha``; each table has an ``n`` column
    followed by one column per hyperparameter value.
    """
    tables: dict[str, list[list[str]]] = {}
    labels = list(dict.fromkeys(r.label for r in rows))
    for label in labels:
        series = [r for r in rows if r.label == label]
        attr = label if label in ("alpha", "t1", "t2") else "alpha"
        values = list(dict.fromkeys(getattr(r, attr) for r in series))
        ns = sorted({r.n for r in series})
        lookup = {(getattr(r, attr), r.n): r for r in series}
        for metric in METRICS:
            table = [["n"] + [f"{attr}={v!r}" for v in values]]
            for n in ns:
                table.append([str(n)] + [_cell(getattr(lookup[(v, n)], metric)) for v in values])
            tables[f"{metric}_vs_n_by_{label}"] = table
    return tables
