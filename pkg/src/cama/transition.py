"""Block transition-probability matrix over listener and song nodes.

    TP = [ 0      TP_LS ]
         [ TP_SL  TP_SS ]

A listener row is normalized by its listener-song weight; a song row shares
one denominator between its listener and song neighbours.  Weights are the
graph's 0/1 adjacency, so every non-empty row is uniform over neighbours.
Rows of isolated nodes stay all-zero.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import IO

import numpy as np
from scipy import sparse

from .graph import HeteroGraph

ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class TransitionMatrix:
    n: int
    m: int
    matrix: sparse.csr_array  # row-major; row i holds p(i -> j)

    @property
    def dim(self) -> int:
        return self.n + self.m

    def row(self, i: int) -> list[tuple[int, float]]:
        a = self.matrix
        lo, hi = a.indptr[i], a.indptr[i + 1]
        return list(zip(a.indices[lo:hi].tolist(), a.data[lo:hi].tolist()))

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def dump_csv(self, out: IO[str] | str | Path) -> None:
        """Write ``row,col,prob`` triples in lexicographic order."""
        if isinstance(out, (str, Path)):
            with open(out, "w", encoding="utf-8", newline="") as f:
                return self.dump_csv(f)
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["row", "col", "prob"])
        for i in range(self.dim):
            for j, p in self.row(i):
                w.writerow([i, j, repr(p)])


def _inv(denominator: np.ndarray) -> np.ndarray:
    out = np.zeros_like(denominator, dtype=np.float64)
    nz = denominator > 0
    out[nz] = 1.0 / denominator[nz]
    return out


def build_transition(graph: HeteroGraph) -> TransitionMatrix:
    n = graph.n
    adj = graph.adjacency
    w_ls = adj[:n, n:]
    w_sl = adj[n:, :n]
    w_ss = adj[n:, n:]

    listener_denom = np.asarray(w_ls.sum(axis=1)).ravel()
    song_denom = np.asarray(w_sl.sum(axis=1)).ravel() + np.asarray(w_ss.sum(axis=1)).ravel()
    dl = sparse.diags_array(_inv(listener_denom))
    ds = sparse.diags_array(_inv(song_denom))

    tp = sparse.block_array(
        [[None, dl @ w_ls], [ds @ w_sl, ds @ w_ss]],
        format="csr",
    )
    tp = sparse.csr_array(tp, shape=(graph.size, graph.size))
    tp.eliminate_zeros()
    tp.sort_indices()
    return TransitionMatrix(n=graph.n, m=graph.m, matrix=tp)


def row_stochastic_check(tp: TransitionMatrix, tol: float = ROW_SUM_TOL) -> list[tuple[int, float]]:
    """Rows whose sum is neither 0 nor 1 within ``tol``, as ``(row, sum)``."""
    a = tp.matrix
    bad = []
    for i in range(a.shape[0]):
        lo, hi = a.indptr[i], a.indptr[i + 1]
        if hi == lo:
            continue
        total = float(np.sum(a.data[lo:hi]))
        if abs(total - 1.0) > tol and abs(total) > tol:
            bad.append((i, total))
    return bad
