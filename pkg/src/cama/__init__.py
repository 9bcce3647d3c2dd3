"""Common-artist music recommendation with random walk with restart."""

from .corpus import Corpus, CorpusError, load_corpus, save_corpus
from .datagen import GenConfig, generate, popularity_weights
from .graph import HeteroGraph, build_graph, common_artist_pairs
from .rwr import WalkConfig, recommend, rwr_oracle, rwr_rank
from .targets import CamaScores, IneligibleListener, Thresholds, cama_scores, select_targets
from .transition import TransitionMatrix, build_transition, row_stochastic_check

__all__ = [
    "CamaScores",
    "Corpus",
    "CorpusError",
    "GenConfig",
    "HeteroGraph",
    "IneligibleListener",
    "Thresholds",
    "TransitionMatrix",
    "WalkConfig",
    "build_graph",
    "build_transition",
    "cama_scores",
    "common_artist_pairs",
    "generate",
    "load_corpus",
    "popularity_weights",
    "recommend",
    "row_stochastic_check",
    "rwr_oracle",
    "rwr_rank",
    "save_corpus",
    "select_targets",
]
