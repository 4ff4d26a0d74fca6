"""Generalized Sprague-Grundy values, P/N/D classification and optimal play on cyclic game graphs."""

from .gamma_engine import Labeling, ValidationReport, compute_gamma, gamma_of_family, gamma_prime, validate_labeling
from .graph_core import (
    BudgetExceeded,
    GameGraph,
    GraphError,
    build_graph,
    fig2_family,
    longest_path,
    nim_heap,
    reachable_subgraph,
    unbounded_fan,
)
from .nim_algebra import Inf, gnim_sum, mex, sigma, xor
from .oracle import classic_sg, oracle_classify, random_graph
from .strategy import Move, Outcome, best_move, classify, respond_to_escalation, simulate

__all__ = [
    "BudgetExceeded", "GameGraph", "GraphError", "Inf", "Labeling", "Move", "Outcome",
    "ValidationReport", "best_move", "build_graph", "classic_sg", "classify", "compute_gamma",
    "fig2_family", "gamma_of_family", "gamma_prime", "gnim_sum", "longest_path", "mex",
    "nim_heap", "oracle_classify", "random_graph", "reachable_subgraph", "respond_to_escalation",
    "sigma", "simulate", "unbounded_fan", "validate_labeling", "xor",
]
