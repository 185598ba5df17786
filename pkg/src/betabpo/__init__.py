"""Exact binary polynomial optimisation on beta-acyclic hypergraphs."""
from .classify import AlphaCertificate, BetaCertificate, is_alpha_acyclic, is_beta_acyclic
from .core import (
    EdgeChain,
    Hypergraph,
    Instance,
    NestPointFinder,
    evaluate,
    find_nest_point,
    is_nest_point,
    remove_node,
)
from .elimination import FlipClass, FlipClassification, classify_flips, compute_lambda, rewrite_profits
from .instances import RandomModel, WeightedGraph, from_maxcut, generate, removal_experiment
from .oracle import TooLarge, brute_force_max
from .solver import (
    EliminationTrace,
    NotBetaAcyclic,
    OpCounter,
    ReducedProblem,
    Solution,
    lift,
    lift_with_sets,
    reduce,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaCertificate", "BetaCertificate", "EdgeChain", "EliminationTrace", "FlipClass",
    "FlipClassification", "Hypergraph", "Instance", "NestPointFinder", "NotBetaAcyclic",
    "OpCounter", "RandomModel", "ReducedProblem", "Solution", "TooLarge", "WeightedGraph",
    "brute_force_max", "classify_flips", "compute_lambda", "evaluate", "find_nest_point",
    "from_maxcut", "generate", "is_alpha_acyclic", "is_beta_acyclic", "is_nest_point",
    "lift", "lift_with_sets", "reduce", "remove_node", "removal_experiment",
    "rewrite_profits", "solve",
]
