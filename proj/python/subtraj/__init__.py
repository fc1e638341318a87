"""Subtrajectory clustering under the continuous Frechet distance."""

from ._subtraj import (
    Breakpoints,
    ClusteringResult,
    CoverInterval,
    Curve,
    InfeasibleError,
    cluster,
    decide_frechet,
    frechet_distance,
    greedy_simplify,
    phi,
    run_cli,
    simplify,
    verify_cover,
)

__all__ = [
    "Breakpoints",
    "ClusteringResult",
    "CoverInterval",
    "Curve",
    "InfeasibleError",
    "cluster",
    "decide_frechet",
    "frechet_distance",
    "greedy_simplify",
    "phi",
    "run_cli",
    "simplify",
    "verify_cover",
]
