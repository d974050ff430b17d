"""Lattice points and Ehrhart quasi-polynomials of polytopes built from {1,3}-graphs."""

from .ehrhart import QuasiPolynomial, ehrhart_of, evaluate, interpolate, period
from .lattice import count_p, count_q, enumerate_p_points, enumerate_q_points, tree_dp_count, vol_coset
from .multigraph import (
    MultiGraph,
    are_isomorphic,
    caterpillar,
    enumerate_internally_eulerian,
    eulerian_count_formula,
    parse_g13,
    validate_13,
)
from .polytopes import QPoint, build_p_system, build_q_system, contains

__all__ = [
    "MultiGraph",
    "QPoint",
    "QuasiPolynomial",
    "are_isomorphic",
    "build_p_system",
    "build_q_system",
    "caterpillar",
    "contains",
    "count_p",
    "count_q",
    "ehrhart_of",
    "enumerate_internally_eulerian",
    "enumerate_p_points",
    "enumerate_q_points",
    "eulerian_count_formula",
    "evaluate",
    "interpolate",
    "parse_g13",
    "period",
    "tree_dp_count",
    "validate_13",
    "vol_coset",
]
