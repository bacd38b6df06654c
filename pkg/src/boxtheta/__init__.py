"""Theta functions, the box variety and the cuboid search."""
from .automorphisms import SurfaceAutomorphism, exact_matrix, full_generators, group_closure_order, node_orbit
from .cuboid import CuboidCandidate, RationalBoxPoint, SearchConfig, classify, search
from .curves import CurveInvariants, CurveTag, degree_genus_bound
from .cyclotomic import CyclotomicMatrix, CyclotomicScalar
from .modular import MatrixPair, ModularMatrix, membership, mobius
from .suites import SuiteReport, run_suite
from .theta import ThetaChar, TruncationBudget, theta, theta_eval
from .variety import BoxPoint, parametrize, residuals, singular_points

__version__ = "0.1.0"

__all__ = [
    "BoxPoint",
    "CuboidCandidate",
    "CurveInvariants",
    "CurveTag",
    "CyclotomicMatrix",
    "CyclotomicScalar",
    "MatrixPair",
    "ModularMatrix",
    "RationalBoxPoint",
    "SearchConfig",
    "SuiteReport",
    "SurfaceAutomorphism",
    "ThetaChar",
    "TruncationBudget",
    "classify",
    "degree_genus_bound",
    "exact_matrix",
    "full_generators",
    "group_closure_order",
    "membership",
    "mobius",
    "node_orbit",
    "parametrize",
    "residuals",
    "run_suite",
    "search",
    "singular_points",
    "theta",
    "theta_eval",
]
