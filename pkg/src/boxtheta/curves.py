"""Explicit rational and elliptic curves on the box variety, and the
degree/genus bound for curves with bijective normalization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import sympy

from .modular import IDENTITY, ModularMatrix, gamma4_mod_gamma8_reps, mobius
from .theta import CHAR_00, CHAR_01, CHAR_10, DEFAULT_BUDGET, TruncationBudget, check_upper_half, theta
from .variety import normalize, projectively_close, raw_parametrize, singular_points

__all__ = [
    "RATIONAL_CURVE_CONSTANT",
    "CurveTag",
    "CurveInvariants",
    "rational_tags",
    "rational_curve_identity_residual",
    "on_rational_curve",
    "boundary_identity_residual",
    "diagonal_elliptic_residuals",
    "diagonal_elliptic_dependency",
    "degree_genus_bound",
    "distance_to_nodes",
]

# theta00(z)^4 theta01(w)^4 - theta01(z)^4 theta00(w)^4 = K * W1 W2 W3 C
# with W2 = i (theta10(2z) theta00(2w) - theta00(2z) theta10(2w)); K comes out as -4i
RATIONAL_CURVE_CONSTANT = -4j

_FAMILIES = ("rational_modular", "boundary_elliptic", "diagonal_elliptic")


@dataclass(frozen=True)
class CurveTag:
    family: str
    M: ModularMatrix = IDENTITY
    k: int = 0

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown curve family {self.family!r}")
        if self.family == "rational_modular":
            if self.k not in (0, 2, 4, 6):
                raise ValueError("translation k must be one of 0, 2, 4, 6")
            if self.M.mod(8) not in {r.mod(8) for r in gamma4_mod_gamma8_reps()}:
                raise ValueError(f"{self.M} is not a Gamma[4]/Gamma[8] representative")

    def to_json(self) -> dict:
        return {"family": self.family, "M": self.M.to_list(), "k": self.k}

    @classmethod
    def from_json(cls, data: dict) -> "CurveTag":
        return cls(data["family"], ModularMatrix(*data["M"]), data["k"])


@dataclass(frozen=True)
class CurveInvariants:
    degree: int
    genus: int

    def __post_init__(self):
        if self.degree < 1 or self.genus < 0:
            raise ValueError("need degree >= 1 and genus >= 0")


def rational_tags() -> list[CurveTag]:
    """The 32 curves ``w = Mz + k``."""
    return [CurveTag("rational_modular", M, k) for M in gamma4_mod_gamma8_reps() for k in (0, 2, 4, 6)]


def _relative(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / (max(abs(lhs), abs(rhs)) + 1.0)


def rational_curve_identity_residual(
    z: complex, w: complex, budget: TruncationBudget = DEFAULT_BUDGET, *, scaled: bool = False
) -> float:
    """Residual of ``theta00(z)^4 theta01(w)^4 - theta01(z)^4 theta00(w)^4 = K W1 W2 W3 C``.

    Both sides are raw weight-4 forms, not projective points. With ``scaled``
    the residual is divided by the larger side's modulus plus one.
    """
    t00z, t01z = theta(CHAR_00, z, budget), theta(CHAR_01, z, budget)
    t00w, t01w = theta(CHAR_00, w, budget), theta(CHAR_01, w, budget)
    lhs = t00z**4 * t01w**4 - t01z**4 * t00w**4
    _, _, _, w1, w2, w3, c = raw_parametrize(z, w, budget)
    rhs = RATIONAL_CURVE_CONSTANT * w1 * w2 * w3 * c
    return _relative(lhs, rhs) if scaled else abs(lhs - rhs)


def on_rational_curve(
    z: complex, tag: CurveTag, budget: TruncationBudget = DEFAULT_BUDGET, *, scaled: bool = True
) -> float:
    """``|W1 W2 W3 C|`` at ``(z, Mz + k)``; scaled by the fourth power of the largest coordinate."""
    if tag.family != "rational_modular":
        raise ValueError("expected a rational_modular tag")
    w = mobius(tag.M, z) + tag.k
    v = raw_parametrize(z, w, budget)
    product = abs(v[3] * v[4] * v[5] * v[6])
    if scaled:
        return float(product / np.max(np.abs(v)) ** 4)
    return float(product)


def boundary_identity_residual(z: complex, w: complex, budget: TruncationBudget = DEFAULT_BUDGET) -> float:
    """``|theta00 theta10 theta01 (z) * theta00 theta10 theta01 (w) - Z1 Z2 Z3|``."""
    six = 1.0 + 0j
    for x in (z, w):
        for ch in (CHAR_00, CHAR_10, CHAR_01):
            six *= theta(ch, x, budget)
    z1, z2, z3 = raw_parametrize(z, w, budget)[:3]
    return abs(six - z1 * z2 * z3)


def diagonal_elliptic_residuals(z: complex, budget: TruncationBudget = DEFAULT_BUDGET) -> np.ndarray:
    """The five defining equations of the curve ``w = z + 1`` on the normalized point."""
    z = check_upper_half(z)
    z1, z2, z3, w1, w2, w3, c = normalize(raw_parametrize(z, z + 1, budget))
    return np.abs(
        [
            w1 - w2,
            z1 - z2,
            math.sqrt(2) * w1 - z3,
            w3 * w3 + z3 * z3 - c * c,
            2 * z2 * z2 + z3 * z3 - 2 * c * c,
        ]
    )


def diagonal_elliptic_dependency() -> tuple[sympy.Expr, sympy.Expr]:
    """Remainders of the two quadratic equations modulo the linear ones and the box relations.

    Both are zero: the quadrics follow from ``W1 = W2, Z1 = Z2, sqrt2 W1 = Z3``
    and the four box relations.
    """
    Z1, Z2, Z3, W1, W2, W3, C = sympy.symbols("Z1 Z2 Z3 W1 W2 W3 C")
    r2 = sympy.sqrt(2)
    ideal = [
        W1 - W2,
        Z1 - Z2,
        r2 * W1 - Z3,
        W1**2 + W2**2 - Z3**2,
        W1**2 + W3**2 - Z2**2,
        W2**2 + W3**2 - Z1**2,
        W1**2 + W2**2 + W3**2 - C**2,
    ]
    gens = (Z3, Z1, W2, W1, Z2, W3, C)
    basis = sympy.groebner(ideal, *gens, order="lex", extension=r2)
    targets = (W3**2 + Z3**2 - C**2, 2 * Z2**2 + Z3**2 - 2 * C**2)
    return tuple(basis.reduce(t)[1] for t in targets)


def degree_genus_bound(ci: CurveInvariants) -> bool:
    """``d <= 176 + 16 g``."""
    return ci.degree <= 176 + 16 * ci.genus


def distance_to_nodes(point) -> float:
    """Smallest projective distance from a point to one of the 48 nodes."""
    return min(projectively_close(node.coords, point) for node in singular_points())
