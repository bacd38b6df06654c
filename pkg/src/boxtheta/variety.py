"""The box variety in P^6 and its theta parametrization.

Coordinates are ordered ``Z1, Z2, Z3, W1, W2, W3, C`` and satisfy

    W1^2 + W2^2 = Z3^2,   W1^2 + W3^2 = Z2^2,
    W2^2 + W3^2 = Z1^2,   W1^2 + W2^2 + W3^2 = C^2.

Also here: the elliptic curve ``a^2 = c^2 + d^2, b^2 = c^2 - d^2`` in P^3,
its Weierstrass model ``y^2 z = x^3 - x z^2`` and the involutions acting on it.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
import sympy

from .cyclotomic import I, ONE, SQRT2, ZERO, CyclotomicScalar, normalize_vector
from .theta import (
    CHAR_00,
    CHAR_01,
    CHAR_10,
    DEFAULT_BUDGET,
    TruncationBudget,
    check_upper_half,
    principal_sqrt,
    theta,
    theta00_tail,
)

__all__ = [
    "COORDINATES",
    "PreconditionError",
    "DegenerateChartError",
    "BoxPoint",
    "ResidualReport",
    "AbcdPoint",
    "WeierstrassPoint",
    "normalize",
    "projectively_close",
    "raw_parametrize",
    "parametrize",
    "residuals",
    "jacobian",
    "jacobian_singular_values",
    "is_singular",
    "singular_points_exact",
    "singular_points",
    "lattice_sweep_singular",
    "sigma",
    "abcd_from_z",
    "abcd_residuals",
    "random_curve_points",
    "weierstrass_from_z",
    "weierstrass",
    "curve_residual",
    "tau_rho",
    "elliptic_add",
    "elliptic_neg",
    "rho_fixed_point_cases",
    "omega_numerators",
    "psi_values",
    "INFINITY",
    "TWO_TORSION",
    "TAU_ORIGIN",
]

COORDINATES = ("Z1", "Z2", "Z3", "W1", "W2", "W3", "C")
_TIE = 1e-12


class PreconditionError(ValueError):
    """Input does not satisfy the equations an operation requires."""


class DegenerateChartError(ValueError):
    """The linear Weierstrass substitution vanishes away from its base point."""


def normalize(vec: Sequence[complex]) -> np.ndarray:
    """Scale so the coordinate of largest modulus is 1 (first one on ties)."""
    v = np.asarray(vec, dtype=complex)
    mags = np.abs(v)
    top = mags.max()
    if not np.isfinite(top) or top == 0:
        raise ValueError("projective point needs a nonzero finite coordinate")
    k = int(np.argmax(mags >= top * (1 - _TIE)))
    out = v / v[k]
    out[k] = 1.0
    return out


def projectively_close(p: Sequence[complex], q: Sequence[complex]) -> float:
    """Distance between two projective points after scaling both by ``p``'s pivot."""
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    k = int(np.argmax(np.abs(p)))
    if q[k] == 0:
        return math.inf
    return float(np.max(np.abs(p / p[k] - q / q[k])))


class _Projective:
    coords: tuple

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=complex)

    def to_json(self) -> list[list[float]]:
        return [[float(c.real), float(c.imag)] for c in self.coords]

    def distance(self, other) -> float:
        return projectively_close(self.coords, other.coords)


@dataclass(frozen=True)
class BoxPoint(_Projective):
    coords: tuple[complex, ...]

    def __post_init__(self):
        if len(self.coords) != 7:
            raise ValueError("a box point has seven coordinates")

    @classmethod
    def from_coords(cls, vec: Sequence[complex]) -> "BoxPoint":
        return cls(tuple(complex(c) for c in normalize(vec)))

    @classmethod
    def from_json(cls, data: Sequence[Sequence[float]]) -> "BoxPoint":
        return cls.from_coords([complex(re, im) for re, im in data])

    def __getattr__(self, name):
        try:
            return self.coords[COORDINATES.index(name)]
        except ValueError:
            raise AttributeError(name) from None


class ResidualReport(NamedTuple):
    r1: float
    r2: float
    r3: float
    r4: float

    def max(self) -> float:
        return max(self)


@dataclass(frozen=True)
class AbcdPoint(_Projective):
    coords: tuple[complex, complex, complex, complex]

    @classmethod
    def from_coords(cls, vec: Sequence[complex]) -> "AbcdPoint":
        return cls(tuple(complex(c) for c in normalize(vec)))


@dataclass(frozen=True)
class WeierstrassPoint(_Projective):
    coords: tuple[complex, complex, complex]

    @classmethod
    def from_coords(cls, vec: Sequence[complex]) -> "WeierstrassPoint":
        return cls(tuple(complex(c) for c in normalize(vec)))

    def is_infinity(self, tol: float = 1e-10) -> bool:
        return abs(self.coords[2]) < tol


# -- parametrization -----------------------------------------------------------

def raw_parametrize(z: complex, w: complex, budget: TruncationBudget = DEFAULT_BUDGET) -> np.ndarray:
    """Un-normalized theta products ``(Z1, Z2, Z3, W1, W2, W3, C)`` at ``(z, w)``."""
    z = check_upper_half(z)
    w = check_upper_half(w)
    t00z, t10z, t01z = (theta(ch, z, budget) for ch in (CHAR_00, CHAR_10, CHAR_01))
    t00w, t10w, t01w = (theta(ch, w, budget) for ch in (CHAR_00, CHAR_10, CHAR_01))
    s00z, s10z = theta(CHAR_00, 2 * z, budget), theta(CHAR_10, 2 * z, budget)
    s00w, s10w = theta(CHAR_00, 2 * w, budget), theta(CHAR_10, 2 * w, budget)
    return np.array(
        [
            t01z * t01w,
            t00z * t00w,
            t10z * t10w,
            s10z * s00w + s00z * s10w,
            1j * (s10z * s00w - s00z * s10w),
            s00z * s00w - s10z * s10w,
            s00z * s00w + s10z * s10w,
        ]
    )


def parametrize(z: complex, w: complex, budget: TruncationBudget = DEFAULT_BUDGET) -> BoxPoint:
    return BoxPoint.from_coords(raw_parametrize(z, w, budget))


def _relations(v: np.ndarray) -> np.ndarray:
    z1, z2, z3, w1, w2, w3, c = v
    return np.array(
        [
            w1 * w1 + w2 * w2 - z3 * z3,
            w1 * w1 + w3 * w3 - z2 * z2,
            w2 * w2 + w3 * w3 - z1 * z1,
            w1 * w1 + w2 * w2 + w3 * w3 - c * c,
        ]
    )


def residuals(p: BoxPoint | Sequence[complex]) -> ResidualReport:
    """Absolute values of the four quadric relations on the normalized representative."""
    v = p.as_array() if isinstance(p, BoxPoint) else normalize(p)
    return ResidualReport(*(float(x) for x in np.abs(_relations(v))))


def jacobian(v: Sequence[complex]) -> np.ndarray:
    """4x7 Jacobian of the four quadrics."""
    z1, z2, z3, w1, w2, w3, c = np.asarray(v, dtype=complex)
    return 2 * np.array(
        [
            [0, 0, -z3, w1, w2, 0, 0],
            [0, -z2, 0, w1, 0, w3, 0],
            [-z1, 0, 0, 0, w2, w3, 0],
            [0, 0, 0, w1, w2, w3, -c],
        ],
        dtype=complex,
    )


def jacobian_singular_values(p: BoxPoint, tol: float = 1e-8) -> np.ndarray:
    """Singular values (descending) of the Jacobian at ``p``; ``p`` must lie on the variety."""
    if residuals(p).max() >= tol:
        raise PreconditionError(f"point is not on the box variety (residual {residuals(p).max():.3g})")
    return np.linalg.svd(jacobian(p.as_array()), compute_uv=False)


def is_singular(p: BoxPoint, tol: float = 1e-8) -> bool:
    s = jacobian_singular_values(p, tol)
    return bool(s[3] < tol * (s[0] + 1))


# -- singular locus ------------------------------------------------------------

# gradient coefficient attached to each coordinate, as a combination of the
# multipliers of the four relations
_GRADIENT_ROWS = {
    0: (0, 0, 1, 0),  # Z1 appears in relation 3
    1: (0, 1, 0, 0),  # Z2
    2: (1, 0, 0, 0),  # Z3
    3: (1, 1, 0, 1),  # W1
    4: (1, 0, 1, 1),  # W2
    5: (0, 1, 1, 1),  # W3
    6: (0, 0, 0, 1),  # C
}
# the relations are linear in the squares u_i = x_i^2
_SQUARE_RELATIONS = sympy.Matrix(
    [
        [0, 0, -1, 1, 1, 0, 0],
        [0, -1, 0, 1, 0, 1, 0],
        [-1, 0, 0, 0, 1, 1, 0],
        [0, 0, 0, 1, 1, 1, -1],
    ]
)


def _exact_sqrt(q: Fraction) -> CyclotomicScalar:
    """Square root of a rational inside Q(zeta_8) (covers +-r^2 and +-2 r^2)."""
    if q == 0:
        return ZERO
    sign_unit = ONE if q > 0 else I
    q = abs(q)
    for factor, unit in ((1, ONE), (2, SQRT2)):
        num, den = (q / factor).numerator, (q / factor).denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return sign_unit * unit * CyclotomicScalar(Fraction(rn, rd))
    raise ValueError(f"sqrt({q}) does not lie in Q(zeta_8)")


def singular_points_exact() -> list[tuple[CyclotomicScalar, ...]]:
    """All singular points, found by exact case analysis over zero patterns.

    For a fixed set of vanishing coordinates the Jacobian rows are dependent
    iff a nonzero multiplier vector solves a small linear system; the variety
    itself is linear in the squared coordinates, so each admissible pattern
    contributes a line of squares and ``2^(s-1)`` sign choices. Points are
    returned first-nonzero-normalized.
    """
    found: set[tuple[CyclotomicScalar, ...]] = set()
    for zero_mask in range(1 << 7):
        zeros = [i for i in range(7) if zero_mask >> i & 1]
        support = [i for i in range(7) if i not in zeros]
        if not support:
            continue
        lam = sympy.Matrix([_GRADIENT_ROWS[i] for i in support])
        if lam.rank() == 4:
            continue  # Jacobian has full rank on this stratum
        system = _SQUARE_RELATIONS.col_join(
            sympy.Matrix([[1 if j == i else 0 for j in range(7)] for i in zeros])
        ) if zeros else _SQUARE_RELATIONS
        null = system.nullspace()
        if not null:
            continue
        if len(null) > 1:
            raise RuntimeError(f"positive-dimensional singular stratum for zero set {zeros}")
        u = [Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in null[0]]
        if any(u[i] == 0 for i in support):
            continue  # belongs to a smaller support
        roots = [_exact_sqrt(x) for x in u]
        first, rest = support[0], support[1:]
        for signs in itertools.product((1, -1), repeat=len(rest)):
            vec = list(roots)
            for i, s in zip(rest, signs):
                if s < 0:
                    vec[i] = -vec[i]
            found.add(normalize_vector(vec))
    return sorted(found, key=_exact_sort_key)


def _exact_sort_key(vec):
    return tuple((c.num, c.den) for c in vec)


def singular_points() -> list[BoxPoint]:
    """The 48 nodes as normalized numeric points, in a fixed order."""
    return [BoxPoint.from_coords([complex(c) for c in v]) for v in singular_points_exact()]


def lattice_sweep_singular(tol: float = 1e-8) -> list[BoxPoint]:
    """Brute force over all points with coordinates in ``{0, +-1, +-i}``.

    Exact integer-Gaussian relation test, then the numeric Jacobian rank test.
    Independent of :func:`singular_points_exact`.
    """
    values = np.array([0, 1, -1, 1j, -1j])
    grid = np.array(list(itertools.product(values, repeat=7)))
    first = np.argmax(grid != 0, axis=1)
    keep = grid[np.arange(len(grid)), first] == 1  # one representative per class
    grid = grid[keep]
    rel = np.stack(_relations(grid.T))
    grid = grid[np.all(rel == 0, axis=0)]
    out = []
    for v in grid:
        s = np.linalg.svd(jacobian(v), compute_uv=False)
        if s[3] < tol * (s[0] + 1):
            out.append(BoxPoint.from_coords(v))
    return out


# -- involutions of the box variety ---------------------------------------------

def sigma(p: BoxPoint) -> BoxPoint:
    """``Z3 -> -Z3``."""
    v = p.as_array()
    v[2] = -v[2]
    return BoxPoint.from_coords(v)


# -- the quartic elliptic curve and its Weierstrass model --------------------------

def abcd_from_z(z: complex, budget: TruncationBudget = DEFAULT_BUDGET) -> AbcdPoint:
    z = check_upper_half(z)
    return AbcdPoint.from_coords(
        [theta(CHAR_00, z, budget), theta(CHAR_01, z, budget), theta(CHAR_00, 2 * z, budget), theta(CHAR_10, 2 * z, budget)]
    )


def abcd_residuals(p: AbcdPoint | Sequence[complex]) -> tuple[float, float]:
    """``|a^2 - c^2 - d^2|`` and ``|b^2 - c^2 + d^2|`` on the normalized point."""
    a, b, c, d = p.as_array() if isinstance(p, AbcdPoint) else normalize(p)
    return float(abs(a * a - c * c - d * d)), float(abs(b * b - c * c + d * d))


INFINITY = WeierstrassPoint((0j, 1 + 0j, 0j))
TWO_TORSION = WeierstrassPoint((0j, 0j, 1 + 0j))
# image of the tau-fixed point [sqrt2 : 0 : 1 : 1], affine (1 + sqrt2, 2 + sqrt2)
TAU_ORIGIN = WeierstrassPoint.from_coords([1 + math.sqrt(2), 2 + math.sqrt(2), 1])
_BASE_POINT = np.array([1, 1, 1, 0], dtype=complex)


def random_curve_points(rng: np.random.Generator, size: int, min_distance: float = 0.05) -> list[AbcdPoint]:
    """Points of the quartic curve from random ``(c, d)`` in the unit square, ``a, b`` by principal roots.

    Points within ``min_distance`` of the base point ``[1:1:1:0]`` are redrawn:
    the linear Weierstrass chart loses relative accuracy there.
    """
    out = []
    while len(out) < size:
        c, d = rng.uniform(-1, 1, 2) + 1j * rng.uniform(-1, 1, 2)
        p = AbcdPoint.from_coords([principal_sqrt(c * c + d * d), principal_sqrt(c * c - d * d), c, d])
        if projectively_close(_BASE_POINT, p.coords) >= min_distance:
            out.append(p)
    return out


# all three coordinates are small near the cusp, so an absolute target of 1e-15 is not enough
_FINE_BUDGET = TruncationBudget(1e-300)


def weierstrass_from_z(z: complex, budget: TruncationBudget = _FINE_BUDGET) -> WeierstrassPoint:
    """``weierstrass(abcd_from_z(z))`` without cancellation near the cusp.

    ``a - b = 2 theta10(4z)`` and ``2c - a - b = 2 (theta00(2z) - theta00(4z))``;
    the difference is summed from the two constant-free tails.
    """
    z = check_upper_half(z)
    x = 2 * theta(CHAR_10, 4 * z, budget)
    y = 2 * theta(CHAR_10, 2 * z, budget)
    w = 2 * (theta00_tail(2 * z, budget) - theta00_tail(4 * z, budget))
    return WeierstrassPoint.from_coords([x, y, w])


def weierstrass(p: AbcdPoint, tol: float = 1e-8) -> WeierstrassPoint:
    """``x = a - b, y = 2d, z = 2c - a - b``; the base point ``[1:1:1:0]`` goes to ``[0:1:0]``."""
    if max(abcd_residuals(p)) >= tol:
        raise PreconditionError("point is not on the quartic curve")
    a, b, c, d = p.as_array()
    xyz = np.array([a - b, 2 * d, 2 * c - a - b])
    if np.max(np.abs(xyz)) < 1e-12:
        if projectively_close(_BASE_POINT, p.coords) < 1e-10:
            return INFINITY
        raise DegenerateChartError(f"linear chart vanishes at {p.coords}")
    return WeierstrassPoint.from_coords(xyz)


def curve_residual(P: WeierstrassPoint) -> float:
    x, y, z = P.as_array()
    return float(abs(y * y * z - x**3 + x * z * z))


def tau_rho(p: AbcdPoint, which: str) -> AbcdPoint:
    """``tau(a,b,c,d) = (a,-b,c,d)``, ``rho(a,b,c,d) = (a,b,-c,-d)``."""
    a, b, c, d = p.as_array()
    if which == "tau":
        return AbcdPoint.from_coords([a, -b, c, d])
    if which == "rho":
        return AbcdPoint.from_coords([a, b, -c, -d])
    raise ValueError(f"unknown involution {which!r}")


def elliptic_neg(P: WeierstrassPoint) -> WeierstrassPoint:
    x, y, z = P.as_array()
    return WeierstrassPoint.from_coords([x, -y, z])


def elliptic_add(P: WeierstrassPoint, Q: WeierstrassPoint, tol: float = 1e-8) -> WeierstrassPoint:
    """Group law on ``y^2 z = x^3 - x z^2`` with identity ``[0:1:0]``.

    Uses the complete projective formulas for short Weierstrass curves, which
    need no case split and stay accurate next to the identity. On the few
    exceptional pairs where they degenerate, falls back to chord-tangent.
    """
    for pt in (P, Q):
        if curve_residual(pt) >= tol:
            raise PreconditionError(f"{pt.coords} is not on y^2 z = x^3 - x z^2")
    x1, y1, z1 = P.as_array()
    x2, y2, z2 = Q.as_array()
    s = x1 * z2 + x2 * z1
    p, q, r = x1 * x2, y1 * y2, z1 * z2
    m = x1 * y2 + x2 * y1
    n = y1 * z2 + y2 * z1
    out = np.array([m * (q + s) + n * (p + r), (q - s) * (q + s) - (3 * p - r) * (p + r), n * (q - s) + m * (3 * p - r)])
    if np.max(np.abs(out)) > 1e-3:
        return WeierstrassPoint.from_coords(out)
    return _chord_tangent(P, Q)


def _chord_tangent(P: WeierstrassPoint, Q: WeierstrassPoint) -> WeierstrassPoint:
    if P.is_infinity():
        return Q
    if Q.is_infinity():
        return P
    for T, R in ((Q, P), (P, Q)):
        e = _two_torsion_root(T)
        if e is not None:
            return _translate_two_torsion(R, e)
    x1, y1, z1 = P.as_array()
    x2, y2, z2 = Q.as_array()
    u = y2 * z1 - y1 * z2
    v = x2 * z1 - x1 * z2
    if abs(v) < 1e-9:
        if abs(u) > 1e-9:
            return INFINITY  # Q = -P
        return _double(P)
    v2 = v * v
    v3 = v2 * v
    w = u * u * z1 * z2 - v3 - 2 * v2 * x1 * z2
    return WeierstrassPoint.from_coords([v * w, u * (v2 * x1 * z2 - w) - v3 * y1 * z2, v3 * z1 * z2])


def _two_torsion_root(T: WeierstrassPoint) -> int | None:
    x, y, z = T.as_array()
    if abs(y) > 1e-12 or abs(z) < 1e-12:
        return None
    for e in (0, 1, -1):
        if abs(x - e * z) < 1e-12 * abs(z):
            return e
    return None


def _translate_two_torsion(P: WeierstrassPoint, e: int) -> WeierstrassPoint:
    # P + (e, 0) has x' = e + k / (x - e), y' = -k y / (x - e)^2 with k = 3e^2 - 1;
    # the chord formula cancels badly when P is near the identity
    x, y, z = P.as_array()
    k = 3 * e * e - 1
    t = x - e * z
    if abs(t) < 1e-12 and abs(y) < 1e-12:
        return INFINITY
    return WeierstrassPoint.from_coords([(e * t + k * z) * t, -k * y * z, t * t])


def _double(P: WeierstrassPoint) -> WeierstrassPoint:
    x, y, z = P.as_array()
    if abs(y) < 1e-12:
        return INFINITY  # 2-torsion
    w = 3 * x * x - z * z
    s = y * z
    b = x * y * s
    h = w * w - 8 * b
    out = np.array([2 * h * s, w * (4 * b - h) - 8 * y * y * s * s, 8 * s**3])
    if np.max(np.abs(out)) == 0:
        return INFINITY
    return WeierstrassPoint.from_coords(out)


def rho_fixed_point_cases() -> dict[int, list]:
    """Exact case analysis of ``rho(p) = lam * p`` on the quartic curve.

    ``rho`` has eigenvalues ``+1`` (on a, b) and ``-1`` (on c, d). For each
    eigenvalue the eigenvector family is substituted into the two quadrics and
    solved; the returned lists hold the nonzero solutions (empty means the case
    forces the zero vector).
    """
    a, b, c, d = sympy.symbols("a b c d")
    rho = sympy.diag(1, 1, -1, -1)
    out = {}
    for lam in (1, -1):
        basis = (rho - lam * sympy.eye(4)).nullspace()
        params = sympy.symbols(f"s0:{len(basis)}")
        vec = sum((p * v for p, v in zip(params, basis)), sympy.zeros(4, 1))
        subs = dict(zip((a, b, c, d), vec))
        eqs = [(a**2 - c**2 - d**2).subs(subs), (b**2 - c**2 + d**2).subs(subs)]
        sols = sympy.solve(eqs, params, dict=True)
        nonzero = [s for s in sols if any(vec.subs(s)[i] != 0 for i in range(4))]
        out[lam] = nonzero
    return out


# -- holomorphic two-forms ------------------------------------------------------

def omega_numerators(z: complex, budget: TruncationBudget = DEFAULT_BUDGET) -> np.ndarray:
    """Cusp-form numerators of the five differentials on the level-8 modular curve."""
    t00, t10, t01 = (theta(ch, z, budget) for ch in (CHAR_00, CHAR_10, CHAR_01))
    s00, s10 = theta(CHAR_00, 2 * z, budget), theta(CHAR_10, 2 * z, budget)
    core = t00 * t01 * t10
    return np.array([t00 * core, t01 * core, t10 * core, s00 * core, s10 * core])


_PSI_PAIRS = ((0, 0), (1, 1), (2, 2), (3, 3), (3, 4), (4, 3), (4, 4))


def psi_values(z: complex, w: complex, budget: TruncationBudget = DEFAULT_BUDGET) -> np.ndarray:
    """Coefficients of the seven invariant two-forms at ``(z, w)``."""
    fz = omega_numerators(z, budget)
    fw = omega_numerators(w, budget)
    return np.array([fz[i] * fw[j] for i, j in _PSI_PAIRS])
