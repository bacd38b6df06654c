"""Seeded verification suites, one per checkable identity or count.

Each suite returns a :class:`SuiteReport`. Residual suites pass when the
largest residual is below the tolerance; count suites compare an expected and
an actual count; the genus suite compares a conditioning ratio against a
lower bound.
"""
from __future__ import annotations

import cmath
import math
import os
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import automorphisms, curves, modular, variety
from .cyclotomic import ONE, CyclotomicMatrix
from .theta import CHAR_00, empirical_multiplier, principal_sqrt, sample_upper_half, theta

__all__ = ["SuiteReport", "SUITES", "DEFAULT_SEED", "default_tolerance", "run_suite"]

DEFAULT_SEED = 42


@dataclass
class SuiteReport:
    suite: str
    samples: int
    max_residual: float | None
    tolerance: float
    passed: bool
    seed: int
    elapsed_ms: int | None = None
    expected: int | None = None
    actual: int | None = None
    details: dict = field(default_factory=dict)

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "samples": self.samples,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "seed": self.seed,
        }
        if self.expected is not None:
            out["expected"] = self.expected
            out["actual"] = self.actual
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        if self.details:
            out["details"] = self.details
        return out

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        if self.expected is not None:
            measure = f"expected {self.expected}, got {self.actual}"
        elif self.max_residual is not None:
            measure = f"max residual {self.max_residual:.3e} (tol {self.tolerance:g})"
        else:
            measure = f"tol {self.tolerance:g}"
        return f"{verdict} {self.suite}: {self.samples} samples, {measure}"


@dataclass(frozen=True)
class _Suite:
    run: Callable[..., SuiteReport]
    samples: int
    tolerance: float


def _zs(rng: np.random.Generator, n: int) -> np.ndarray:
    return sample_upper_half(rng, n)


def _residual_report(name, samples, residuals, tol, seed, **details) -> SuiteReport:
    worst = float(max(residuals)) if len(residuals) else 0.0
    return SuiteReport(name, samples, worst, tol, worst < tol, seed, details=details)


# -- theta -----------------------------------------------------------------------

def _relations(samples, seed, tol):
    rng = np.random.default_rng(seed)
    out = []
    for z in _zs(rng, samples):
        t00, t10, t01 = (theta(ch, z) for ch in ((0, 0), (1, 0), (0, 1)))
        s00, s10 = theta((0, 0), 2 * z), theta((1, 0), 2 * z)
        scale = max(abs(t00), abs(t10), abs(t01), abs(s00), abs(s10)) ** 2
        diffs = (
            t00**2 - (s00**2 + s10**2),
            t01**2 - (s00**2 - s10**2),
            t10**2 - 2 * s00 * s10,
        )
        out.append(max(abs(d) for d in diffs) / scale)
    return _residual_report("relations", samples, out, tol, seed)


def _inversion(samples, seed, tol):
    rng = np.random.default_rng(seed)
    out = []
    for z in _zs(rng, samples):
        lhs = theta(CHAR_00, -1 / z)
        rhs = principal_sqrt(z / 1j) * theta(CHAR_00, z)
        out.append(abs(lhs - rhs) / (1 + abs(rhs)))
    return _residual_report("inversion", samples, out, tol, seed)


def _multiplier(samples, seed, tol):
    rng = np.random.default_rng(seed)
    expected = {"A": 1.0, "S": cmath.exp(-1j * math.pi / 4)}
    values = {"A": [], "S": []}
    for z in _zs(rng, samples):
        values["A"].append(empirical_multiplier(CHAR_00, modular.GEN_A, z, rng=rng))
        values["S"].append(empirical_multiplier(CHAR_00, modular.GEN_S, z, rng=rng))
    out = [abs(v - expected[k]) for k in values for v in values[k]]
    spread = max(abs(v - vals[0]) for vals in values.values() for v in vals)
    return _residual_report("multiplier", samples, out, tol, seed, sample_spread=spread)


# -- modular -----------------------------------------------------------------------

def _lemma22(samples, seed, tol):
    rng = np.random.default_rng(seed)
    zs = _zs(rng, samples + 2)
    out = [
        modular.verify_action_numerically(modular.GEN_A, zs[0]),
        modular.verify_action_numerically(modular.GEN_S, zs[1]),
    ]
    for z in zs[2:]:
        M = modular.random_theta_word(rng, int(rng.integers(1, 7)))
        out.append(modular.verify_action_numerically(M, z))
    return _residual_report("lemma22", samples, out, tol, seed, generators_checked=2)


def _lemma23(samples, seed, tol):
    targets = {
        "T": (modular.T_MAT, (1, -1, 1, 1, 1)),
        "T'": (modular.T_PRIME, (1, 1, -1, 1, 1)),
        "R": (modular.R_MAT, (1, 1, 1, -1, -1)),
    }
    matched = {}
    for name, (M, diag) in targets.items():
        want = CyclotomicMatrix.diagonal([ONE * s for s in diag])
        got = modular.action_matrix5(M)
        matched[name] = got.projective_normal_form() == want.projective_normal_form()
    actual = sum(matched.values())
    return SuiteReport(
        "lemma23", len(targets), None, tol, actual == len(targets), seed,
        expected=len(targets), actual=actual, details={"exact_match": matched},
    )


def _gamma_prime(samples, seed, tol):
    rng = np.random.default_rng(seed)
    reps = modular.gamma4_mod_gamma8_reps()
    members = [M for M in reps if modular.membership(M, "gamma_prime4")]
    classes = sorted(list(M.mod(8)) for M in members if not modular.membership(M, "gamma", 8))
    stated = sorted([[1, 4, 4, 1], [5, 4, 0, 5], [5, 0, 4, 5]])

    closed = True
    traces_ok = True
    for _ in range(samples):
        M1 = members[rng.integers(len(members))] @ modular.random_gamma_n(rng, 8, 2)
        M2 = members[rng.integers(len(members))] @ modular.random_gamma_n(rng, 8, 2)
        closed &= modular.membership(M1 @ M2, "gamma_prime4")
        closed &= modular.membership(M1.inverse(), "gamma_prime4")
        if not modular.membership(M1, "gamma", 8):
            traces_ok &= abs(M1.trace()) > 2
    ok = len(members) == 4 and classes == stated and closed and traces_ok
    return SuiteReport(
        "gamma-prime", samples, None, tol, ok, seed, expected=4, actual=len(members),
        details={"nontrivial_classes_mod8": classes, "closed_under_products": closed, "trace_exceeds_2": traces_ok},
    )


# -- box variety -------------------------------------------------------------------

_INVARIANCE_TOL = 1e-8


def _param(samples, seed, tol):
    rng = np.random.default_rng(seed)
    zs, ws = _zs(rng, samples), _zs(rng, samples)
    out = [variety.residuals(variety.parametrize(z, w)).max() for z, w in zip(zs, ws)]
    inv = []
    for z, w in zip(zs[:20], ws[:20]):
        p = modular.random_delta48(rng)
        q = variety.parametrize(modular.mobius(p.first, z), modular.mobius(p.second, w))
        inv.append(variety.parametrize(z, w).distance(q))
    report = _residual_report("param", samples, out, tol, seed)
    worst_inv = float(max(inv))
    report.details = {"invariance_residual": worst_inv, "invariance_tolerance": _INVARIANCE_TOL, "invariance_samples": 20}
    report.passed = report.passed and worst_inv < _INVARIANCE_TOL
    return report


def _nodes(samples, seed, tol):
    points = variety.singular_points()
    ranks = [int(np.sum(variety.jacobian_singular_values(p) > 1e-8)) for p in points]
    orbit = automorphisms.node_orbit(automorphisms.full_generators())
    exact = set(variety.singular_points_exact())
    ok = len(points) == 48 and all(r == 3 for r in ranks) and orbit == exact
    return SuiteReport(
        "nodes", len(points), None, tol, ok, seed, expected=48, actual=len(points),
        details={"all_rank_3": all(r == 3 for r in ranks), "orbit_size": len(orbit), "orbit_matches": orbit == exact},
    )


def _kummer(samples, seed, tol):
    rng = np.random.default_rng(seed)
    zs = _zs(rng, samples)
    pts = [variety.abcd_from_z(z) for z in zs]
    # the tail form of the chart keeps accuracy for points close to the base point
    images = [variety.weierstrass_from_z(z) for z in zs]
    curve = [variety.curve_residual(W) for W in images]

    fixed = variety.AbcdPoint.from_coords([math.sqrt(2), 0, 1, 1])
    fixed_res = fixed.distance(variety.tau_rho(fixed, "tau"))
    fixed_image = variety.weierstrass(fixed).distance(variety.TAU_ORIGIN)
    two_o = variety.elliptic_add(variety.TAU_ORIGIN, variety.TAU_ORIGIN)
    # theta points plus the same number of algebraic points away from the cusp
    extra = variety.random_curve_points(rng, samples)
    pts += extra
    images += [variety.weierstrass(p) for p in extra]
    rho_res = max(
        variety.weierstrass(variety.tau_rho(p, "rho")).distance(variety.elliptic_add(W, variety.TWO_TORSION))
        for p, W in zip(pts, images)
    )
    tau_res = max(
        variety.weierstrass(variety.tau_rho(p, "tau")).distance(variety.elliptic_add(two_o, variety.elliptic_neg(W)))
        for p, W in zip(pts, images)
    )
    cases = variety.rho_fixed_point_cases()
    no_fixed = all(not sols for sols in cases.values())

    report = _residual_report("kummer", samples, curve, tol, seed)
    report.details = {
        "tau_fixed_point_residual": max(fixed_res, fixed_image),
        "rho_translation_residual": rho_res,
        "tau_negation_residual": tau_res,
        "rho_fixed_point_free": no_fixed,
    }
    report.passed = (
        report.passed and max(fixed_res, fixed_image) < 1e-12 and rho_res < 1e-8 and tau_res < 1e-8 and no_fixed
    )
    return report


def _genus7(samples, seed, tol):
    rng = np.random.default_rng(seed)
    zs, ws = _zs(rng, samples), _zs(rng, samples)
    rows = np.array([variety.psi_values(z, w) for z, w in zip(zs, ws)])
    s = np.linalg.svd(rows, compute_uv=False)
    ratio = float(s[-1] / s[0])
    return SuiteReport(
        "genus7", samples, None, tol, samples >= 7 and ratio > tol, seed,
        details={"sigma_ratio": ratio, "rank": int(np.sum(s > tol * s[0]))},
    )


# -- curves ------------------------------------------------------------------------

def _prop26(samples, seed, tol):
    rng = np.random.default_rng(seed)
    zs, ws = _zs(rng, samples), _zs(rng, samples)
    identity = [curves.rational_curve_identity_residual(z, w, scaled=True) for z, w in zip(zs, ws)]
    on_curve = [curves.on_rational_curve(z, tag) for tag in curves.rational_tags() for z in _zs(rng, 10)]
    c = curves.RATIONAL_CURVE_CONSTANT
    report = _residual_report("prop26", samples, identity + on_curve, tol, seed)
    report.details = {
        "constant": f"{c.imag:+g}i",
        "identity_residual": float(max(identity)),
        "curve_residual": float(max(on_curve)),
        "tags": len(curves.rational_tags()),
    }
    return report


def _prop27(samples, seed, tol):
    rng = np.random.default_rng(seed)
    zs, ws = _zs(rng, samples), _zs(rng, samples)
    out = [curves.boundary_identity_residual(z, w) for z, w in zip(zs, ws)]
    return _residual_report("prop27", samples, out, tol, seed)


def _prop29(samples, seed, tol):
    rng = np.random.default_rng(seed)
    out = [float(curves.diagonal_elliptic_residuals(z).max()) for z in _zs(rng, samples)]
    return _residual_report("prop29", samples, out, tol, seed)


SUITES: dict[str, _Suite] = {
    "relations": _Suite(_relations, 100, 1e-12),
    "inversion": _Suite(_inversion, 100, 1e-10),
    "multiplier": _Suite(_multiplier, 10, 1e-10),
    "lemma22": _Suite(_lemma22, 50, 1e-9),
    "lemma23": _Suite(_lemma23, 3, 0.0),
    "param": _Suite(_param, 200, 1e-10),
    "nodes": _Suite(_nodes, 48, 0.0),
    "prop26": _Suite(_prop26, 200, 1e-9),
    "prop27": _Suite(_prop27, 100, 1e-9),
    "prop29": _Suite(_prop29, 20, 1e-9),
    "kummer": _Suite(_kummer, 50, 1e-9),
    "genus7": _Suite(_genus7, 7, 1e-6),
    "gamma-prime": _Suite(_gamma_prime, 200, 0.0),
}


def default_tolerance(name: str) -> float:
    """Suite default, overridden by the ``BOX_TOL`` environment variable when set."""
    env = os.environ.get("BOX_TOL")
    if env:
        return float(env)
    return SUITES[name].tolerance


def run_suite(name: str, samples: int | None = None, seed: int = DEFAULT_SEED, tol: float | None = None) -> SuiteReport:
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}") from None
    samples = suite.samples if samples is None else samples
    if samples < 1:
        raise ValueError("samples must be positive")
    tol = default_tolerance(name) if tol is None else tol
    start = time.perf_counter()
    report = suite.run(samples, seed, tol)
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report
