"""Acceptance suite: one PASS/FAIL line per criterion, at the agreed tolerances.

Run with ``pytest tests/test_acceptance.py -v``; the lines are printed
directly to the terminal even when output capture is on.
"""
import time

import pytest

from boxtheta import automorphisms, cuboid, curves
from boxtheta.suites import run_suite


@pytest.fixture
def announce(capsys):
    """Print the verdict line of a criterion, then let the test assert."""

    def _announce(number: int, title: str, ok: bool, detail: str) -> bool:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number:2d} {title}: {detail}")
        return ok

    return _announce


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def _suite(name, samples, tol):
    report, elapsed = _timed(run_suite, name, samples, 42, tol)
    return report, elapsed


def test_criterion_01_theta_relations(announce):
    r, t = _suite("relations", 100, 1e-12)
    ok = r.passed and t < 1.0
    assert announce(1, "theta relations", ok, f"scaled residual {r.max_residual:.2e} < 1e-12 on 100 samples, {t:.2f} s < 1 s")


def test_criterion_02_inversion(announce):
    r, t = _suite("inversion", 100, 1e-10)
    ok = r.passed and t < 1.0
    assert announce(2, "inversion formula", ok, f"residual {r.max_residual:.2e} < 1e-10 on 100 samples, {t:.2f} s < 1 s")


def test_criterion_03_multiplier(announce):
    r, _ = _suite("multiplier", 10, 1e-10)
    spread = r.details["sample_spread"]
    ok = r.passed and spread < 1e-10
    assert announce(
        3, "multiplier values", ok,
        f"|v(A) - 1|, |v(S) - exp(-i pi/4)| <= {r.max_residual:.2e}, spread over 10 samples {spread:.2e} < 1e-10",
    )


def test_criterion_04_five_theta_action(announce):
    r, _ = _suite("lemma22", 50, 1e-9)
    assert announce(4, "five-theta action", r.passed, f"2 generators + 50 words, residual {r.max_residual:.2e} < 1e-9")


def test_criterion_05_diagonal_matrices(announce):
    r, _ = _suite("lemma23", 3, 0.0)
    assert announce(5, "diagonal action of T, T', R", r.passed, f"{r.actual}/{r.expected} exact projective matches")


def test_criterion_06_parametrization(announce):
    r, _ = _suite("param", 200, 1e-10)
    inv = r.details["invariance_residual"]
    ok = r.passed and inv < 1e-8
    assert announce(
        6, "parametrization", ok,
        f"box relations {r.max_residual:.2e} < 1e-10 on 200 samples, Delta(4,8) invariance {inv:.2e} < 1e-8",
    )


def test_criterion_07_singular_locus(announce):
    automorphisms.exact_matrix.cache_clear()  # time the matrix fitting too
    r, t = _suite("nodes", 48, 0.0)
    ok = r.passed and r.details["all_rank_3"] and r.details["orbit_matches"] and t < 30.0
    assert announce(
        7, "singular locus", ok,
        f"{r.actual} nodes, all rank 3: {r.details['all_rank_3']}, orbit {r.details['orbit_size']} "
        f"matches: {r.details['orbit_matches']}, {t:.1f} s < 30 s",
    )


def test_criterion_08_rational_curves(announce):
    r, _ = _suite("prop26", 200, 1e-9)
    ok = r.passed and r.details["tags"] == 32 and r.details["constant"] == "-4i"
    assert announce(
        8, "rational curves", ok,
        f"identity {r.details['identity_residual']:.2e}, 32 tags x 10 samples {r.details['curve_residual']:.2e} "
        f"< 1e-9, constant {r.details['constant']}",
    )


def test_criterion_09_diagonal_elliptic_curve(announce):
    r, _ = _suite("prop29", 20, 1e-9)
    assert announce(9, "diagonal elliptic curve", r.passed, f"five residuals {r.max_residual:.2e} < 1e-9 on 20 samples")


def test_criterion_10_kummer(announce):
    r, _ = _suite("kummer", 50, 1e-9)
    d = r.details
    ok = (
        r.passed
        and d["tau_fixed_point_residual"] < 1e-12
        and d["rho_translation_residual"] < 1e-8
        and d["tau_negation_residual"] < 1e-8
        and d["rho_fixed_point_free"]
    )
    assert announce(
        10, "Kummer structure", ok,
        f"curve {r.max_residual:.2e} < 1e-9, tau fixed point {d['tau_fixed_point_residual']:.1e} < 1e-12, "
        f"rho {d['rho_translation_residual']:.1e} and tau {d['tau_negation_residual']:.1e} < 1e-8, "
        f"rho fixed-point free: {d['rho_fixed_point_free']}",
    )


def test_criterion_11_genus_witness(announce):
    r, _ = _suite("genus7", 7, 1e-6)
    ratio = r.details["sigma_ratio"]
    assert announce(11, "geometric genus witness", r.passed and ratio > 1e-6, f"sigma_min/sigma_max {ratio:.2e} > 1e-6")


def test_criterion_12_degree_genus_bound(announce):
    table = {(176, 0): True, (177, 0): False, (192, 1): True, (193, 1): False}
    got = {k: curves.degree_genus_bound(curves.CurveInvariants(*k)) for k in table}
    assert announce(12, "degree-genus bound", got == table, f"{sum(got[k] == v for k, v in table.items())}/4 cases")


def test_criterion_13_search(announce):
    start = time.perf_counter()
    pruned = cuboid.search_list(300)
    sound = pruned == cuboid.brute_force(300) and cuboid.search_list(300, "perfect") == cuboid.brute_force(300, "perfect")
    brick = cuboid.CuboidCandidate(44, 117, 240, 125, 244, 267) in pruned
    perfect = cuboid.search_list(2000, "perfect")
    csvs = {k: cuboid.candidates_to_csv(cuboid.search_list(2000, "euler", k), "euler") for k in (1, 4, 8)}
    deterministic = csvs[1] == csvs[4] == csvs[8]
    elapsed = time.perf_counter() - start
    ok = sound and brick and not perfect and deterministic and elapsed < 180
    assert announce(
        13, "cuboid search", ok,
        f"pruned == brute force at 300: {sound}, (44,117,240) found: {brick}, "
        f"perfect up to 2000: {len(perfect)}, workers 1/4/8 identical: {deterministic}, {elapsed:.1f} s < 180 s",
    )


def test_criterion_14_group_diagnostics(announce):
    (order, report), _ = _timed(automorphisms.group_closure_order, automorphisms.full_generators())
    orbit_ok = automorphisms.singular_orbit_matches()
    ok = order < 10**5 and orbit_ok and str(automorphisms.REFERENCE_AUT_ORDER) in report.summary()
    assert announce(14, "group diagnostics", ok, f"{report.summary()}; node orbit agrees: {orbit_ok}")


def test_every_criterion_has_a_test():
    numbers = sorted(int(name.split("_")[2]) for name in globals() if name.startswith("test_criterion_"))
    assert numbers == list(range(1, 15))
