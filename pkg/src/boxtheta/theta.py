"""Jacobi theta functions with characteristics, evaluated by truncated q-series.

Convention: for a characteristic ``(a, b)`` in ``{(0, 0), (1, 0), (0, 1)}``

    theta_ab(z) = sum_n exp(pi i (n + a/2)^2 z + pi i b (n + a/2))

The sum is taken symmetrically over ``|n + a/2| <= K`` and ``K`` is chosen so
that the geometric tail bound

    2 t^((K+1)^2) / (1 - t^(2(K+1))),   t = exp(-pi Im z)

drops below the requested absolute error.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "DomainError",
    "TruncationError",
    "IllConditionedError",
    "ThetaChar",
    "TruncationBudget",
    "ThetaEval",
    "CHARACTERISTICS",
    "check_upper_half",
    "principal_sqrt",
    "theta_eval",
    "theta",
    "theta_second_kind",
    "theta00_tail",
    "automorphy_factor",
    "empirical_multiplier",
    "theta00",
    "theta10",
    "theta01",
    "sample_upper_half",
]


class DomainError(ValueError):
    """Argument outside the domain of a function (branch point, lower half-plane)."""


class TruncationError(RuntimeError):
    """The requested accuracy needs more terms than the budget allows."""


class IllConditionedError(RuntimeError):
    """A sample point sits too close to a zero of the denominator."""


class ThetaChar(NamedTuple):
    a: int
    b: int

    @classmethod
    def parse(cls, text: str) -> "ThetaChar":
        """Parse ``"00"``, ``"10"`` or ``"01"``."""
        if len(text) != 2 or any(ch not in "01" for ch in text):
            raise ValueError(f"bad characteristic {text!r}")
        return cls.validated(int(text[0]), int(text[1]))

    @classmethod
    def validated(cls, a: int, b: int) -> "ThetaChar":
        ch = cls(a, b)
        if ch not in CHARACTERISTICS:
            raise ValueError(f"characteristic {tuple(ch)} is not one of (0,0), (1,0), (0,1)")
        return ch

    def __str__(self) -> str:
        return f"{self.a}{self.b}"


CHAR_00 = ThetaChar(0, 0)
CHAR_10 = ThetaChar(1, 0)
CHAR_01 = ThetaChar(0, 1)
CHARACTERISTICS = (CHAR_00, CHAR_10, CHAR_01)


@dataclass(frozen=True)
class TruncationBudget:
    target_abs_error: float = 1e-15
    max_terms: int = 10**6

    def __post_init__(self):
        if not self.target_abs_error > 0:
            raise ValueError("target_abs_error must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


DEFAULT_BUDGET = TruncationBudget()


class ThetaEval(NamedTuple):
    value: complex
    error_bound: float
    terms: int  # largest |n| used on the integer side of the sum


def check_upper_half(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z!r}")
    if z.imag <= 0:
        raise DomainError(f"{z!r} is not in the upper half-plane")
    return z


def principal_sqrt(a: complex) -> complex:
    """Square root with non-negative real part; ``i*sqrt|a|`` on the negative axis."""
    a = complex(a)
    if a == 0:
        raise DomainError("square root branch is undefined at 0")
    if a.imag == 0 and a.real < 0:
        return complex(0.0, math.sqrt(-a.real))
    return cmath.sqrt(a)


def _tail_bound(t: float, k: float) -> float:
    # bound on sum_{|m| > k} t^(m^2) for m running over k + 1, k + 2, ...
    step = t ** (2 * (k + 1))
    if step >= 1.0:
        return math.inf
    return 2.0 * t ** ((k + 1) ** 2) / (1.0 - step)


def _choose_terms(t: float, shift: float, budget: TruncationBudget) -> tuple[int, float]:
    # smallest N with tail(N + shift) below target; starts from the asymptotic guess
    if t == 0.0:
        return 0, 0.0
    guess = math.sqrt(max(math.log(budget.target_abs_error / 2) / math.log(t), 0.0))
    n = max(int(guess) - 2, 0)
    while True:
        bound = _tail_bound(t, n + shift)
        if bound < budget.target_abs_error:
            return n, bound
        n += 1
        if n > budget.max_terms:
            raise TruncationError(
                f"{budget.max_terms} terms do not reach {budget.target_abs_error:g} (t={t:.6g})"
            )


def theta_eval(
    ch: ThetaChar | tuple[int, int],
    z: complex,
    budget: TruncationBudget = DEFAULT_BUDGET,
    terms: int | None = None,
) -> ThetaEval:
    """Evaluate ``theta_ab(z)`` and report the certified tail bound.

    ``terms`` forces the truncation index instead of deriving it from the
    budget; the reported bound then belongs to that forced index.
    """
    ch = ThetaChar.validated(*ch)
    z = check_upper_half(z)

    # theta_{0b}(z + 2) = theta_{0b}(z), theta_{1b}(z + 2) = i theta_{1b}(z)
    shifts = round(z.real / 2.0)
    z = complex(z.real - 2.0 * shifts, z.imag)
    phase = 1j ** (shifts % 4) if ch.a == 1 else 1.0

    t = math.exp(-math.pi * z.imag)
    shift = ch.a / 2
    if terms is None:
        n_max, bound = _choose_terms(t, shift, budget)
    else:
        n_max, bound = terms, _tail_bound(t, terms + shift)

    m = np.arange(-n_max - ch.a, n_max + 1, dtype=float) + shift
    exponent = 1j * math.pi * (m * m * z + ch.b * m)
    # add small terms first
    order = np.argsort(-np.abs(m))
    value = complex(np.sum(np.exp(exponent[order])))
    return ThetaEval(phase * value, bound, n_max)


def theta(ch: ThetaChar | tuple[int, int], z: complex, budget: TruncationBudget = DEFAULT_BUDGET) -> complex:
    return theta_eval(ch, z, budget).value


def theta00(z: complex) -> complex:
    return theta_eval(CHAR_00, z).value


def theta10(z: complex) -> complex:
    return theta_eval(CHAR_10, z).value


def theta01(z: complex) -> complex:
    return theta_eval(CHAR_01, z).value


def theta00_tail(z: complex, budget: TruncationBudget = DEFAULT_BUDGET) -> complex:
    """``theta00(z) - 1`` summed without the constant term, so small values keep full relative accuracy."""
    z = check_upper_half(z)
    z = complex(z.real - 2.0 * round(z.real / 2.0), z.imag)
    t = math.exp(-math.pi * z.imag)
    n_max, _ = _choose_terms(t, 0.0, budget)
    n = np.arange(n_max, 0, -1, dtype=float)
    return complex(2.0 * np.sum(np.exp(1j * math.pi * n * n * z)))


def theta_second_kind(
    ch: ThetaChar | tuple[int, int], z: complex, budget: TruncationBudget = DEFAULT_BUDGET
) -> complex:
    """``theta_ab(2z)`` for ``ab`` in ``{00, 10}``."""
    ch = ThetaChar.validated(*ch)
    if ch.b != 0:
        raise ValueError("second-kind theta is only defined for characteristics 00 and 10")
    return theta_eval(ch, 2 * check_upper_half(z), budget).value


def automorphy_factor(M, z: complex, r: int) -> complex:
    """``principal_sqrt(c z + d) ** r`` for ``M = (a, b; c, d)``."""
    z = check_upper_half(z)
    _, _, c, d = M
    j = c * z + d
    if j == 0:
        raise DomainError("c z + d vanishes")
    return principal_sqrt(j) ** r


def empirical_multiplier(
    ch: ThetaChar | tuple[int, int],
    M,
    z: complex,
    budget: TruncationBudget = DEFAULT_BUDGET,
    *,
    resample: int = 8,
    rng: np.random.Generator | None = None,
    min_denominator: float = 1e-12,
) -> complex:
    """Return ``theta(Mz) / (sqrt(cz+d) theta(z))``.

    For ``ch = 00`` and ``M`` in the theta group this is the theta multiplier
    ``v(M)``, an eighth root of unity. When ``theta(z)`` is too close to zero
    the point is perturbed (up to ``resample`` times) before giving up.
    """
    z = check_upper_half(z)
    a, b, c, d = M
    if rng is None:
        rng = np.random.default_rng(0)
    for _ in range(resample + 1):
        denominator = automorphy_factor(M, z, 1) * theta(ch, z, budget)
        if abs(denominator) >= min_denominator:
            mz = (a * z + b) / (c * z + d)
            return theta(ch, mz, budget) / denominator
        z = complex(z.real + rng.uniform(-0.1, 0.1), z.imag * rng.uniform(1.0, 1.2))
    raise IllConditionedError(f"theta{ch} nearly vanishes near the sample point")


def sample_upper_half(
    rng: np.random.Generator,
    size: int,
    re_range: tuple[float, float] = (-2.0, 2.0),
    im_range: tuple[float, float] = (0.5, 3.0),
) -> np.ndarray:
    """Uniform samples from a rectangle in the upper half-plane."""
    re = rng.uniform(*re_range, size=size)
    im = rng.uniform(*im_range, size=size)
    return re + 1j * im
