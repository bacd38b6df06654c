"""Integer 2x2 matrices of determinant one, congruence subgroups, and the
action of the theta group on the five-dimensional space spanned by

    theta00(z), theta10(z), theta01(z), theta00(2z), theta10(2z).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .cyclotomic import I, INV_SQRT2, ONE, ZERO, CyclotomicMatrix, CyclotomicScalar
from .theta import (
    CHAR_00,
    CHAR_01,
    CHAR_10,
    DEFAULT_BUDGET,
    IllConditionedError,
    TruncationBudget,
    automorphy_factor,
    check_upper_half,
    theta,
)

__all__ = [
    "ModularMatrix",
    "MatrixPair",
    "IDENTITY",
    "MINUS_IDENTITY",
    "GEN_A",
    "GEN_S",
    "GEN_B",
    "T_MAT",
    "T_PRIME",
    "R_MAT",
    "T_ONE",
    "GROUPS",
    "membership",
    "delta_membership",
    "mobius",
    "gamma4_mod_gamma8_reps",
    "theta_group_word",
    "word_product",
    "action_matrix5",
    "basis5",
    "verify_action_numerically",
    "random_theta_word",
    "random_gamma_n",
    "random_gamma4",
    "random_delta48",
]


@dataclass(frozen=True)
class ModularMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
                raise TypeError("matrix entries must be integers")
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self} is not 1")

    def __iter__(self) -> Iterator[int]:
        return iter((self.a, self.b, self.c, self.d))

    def __matmul__(self, other: "ModularMatrix") -> "ModularMatrix":
        a, b, c, d = self
        e, f, g, h = other
        return ModularMatrix(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __neg__(self) -> "ModularMatrix":
        return ModularMatrix(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "ModularMatrix":
        return ModularMatrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "ModularMatrix":
        base = self if n >= 0 else self.inverse()
        result = IDENTITY
        for _ in range(abs(n)):
            result = result @ base
        return result

    def mod(self, n: int) -> tuple[int, int, int, int]:
        return (self.a % n, self.b % n, self.c % n, self.d % n)

    def trace(self) -> int:
        return self.a + self.d

    def __str__(self) -> str:
        return f"({self.a},{self.b};{self.c},{self.d})"

    def to_list(self) -> list[int]:
        return [self.a, self.b, self.c, self.d]


@dataclass(frozen=True)
class MatrixPair:
    first: ModularMatrix
    second: ModularMatrix

    def __matmul__(self, other: "MatrixPair") -> "MatrixPair":
        return MatrixPair(self.first @ other.first, self.second @ other.second)

    def inverse(self) -> "MatrixPair":
        return MatrixPair(self.first.inverse(), self.second.inverse())


IDENTITY = ModularMatrix(1, 0, 0, 1)
MINUS_IDENTITY = ModularMatrix(-1, 0, 0, -1)
GEN_A = ModularMatrix(1, 2, 0, 1)
GEN_S = ModularMatrix(0, -1, 1, 0)
GEN_B = ModularMatrix(1, 0, 2, 1)
T_ONE = ModularMatrix(1, 1, 0, 1)
T_MAT = ModularMatrix(1, 4, 0, 1)
T_PRIME = ModularMatrix(1, 0, 4, 1)
R_MAT = ModularMatrix(5, 8, 8, 13)


# -- membership ----------------------------------------------------------------

def _principal(M: ModularMatrix, n: int) -> bool:
    a, b, c, d = M
    return (a - 1) % n == 0 and b % n == 0 and c % n == 0 and (d - 1) % n == 0


def _gamma0(M: ModularMatrix, n: int) -> bool:
    return M.c % n == 0


def _gamma1(M: ModularMatrix, n: int) -> bool:
    # a = d = 1 mod N; "a = b = 1" would not be closed under inversion
    return (M.a - 1) % n == 0 and (M.d - 1) % n == 0 and M.c % n == 0


def _igusa(M: ModularMatrix, n: int) -> bool:
    # Gamma[N, 2N] sits inside Gamma[N]
    return _principal(M, n) and (M.a * M.b) % (2 * n) == 0 and (M.c * M.d) % (2 * n) == 0


def _theta_group(M: ModularMatrix, n: int | None = None) -> bool:
    return (M.a * M.b) % 2 == 0 and (M.c * M.d) % 2 == 0


def _gamma_prime4(M: ModularMatrix, n: int | None = None) -> bool:
    return _principal(M, 4) and (M.a + M.b + M.c - 1) % 8 == 0


GROUPS = {
    "gamma": _principal,
    "gamma0": _gamma0,
    "gamma1": _gamma1,
    "igusa": _igusa,
    "theta": _theta_group,
    "gamma_prime4": _gamma_prime4,
}
_NEEDS_LEVEL = {"gamma", "gamma0", "gamma1", "igusa"}


def membership(M: ModularMatrix, group: str, level: int | None = None) -> bool:
    """Membership of ``M`` in a named congruence subgroup.

    ``group`` is one of ``gamma`` (principal, ``Gamma[N]``), ``gamma0``,
    ``gamma1``, ``igusa`` (``Gamma[N, 2N]``), ``theta`` (``Gamma[1, 2]``) or
    ``gamma_prime4``. The first four need ``level``.
    """
    try:
        test = GROUPS[group]
    except KeyError:
        raise ValueError(f"unknown group {group!r}; expected one of {sorted(GROUPS)}") from None
    if group in _NEEDS_LEVEL:
        if level is None or level < 1:
            raise ValueError(f"group {group!r} needs a positive level")
        return test(M, level)
    return test(M)


def delta_membership(p: MatrixPair, n: int, n_prime: int) -> bool:
    """``(M1, M2)`` in ``Delta(N, N')``: both in ``Gamma[N]`` and congruent mod ``N'``."""
    if n < 1 or n_prime % n:
        raise ValueError(f"{n} does not divide {n_prime}")
    if not (_principal(p.first, n) and _principal(p.second, n)):
        return False
    return p.first.mod(n_prime) == p.second.mod(n_prime)


def mobius(M: ModularMatrix, z: complex) -> complex:
    z = check_upper_half(z)
    a, b, c, d = M
    return (a * z + b) / (c * z + d)


def gamma4_mod_gamma8_reps() -> list[ModularMatrix]:
    """``T^i T'^j R^k`` for ``i, j, k`` in ``{0, 1}``: one matrix per class of Gamma[4]/Gamma[8]."""
    reps = []
    for i in (0, 1):
        for j in (0, 1):
            for k in (0, 1):
                reps.append(T_MAT**i @ T_PRIME**j @ R_MAT**k)
    return reps


# -- words in the theta group --------------------------------------------------

def theta_group_word(M: ModularMatrix) -> tuple[list[tuple[str, int]], int]:
    """Write ``M = sign * prod(token ** exponent)`` with tokens ``A`` and ``S``.

    Right multiplication by ``A^k`` moves ``d`` by ``2kc`` and by ``S`` swaps
    the bottom row to ``(d, -c)``; the two together reduce ``|c|`` like a
    Euclidean algorithm. Exponents of ``S`` are always 1 and inverses of ``S``
    are folded into the sign because ``S^-1 = -S``.
    """
    if not _theta_group(M):
        raise ValueError(f"{M} is not in the theta group")
    cur = M
    reductions: list[tuple[str, int]] = []
    while cur.c != 0:
        c, d = cur.c, cur.d
        # d + 2kc into (-|c|, |c|); opposite parity of c and d keeps it off +-c
        r = d % (2 * abs(c))
        if r > abs(c):
            r -= 2 * abs(c)
        k = (r - d) // (2 * c)
        if k:
            cur = cur @ GEN_A**k
            reductions.append(("A", k))
        cur = cur @ GEN_S
        reductions.append(("S", 1))
    sign = cur.a  # cur = sign * A^m
    m = cur.b * sign // 2
    word: list[tuple[str, int]] = [("A", m)] if m else []
    # M = cur * reductions^-1, inverted in reverse order; S^-1 = -S
    for token, exp in reversed(reductions):
        if token == "S":
            sign = -sign
            word.append(("S", 1))
        else:
            word.append(("A", -exp))
    return word, sign


def word_product(word: Sequence[tuple[str, int]], sign: int = 1) -> ModularMatrix:
    result = IDENTITY if sign == 1 else MINUS_IDENTITY
    for token, exp in word:
        gen = {"A": GEN_A, "S": GEN_S, "B": GEN_B}[token]
        result = result @ gen**exp
    return result


# -- action on theta00(z), theta10(z), theta01(z), theta00(2z), theta10(2z) -

_ACTION_A = CyclotomicMatrix.diagonal([ONE, I, ONE, ONE, -ONE])
_ACTION_S = CyclotomicMatrix(
    [
        [ONE, ZERO, ZERO, ZERO, ZERO],
        [ZERO, ZERO, ONE, ZERO, ZERO],
        [ZERO, ONE, ZERO, ZERO, ZERO],
        [ZERO, ZERO, ZERO, INV_SQRT2, INV_SQRT2],
        [ZERO, ZERO, ZERO, INV_SQRT2, -INV_SQRT2],
    ]
)


def _action_a_power(k: int) -> CyclotomicMatrix:
    ik = CyclotomicScalar.zeta_power(2 * k)  # i^k
    sign = ONE if k % 2 == 0 else -ONE
    return CyclotomicMatrix.diagonal([ONE, ik, ONE, ONE, sign])


def action_matrix5(M: ModularMatrix) -> CyclotomicMatrix:
    """Matrix of ``f -> f|M`` in the basis of five thetas, acting on row vectors.

    ``f|M = v(M)^-1 (cz+d)^-1/2 f(Mz)`` with the theta multiplier ``v``. The
    action is from the right, so ``action(M1 M2) = action(M1) @ action(M2)``.
    ``-I`` acts trivially.
    """
    word, _ = theta_group_word(M)
    result = CyclotomicMatrix.identity(5)
    for token, exp in word:
        result = result @ (_action_a_power(exp) if token == "A" else _ACTION_S)
    return result


def basis5(z: complex, budget: TruncationBudget = DEFAULT_BUDGET) -> np.ndarray:
    return np.array(
        [
            theta(CHAR_00, z, budget),
            theta(CHAR_10, z, budget),
            theta(CHAR_01, z, budget),
            theta(CHAR_00, 2 * z, budget),
            theta(CHAR_10, 2 * z, budget),
        ]
    )


def verify_action_numerically(
    M: ModularMatrix,
    z: complex,
    budget: TruncationBudget = DEFAULT_BUDGET,
    *,
    min_theta: float = 1e-12,
) -> float:
    """Max discrepancy between ``f(Mz)`` and ``v(M) sqrt(cz+d) (A f)(z)``.

    ``v(M)`` is taken from theta00; the remaining four rows are then an
    independent check of the matrix. Returned residual is relative to the
    largest basis value at ``Mz`` (plus one).
    """
    z = check_upper_half(z)
    if not _theta_group(M):
        raise ValueError(f"{M} is not in the theta group")
    f_z = basis5(z, budget)
    if abs(f_z[0]) < min_theta:
        raise IllConditionedError("theta00 nearly vanishes at the sample")
    mz = mobius(M, z)
    f_mz = basis5(mz, budget)
    j = automorphy_factor(M, z, 1)
    v = f_mz[0] / (j * f_z[0])
    predicted = v * j * (action_matrix5(M).to_complex() @ f_z)
    return float(np.max(np.abs(f_mz - predicted)) / (np.max(np.abs(f_mz)) + 1.0))


# -- random group elements -----------------------------------------------------

def random_theta_word(rng: np.random.Generator, length: int) -> ModularMatrix:
    """Random product of ``A^{+-1}`` and ``S`` of the given length."""
    M = IDENTITY
    for _ in range(length):
        choice = rng.integers(3)
        M = M @ (GEN_S if choice == 0 else GEN_A if choice == 1 else GEN_A.inverse())
    return M


def random_gamma_n(rng: np.random.Generator, n: int, length: int = 3) -> ModularMatrix:
    """Random element of ``Gamma[n]`` as a word in its elementary generators."""
    up = ModularMatrix(1, n, 0, 1)
    low = ModularMatrix(1, 0, n, 1)
    M = IDENTITY
    for _ in range(length):
        gen = up if rng.integers(2) else low
        M = M @ gen ** int(rng.choice([-1, 1]))
    return M


def random_gamma4(rng: np.random.Generator, gamma8_length: int = 2) -> ModularMatrix:
    """Random Gamma[4] element: a class representative times a random Gamma[8] element."""
    reps = gamma4_mod_gamma8_reps()
    return reps[rng.integers(len(reps))] @ random_gamma_n(rng, 8, gamma8_length)


def random_delta48(rng: np.random.Generator, gamma8_length: int = 1) -> MatrixPair:
    """Random element of ``Delta(4, 8)``: diagonal Gamma[4] times Gamma[8] x Gamma[8]."""
    reps = gamma4_mod_gamma8_reps()
    M = reps[rng.integers(len(reps))]
    return MatrixPair(
        M @ random_gamma_n(rng, 8, gamma8_length),
        M @ random_gamma_n(rng, 8, gamma8_length),
    )
