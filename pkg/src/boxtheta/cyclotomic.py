"""Exact arithmetic in the cyclotomic field Q(zeta_8) and matrices over it.

An element is ``(c0 + c1 z + c2 z^2 + c3 z^3) / den`` with ``z = exp(pi i / 4)``,
integer numerators and a positive denominator, stored in lowest terms.
Reduction uses ``z^4 = -1``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "CyclotomicScalar",
    "CyclotomicMatrix",
    "ZETA",
    "ONE",
    "ZERO",
    "I",
    "SQRT2",
    "INV_SQRT2",
    "normalize_vector",
]

_R = math.sqrt(0.5)
_POWERS_C = (1.0 + 0j, complex(_R, _R), 1j, complex(-_R, _R))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class CyclotomicScalar:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        fr = [_as_fraction(c) for c in (c0, c1, c2, c3)]
        den = reduce(math.lcm, (f.denominator for f in fr), 1)
        self._set(tuple(int(f * den) for f in fr), den)

    @classmethod
    def _raw(cls, num: tuple[int, int, int, int], den: int) -> "CyclotomicScalar":
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    def _set(self, num, den):
        g = math.gcd(den, *num)
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_int(cls, n: int) -> "CyclotomicScalar":
        return cls._raw((n, 0, 0, 0), 1)

    @classmethod
    def zeta_power(cls, k: int) -> "CyclotomicScalar":
        k %= 8
        sign = -1 if k >= 4 else 1
        num = [0, 0, 0, 0]
        num[k % 4] = sign
        return cls._raw(tuple(num), 1)

    @classmethod
    def gaussian(cls, re, im) -> "CyclotomicScalar":
        return cls(re, 0, im, 0)

    # -- accessors ---------------------------------------------------------

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(c, self.den) for c in self.num)

    c0 = property(lambda self: Fraction(self.num[0], self.den))
    c1 = property(lambda self: Fraction(self.num[1], self.den))
    c2 = property(lambda self: Fraction(self.num[2], self.den))
    c3 = property(lambda self: Fraction(self.num[3], self.den))

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __complex__(self) -> complex:
        return sum(c * p for c, p in zip(self.num, _POWERS_C)) / self.den

    to_complex = __complex__

    def dyadic_exponent(self) -> int | None:
        """``m`` with ``den == 2**m``, or None if the denominator is not a power of two."""
        if self.den & (self.den - 1):
            return None
        return self.den.bit_length() - 1

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> "CyclotomicScalar":
        if isinstance(other, CyclotomicScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicScalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self.den, other.den
        if d1 == d2:
            return CyclotomicScalar._raw(tuple(a + b for a, b in zip(self.num, other.num)), d1)
        return CyclotomicScalar._raw(
            tuple(a * d2 + b * d1 for a, b in zip(self.num, other.num)), d1 * d2
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicScalar._raw(tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a0, a1, a2, a3 = self.num
        b0, b1, b2, b3 = other.num
        c0 = a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1
        c1 = a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2
        c2 = a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3
        c3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
        return CyclotomicScalar._raw((c0, c1, c2, c3), self.den * other.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "CyclotomicScalar":
        """Apply the automorphism ``zeta -> zeta**k`` (k odd)."""
        if k % 2 == 0:
            raise ValueError("Galois automorphisms of Q(zeta_8) use odd exponents")
        out = [0, 0, 0, 0]
        for j, c in enumerate(self.num):
            p = (j * k) % 8
            out[p % 4] += -c if p >= 4 else c
        return CyclotomicScalar._raw(tuple(out), self.den)

    def conjugate(self) -> "CyclotomicScalar":
        return self.galois(7)

    def norm(self) -> Fraction:
        """Field norm to Q, the product of the four Galois conjugates."""
        prod = self * self.galois(3) * self.galois(5) * self.galois(7)
        assert not any(prod.num[1:])
        return Fraction(prod.num[0], prod.den)

    def inverse(self) -> "CyclotomicScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_8)")
        adj = self.galois(3) * self.galois(5) * self.galois(7)
        n = self.norm()
        return adj * CyclotomicScalar(1 / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CyclotomicScalar(_as_fraction(other)) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicScalar(other)
        if not isinstance(other, CyclotomicScalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return "CyclotomicScalar({})".format(", ".join(str(c) for c in self.coefficients))

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coefficients):
            if c:
                terms.append(str(c) if k == 0 else f"{c}*z^{k}")
        return " + ".join(terms) if terms else "0"


ZERO = CyclotomicScalar._raw((0, 0, 0, 0), 1)
ONE = CyclotomicScalar._raw((1, 0, 0, 0), 1)
ZETA = CyclotomicScalar._raw((0, 1, 0, 0), 1)
I = CyclotomicScalar._raw((0, 0, 1, 0), 1)
SQRT2 = CyclotomicScalar._raw((0, 1, 0, -1), 1)  # zeta + zeta^7
INV_SQRT2 = CyclotomicScalar._raw((0, 1, 0, -1), 2)


class CyclotomicMatrix:
    """Square matrix over Q(zeta_8); immutable and hashable."""

    __slots__ = ("rows", "n", "_hash")

    def __init__(self, rows: Iterable[Sequence]):
        rows = tuple(
            tuple(e if isinstance(e, CyclotomicScalar) else CyclotomicScalar(e) for e in row)
            for row in rows
        )
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self.rows = rows
        self.n = n
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "CyclotomicMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence) -> "CyclotomicMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "CyclotomicMatrix") -> "CyclotomicMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        n = self.n
        cols = [[(k, other.rows[k][j]) for k in range(n) if other.rows[k][j]] for j in range(n)]
        out = []
        for row in self.rows:
            new_row = []
            for col in cols:
                acc = ZERO
                for k, b in col:
                    a = row[k]
                    if a:
                        acc = acc + a * b
                new_row.append(acc)
            out.append(new_row)
        return CyclotomicMatrix(out)

    def apply(self, vec: Sequence[CyclotomicScalar]) -> tuple[CyclotomicScalar, ...]:
        """Matrix times column vector."""
        out = []
        for row in self.rows:
            acc = ZERO
            for a, b in zip(row, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def scale(self, s: CyclotomicScalar) -> "CyclotomicMatrix":
        return CyclotomicMatrix([[e * s for e in row] for row in self.rows])

    def conjugate_by(self, other: "CyclotomicMatrix") -> "CyclotomicMatrix":
        """``other^-1 @ self @ other`` for an involutive or inverted ``other``."""
        return other.inverse() @ self @ other

    def inverse(self) -> "CyclotomicMatrix":
        n = self.n
        aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col]), None)
            if pivot is None:
                raise ZeroDivisionError("singular matrix")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = aug[col][col].inverse()
            aug[col] = [e * inv for e in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return CyclotomicMatrix([row[n:] for row in aug])

    def first_nonzero(self) -> CyclotomicScalar:
        for row in self.rows:
            for e in row:
                if e:
                    return e
        raise ValueError("zero matrix")

    def projective_normal_form(self) -> "CyclotomicMatrix":
        """Scale so that the first nonzero entry in row-major order equals 1."""
        lead = self.first_nonzero()
        if lead == ONE:
            return self
        return self.scale(lead.inverse())

    def is_diagonal(self) -> bool:
        return all(not e for i, row in enumerate(self.rows) for j, e in enumerate(row) if i != j)

    def to_complex(self) -> np.ndarray:
        return np.array([[complex(e) for e in row] for row in self.rows])

    def __eq__(self, other):
        if not isinstance(other, CyclotomicMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = ",\n ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.rows)
        return f"CyclotomicMatrix([{body}])"

    def to_json(self) -> dict:
        """Grid of 4-tuples of integer coefficients over a common ``2**m``.

        Non-dyadic entries fall back to rational strings with ``dyadic_exponent``
        set to None.
        """
        den = reduce(math.lcm, (e.den for row in self.rows for e in row), 1)
        if den & (den - 1) == 0:
            m = den.bit_length() - 1
            grid = [[[c * (den // e.den) for c in e.num] for e in row] for row in self.rows]
            return {"dyadic_exponent": m, "entries": grid}
        grid = [[[str(c) for c in e.coefficients] for e in row] for row in self.rows]
        return {"dyadic_exponent": None, "entries": grid}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicMatrix":
        m = data["dyadic_exponent"]
        if m is None:
            return cls([[CyclotomicScalar(*e) for e in row] for row in data["entries"]])
        den = 2**m
        return cls([[CyclotomicScalar._raw(tuple(int(c) for c in e), den) for e in row] for row in data["entries"]])


def normalize_vector(vec: Sequence[CyclotomicScalar]) -> tuple[CyclotomicScalar, ...]:
    """Projective representative with the first nonzero coordinate equal to 1."""
    lead = next((v for v in vec if v), None)
    if lead is None:
        raise ValueError("zero vector has no projective class")
    if lead == ONE:
        return tuple(vec)
    inv = lead.inverse()
    return tuple(v * inv for v in vec)
