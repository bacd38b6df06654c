"""Shared hypothesis strategies."""
import math

from hypothesis import strategies as st

from boxtheta.modular import ModularMatrix


def upper_half(re=(-2.0, 2.0), im=(0.5, 3.0)):
    return st.builds(
        complex,
        st.floats(*re, allow_nan=False, allow_infinity=False),
        st.floats(*im, allow_nan=False, allow_infinity=False),
    )


@st.composite
def sl2z(draw, max_entry=30):
    """Random determinant-one matrix from a coprime bottom row."""
    c = draw(st.integers(-max_entry, max_entry))
    d = draw(st.integers(-max_entry, max_entry))
    if math.gcd(c, d) != 1:
        c, d = 0, 1
    _, x, y = _egcd(d, c)  # x d + y c = 1
    a, b = x, -y
    k = draw(st.integers(-5, 5))
    return ModularMatrix(a + k * c, b + k * d, c, d)


def _egcd(p, q):
    if q == 0:
        return (p, 1 if p >= 0 else -1, 0) if abs(p) == 1 else (abs(p), 1, 0)
    g, x, y = _egcd(q, p % q)
    return g, y, x - (p // q) * y
