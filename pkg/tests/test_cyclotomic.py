import cmath
import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxtheta.cyclotomic import (
    I,
    INV_SQRT2,
    ONE,
    SQRT2,
    ZERO,
    ZETA,
    CyclotomicMatrix,
    CyclotomicScalar,
    normalize_vector,
)

coeff = st.fractions(min_value=-8, max_value=8, max_denominator=8)
scalars = st.builds(CyclotomicScalar, coeff, coeff, coeff, coeff)
nonzero = scalars.filter(bool)


def test_zeta_is_primitive_eighth_root():
    assert ZETA**8 == ONE
    assert ZETA**4 == -ONE
    assert ZETA**2 == I


def test_sqrt2():
    assert SQRT2 * SQRT2 == CyclotomicScalar(2)
    assert SQRT2 * INV_SQRT2 == ONE
    assert abs(complex(INV_SQRT2) - 1 / math.sqrt(2)) < 1e-15


def test_zeta_power_negative_and_large():
    assert CyclotomicScalar.zeta_power(-1) == ZETA**7
    assert CyclotomicScalar.zeta_power(13) == ZETA**5


def test_gaussian():
    g = CyclotomicScalar.gaussian(Fraction(1, 2), -3)
    assert complex(g) == 0.5 - 3j


def test_rejects_floats():
    with pytest.raises(TypeError):
        CyclotomicScalar(0.5)


def test_dyadic_exponent():
    assert CyclotomicScalar(Fraction(3, 8)).dyadic_exponent() == 3
    assert CyclotomicScalar(Fraction(1, 3)).dyadic_exponent() is None


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == ZERO


@given(nonzero)
def test_inverse(a):
    assert a * a.inverse() == ONE
    assert a / a == ONE


@given(scalars)
def test_norm_is_rational_product_of_conjugates(a):
    prod = a * a.galois(3) * a.galois(5) * a.galois(7)
    assert prod == CyclotomicScalar(a.norm())


@given(scalars, scalars)
def test_embedding_is_a_homomorphism(a, b):
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-14 * (1 + abs(complex(a)) * abs(complex(b)))
    assert abs(complex(a + b) - complex(a) - complex(b)) < 1e-14 * (1 + abs(complex(a)) + abs(complex(b)))


@given(scalars)
def test_complex_conjugation(a):
    assert abs(complex(a.conjugate()) - complex(a).conjugate()) < 1e-13


@given(scalars)
def test_hash_matches_equality(a):
    b = CyclotomicScalar(*a.coefficients)
    assert a == b and hash(a) == hash(b)


# -- matrices -------------------------------------------------------------------

matrices = st.lists(st.lists(scalars, min_size=3, max_size=3), min_size=3, max_size=3).map(CyclotomicMatrix)


@settings(max_examples=25)
@given(matrices, matrices, matrices)
def test_matrix_associativity(A, B, C):
    assert (A @ B) @ C == A @ (B @ C)


@settings(max_examples=25)
@given(matrices)
def test_identity(A):
    E = CyclotomicMatrix.identity(3)
    assert A @ E == A == E @ A


@settings(max_examples=25)
@given(matrices)
def test_inverse_when_invertible(A):
    if abs(np.linalg.det(A.to_complex())) < 1e-6:
        return
    assert A @ A.inverse() == CyclotomicMatrix.identity(3)


@settings(max_examples=25)
@given(matrices, nonzero)
def test_projective_normal_form_forgets_scalars(A, s):
    if not any(e for row in A.rows for e in row):
        return
    assert A.scale(s).projective_normal_form() == A.projective_normal_form()


def test_singular_matrix_inverse_fails():
    A = CyclotomicMatrix([[ONE, ONE], [ONE, ONE]])
    with pytest.raises(ZeroDivisionError):
        A.inverse()


def test_non_square_rejected():
    with pytest.raises(ValueError):
        CyclotomicMatrix([[ONE, ZERO]])


def test_json_round_trip():
    A = CyclotomicMatrix([[INV_SQRT2, I], [ZETA**3 / 4, -ONE]])
    data = json.loads(json.dumps(A.to_json()))
    assert data["dyadic_exponent"] == 2
    assert CyclotomicMatrix.from_json(data) == A


def test_json_non_dyadic_round_trip():
    A = CyclotomicMatrix([[CyclotomicScalar(Fraction(1, 3))]])
    assert CyclotomicMatrix.from_json(json.loads(json.dumps(A.to_json()))) == A


def test_apply_and_to_complex_agree():
    A = CyclotomicMatrix([[ONE, I], [ZETA, SQRT2]])
    v = (ONE, ZETA**3)
    exact = np.array([complex(x) for x in A.apply(v)])
    numeric = A.to_complex() @ np.array([complex(x) for x in v])
    assert np.allclose(exact, numeric, atol=1e-15)


def test_normalize_vector():
    v = normalize_vector((ZERO, I, SQRT2))
    assert v[0] == ZERO and v[1] == ONE
    assert abs(complex(v[2]) - math.sqrt(2) / 1j) < 1e-15
    with pytest.raises(ValueError):
        normalize_vector((ZERO, ZERO))


def test_str_mentions_powers():
    assert "z^1" in str(ZETA) or "z" in str(ZETA)
    assert abs(complex(ZETA) - cmath.exp(1j * math.pi / 4)) < 1e-15
