"""
Jacobi theta functions
======================

Evaluate the three theta constants, look at the truncation certificate,
and check the doubling relations and the inversion formula numerically.
"""

import cmath
import math

import numpy as np

from boxtheta.theta import (
    CHAR_00,
    CHAR_01,
    CHAR_10,
    empirical_multiplier,
    principal_sqrt,
    sample_upper_half,
    theta,
    theta_eval,
)
from boxtheta.modular import GEN_A, GEN_S

# theta00(i) has a closed form in terms of Gamma(3/4)
res = theta_eval(CHAR_00, 1j)
print("theta00(i)        =", res.value.real)
print("pi^(1/4)/G(3/4)   =", math.pi**0.25 / math.gamma(0.75))
print("tail bound, terms =", res.error_bound, res.terms)

# the q-series needs more terms as z approaches the real axis
for y in (2.0, 0.5, 0.1, 0.02):
    print(f"Im z = {y:5.2f}: {theta_eval(CHAR_00, 1j * y).terms:4d} terms")

# doubling relations, on a few random points of the upper half plane
rng = np.random.default_rng(0)
for z in sample_upper_half(rng, 3):
    t00, t10, t01 = (theta(c, z) for c in (CHAR_00, CHAR_10, CHAR_01))
    s00, s10 = theta(CHAR_00, 2 * z), theta(CHAR_10, 2 * z)
    print(f"z = {z:.3f}   |t00^2 - s00^2 - s10^2| = {abs(t00**2 - s00**2 - s10**2):.1e}"
          f"   |t10^2 - 2 s00 s10| = {abs(t10**2 - 2 * s00 * s10):.1e}")

# inversion: theta00(-1/z) = sqrt(z/i) theta00(z)
z = 0.4 + 0.8j
print("inversion residual:", abs(theta(CHAR_00, -1 / z) - principal_sqrt(z / 1j) * theta(CHAR_00, z)))

# the multiplier system read off numerically
print("v(A) =", empirical_multiplier(CHAR_00, GEN_A, z))
print("v(S) =", empirical_multiplier(CHAR_00, GEN_S, z), " expected", cmath.exp(-1j * math.pi / 4))
