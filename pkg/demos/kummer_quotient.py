"""
An elliptic curve inside the quartic
====================================

Setting w = 2z leaves the curve a^2 = c^2 + d^2, b^2 = c^2 - d^2 in P^3.
A linear change of variables turns it into y^2 z = x^3 - x z^2; the sign
changes tau and rho become negation about a point and translation by (0, 0).
"""

import numpy as np

from boxtheta.theta import sample_upper_half
from boxtheta.variety import (
    TAU_ORIGIN,
    TWO_TORSION,
    abcd_from_z,
    curve_residual,
    elliptic_add,
    elliptic_neg,
    rho_fixed_point_cases,
    tau_rho,
    weierstrass,
    weierstrass_from_z,
)

z = 0.3 + 1.1j
p = abcd_from_z(z)
W = weierstrass_from_z(z)
print("a, b, c, d :", np.round(p.as_array(), 6))
print("x : y : z  :", np.round(W.as_array(), 6), " residual", curve_residual(W))

# rho(P) = P + (0, 0)
print("rho check:", weierstrass(tau_rho(p, "rho")).distance(elliptic_add(W, TWO_TORSION)))

# tau(P) = 2 O' - P, with O' the image of the tau-fixed point
two_o = elliptic_add(TAU_ORIGIN, TAU_ORIGIN)
print("2 O' =", np.round(two_o.as_array(), 12))
print("tau check:", weierstrass(tau_rho(p, "tau")).distance(elliptic_add(two_o, elliptic_neg(W))))

# near the cusp the points crowd the identity; the projective group law keeps its accuracy
worst = 0.0
for z in sample_upper_half(np.random.default_rng(2), 200, im_range=(2.0, 3.0)):
    W = weierstrass_from_z(z)
    worst = max(worst, weierstrass(tau_rho(abcd_from_z(z), "rho")).distance(elliptic_add(W, TWO_TORSION)))
print("worst rho check for 2 <= Im z <= 3:", worst)

print("rho has no fixed points:", rho_fixed_point_cases())
