"""
Curves on the box variety
=========================

The modular curves w = Mz + k lie in W1 W2 W3 C = 0; a theta-function
identity pins down the constant relating the two sides. A diagonal curve
gives an elliptic curve, and the degree/genus bound is a plain predicate.
"""

import numpy as np

from boxtheta.curves import (
    RATIONAL_CURVE_CONSTANT,
    CurveInvariants,
    degree_genus_bound,
    diagonal_elliptic_dependency,
    diagonal_elliptic_residuals,
    on_rational_curve,
    rational_curve_identity_residual,
    rational_tags,
)

tags = rational_tags()
print(len(tags), "rational curves")
print("first tag:", tags[0].to_json())
print("on the curve:", max(on_rational_curve(z, tags[7]) for z in (0.1 + 0.7j, -0.6 + 1.5j)))

print("constant:", RATIONAL_CURVE_CONSTANT)
print("identity residual:", rational_curve_identity_residual(0.2 + 0.9j, -0.3 + 1.1j))

print("diagonal curve residuals:", np.round(diagonal_elliptic_residuals(0.25 + 0.8j), 14))
print("the two quadrics reduce to:", diagonal_elliptic_dependency())

for d, g in ((176, 0), (177, 0), (192, 1), (193, 1)):
    print(f"d = {d}, g = {g}:", degree_genus_bound(CurveInvariants(d, g)))
