"""
The box variety and its 48 nodes
================================

Seven theta products satisfy the four quadrics

    W1^2 + W2^2 = Z3^2,  W1^2 + W3^2 = Z2^2,  W2^2 + W3^2 = Z1^2,
    W1^2 + W2^2 + W3^2 = C^2,

the equations of a box with edges W, face diagonals Z and space diagonal C.
"""

import numpy as np

from boxtheta.variety import (
    is_singular,
    jacobian_singular_values,
    parametrize,
    residuals,
    singular_points,
    singular_points_exact,
)

p = parametrize(0.3 + 0.9j, -0.5 + 1.2j)
print("point   :", np.round(p.as_array(), 6))
print("residuals:", residuals(p))
print("smooth there:", not is_singular(p))

nodes = singular_points()
print(len(nodes), "singular points")
exact = singular_points_exact()
print("first one, exactly:", [str(c) for c in exact[0]])

# at a node the 4x7 Jacobian drops to rank 3
print("singular values at a node:", np.round(jacobian_singular_values(nodes[0]), 10))
