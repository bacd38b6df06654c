"""
Automorphisms from pairs of modular matrices
============================================

Each pair (M1, M2) congruent mod 2 acts on (z, w); the induced map on the
seven coordinates is linear. We fit it by least squares, snap the entries
to Z[zeta_8][1/2], and close up the resulting finite matrix group.
"""

from boxtheta.automorphisms import (
    exact_matrix,
    fit_projective_matrix,
    full_generators,
    group_closure_order,
    node_orbit,
)
from boxtheta.variety import singular_points_exact

gens = full_generators()
for g in gens:
    fit = fit_projective_matrix(g)
    print(f"{str(g):8s} fit residual {fit.residual:.1e}")

print("(S,S) exactly:")
print(exact_matrix(gens[0]))

orbit = node_orbit(gens)
print("orbit of [1:1:0:0:0:1:1]:", len(orbit), "points, equal to the node list:", orbit == set(singular_points_exact()))

order, report = group_closure_order(full_generators(include_swap=False))
print(report.summary())
order, report = group_closure_order(gens)
print(report.summary())
