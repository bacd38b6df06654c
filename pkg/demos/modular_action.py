"""
The theta group acting on five theta values
===========================================

The theta group permutes theta00(z), theta10(z), theta01(z), theta00(2z),
theta10(2z) up to eighth roots of unity. The matrices are exact over
Q(zeta_8); here we compare them against direct evaluation.
"""

import numpy as np

from boxtheta.modular import (
    GEN_A,
    GEN_S,
    R_MAT,
    T_MAT,
    T_PRIME,
    action_matrix5,
    gamma4_mod_gamma8_reps,
    membership,
    random_theta_word,
    theta_group_word,
    verify_action_numerically,
)

print("action of S:")
print(action_matrix5(GEN_S))

# T, T' and R act diagonally
for name, M in (("T", T_MAT), ("T'", T_PRIME), ("R", R_MAT)):
    print(name, np.round(np.diag(action_matrix5(M).to_complex()), 12))

rng = np.random.default_rng(1)
worst = 0.0
for _ in range(20):
    M = random_theta_word(rng, 5)
    worst = max(worst, verify_action_numerically(M, 0.2 + 0.9j))
print("largest discrepancy over 20 random words:", worst)

M = random_theta_word(rng, 4)
print(M, "as a word in A and S:", theta_group_word(M))

# the congruence subgroups used elsewhere
print("A in theta group:", membership(GEN_A, "theta"), "  A in Gamma[2]:", membership(GEN_A, "gamma", 2))
print("Gamma[4]/Gamma[8] representatives:", len(gamma4_mod_gamma8_reps()))
print("in Gamma'[4]:", [membership(M, "gamma_prime4") for M in gamma4_mod_gamma8_reps()])
