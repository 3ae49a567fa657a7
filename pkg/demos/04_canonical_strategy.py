"""
Reaching the quantum bound
==========================

"""

import numpy as np
from rocnbell import (
    bell_value,
    build_self_testing_matrix,
    canonical_strategy,
    correlations,
    preset,
    probabilities,
)

# Alice measures anticommuting Clifford generators, Bob measures sum_i h_ij A_i^T
h = build_self_testing_matrix(2)
s = canonical_strategy(h)
print(s.d, s.alice.anticommutation_residual(), s.bob.involution_residual())

# on the maximally entangled state the correlators reproduce h itself
t = correlations(s)
print(np.max(np.abs(t.joint - h.entries)))
print("bell value", bell_value(h, t.joint), "n", h.n)

# the same holds for the odd preset
e = preset("elegant")
print("elegant", bell_value(e, correlations(canonical_strategy(e)).joint))

# outcome probabilities p(a, b | i, j), outcome 0 is +1
p = probabilities(t)
print(p.shape, p.min(), np.max(np.abs(p.sum(axis=(2, 3)) - 1)))
print(np.round(p[0, 2], 4))
