"""
Building self-testing matrices
==============================

"""

import numpy as np
from rocnbell import build_self_testing_matrix, gram_schmidt_family
from rocnbell.symspan import closed_form_vector, spanning_family, spanning_rank

# one orthonormal family per index i, from the (e_i + e_{i+k}) / sqrt(2) inputs
fam = gram_schmidt_family(4, 1)
for label, v in zip(fam.labels, fam.vectors):
    print(label, np.round(v, 4))

# the closed forms agree with the numerical Gram-Schmidt
print(max(np.max(np.abs(fam.vectors[k - 1] - closed_form_vector(4, 1, k))) for k in range(1, 4)))

# the m(m+1) vectors span the symmetric matrices
for m in (2, 4, 6, 8):
    print(m, spanning_rank(spanning_family(m)), m * (m + 1) // 2)

# stack the blocks: h = [I, O^(1), ..., O^(m)]
h = build_self_testing_matrix(4)
print(h.label, h.entries.shape)
print(np.round(h.entries[:, 4:8], 4))
