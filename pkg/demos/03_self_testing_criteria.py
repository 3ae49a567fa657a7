"""
Rank and spanning criteria
==========================

"""

import numpy as np
from rocnbell import build_self_testing_matrix, rank_criterion, preset
from rocnbell.selftest import build_moment_matrix, kernel_witness_check

# CHSH self-tests, although its two columns cannot span 3 dimensions
v = rank_criterion(preset("chsh"))
print(v.rank_M, v.rank_required, v.rank_passes, v.spanning_passes)

# the moment matrix of the constructed family has full column rank
for m in (2, 4, 6):
    for identity in (True, False):
        v = rank_criterion(build_self_testing_matrix(m, identity))
        print(m, identity, v.rank_M, v.rank_required, round(v.smallest_retained_singular_value, 4))

# the identity has no gap; the kernel of M gives a null-diagonal witness
h = np.eye(4)
v = rank_criterion(h)
print(build_moment_matrix(h).shape, v.rank_M)
O = v.witness.matrix.real
print(np.round(O, 4))
print("residual", kernel_witness_check(h, O))
