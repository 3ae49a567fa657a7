"""
Bell functionals from ROCN matrices
===================================

"""

# the CHSH functional is the 2 x 2 Hadamard matrix, rescaled
import numpy as np
from rocnbell import preset, classical_bound, quantum_bound, validate_rocn

h = preset("chsh")
print(h.entries)
print(validate_rocn(h.entries).as_dict())

# local strategies reach sqrt(2), quantum ones reach n = 2
print("classical", classical_bound(h), "quantum", quantum_bound(h))

# a 3 x 4 preset: tetrahedron directions as columns
e = preset("elegant")
print(np.round(e.entries, 4))
print("classical", classical_bound(e), "quantum", quantum_bound(e))

# the identity is ROCN too, but shows no gap at all
for m in (2, 3, 4):
    print(m, classical_bound(np.eye(m)), quantum_bound(np.eye(m)))
