"""
Immanants of a small matrix
===========================

The determinant, the permanent and everything in between.
"""

import numpy as np

from immlift import determinant, immanant, partitions_of, permanent, random_psd

A = np.array([[1.0, 2.0], [3.0, 4.0]])
print("det", determinant(A).real, " per", permanent(A).real)

# (1,1) is the sign character and (2) the trivial one, so these repeat the line above
print("imm_(1,1)", immanant((1, 1), A).real, " imm_(2)", immanant((2,), A).real)

# on a positive semidefinite matrix every immanant is real and nonnegative
B = random_psd(4, seed=1)
for lam in partitions_of(4):
    value = immanant(lam, B)
    print(f"imm_{lam}(B) = {value.real:12.5f}   (imag {value.imag:+.1e})")

# Ryser's formula agrees with the naive sum over S_n
from itertools import permutations

naive = sum(np.prod([B[i, s[i]] for i in range(4)]) for s in permutations(range(4)))
print("permanent vs naive sum:", abs(permanent(B) - naive))
