"""
Generalized matrix functions as tensor traces
=============================================

A PSD matrix is a Gram matrix, so d_f(A) is a trace over (C^m)^{⊗n}.
"""

import numpy as np

from immlift import gmf_tensor_oracle, gmf_value, gram_vectors, random_psd, sn_character, symmetric_group
from immlift.gmf import projector_norm_form

A = random_psd(3, seed=4)
g = gram_vectors(A)
print("Gram reconstruction error:", np.abs(g.gram() - A).max())

S3 = symmetric_group(3)
chi = sn_character((2, 1))

# the same number three ways: the permutation sum, the tensor trace,
# and the squared norm of a projected product vector
print("direct     ", gmf_value(S3, chi, A))
print("tensor     ", gmf_tensor_oracle(S3, chi, A))
print("projection ", projector_norm_form(S3, chi, A))
