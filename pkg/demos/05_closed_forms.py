"""
Closed forms in three and two variables
=======================================

For trace-one X, Y, Z the A_4 lifts and the anticommutator bounds have short formulas.
"""

import numpy as np

from immlift import evaluate, lift_function, random_psd
from immlift.matcore import hermitian_eigvals
from immlift.verifier import a4_closed_form, a4_inverse_character, anticommutator_lower, anticommutator_upper

X, Y, Z = (random_psd(3, seed=6, trace_one=True, key=(i,)) for i in range(3))

for label in ("chi1", "chi2", "chi3"):
    lifted = evaluate(lift_function(a4_inverse_character(label)), [X, Y, Z])
    closed = a4_closed_form(label, X, Y, Z)
    print(f"{label}: |lift - closed form| = {np.abs(lifted - closed).max():.1e},"
          f" min eig {hermitian_eigvals(closed).min():.4f}")

# X + Y + (tr XY - 1)·1  ⪯  XY + YX  ⪯  (2/3)(X + Y + tr(XY)·1)
print("lower gap min eig", hermitian_eigvals(anticommutator_lower(X, Y)).min())
print("upper gap min eig", hermitian_eigvals(anticommutator_upper(X, Y)).min())
