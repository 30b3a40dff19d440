"""
Matrix-valued lifts
===================

Replacing the last matrix by an open slot turns d_f into a trace polynomial.
"""

import numpy as np

from immlift import builtin_a4_table, evaluate, lift_function, random_psd, render, sn_character
from immlift.characters import sign_function
from immlift.matcore import hermitian_eigvals

P = lift_function(sign_function(2))
print("det, n=2:   ", render(P))

P = lift_function(sn_character((2, 1)))
print("chi(2,1):   ", render(P))
print("latex:      ", render(P, "latex"))

chi1 = builtin_a4_table()["chi1"].zero_extend()
Q = lift_function(chi1)
print("A_4 chi1:   ", render(Q))
print("trace one:  ", render(Q, trace_one=True))

# lifts of characters are positive semidefinite on PSD inputs
X = [random_psd(3, seed=5, key=(i,)) for i in range(3)]
for name, poly in [("chi(2,1)", lift_function(sn_character((2, 1)))), ("A_4 chi1", Q)]:
    value = evaluate(poly, X[: poly.arity])
    print(f"{name}: eigenvalues", np.round(hermitian_eigvals(value), 4))

# three rows cannot fit in two dimensions: the sign lift at n=3 vanishes on 2x2 matrices
Z = evaluate(lift_function(sn_character((1, 1, 1))), [np.random.default_rng(0).standard_normal((2, 2)) for _ in range(2)])
print("sign lift on 2x2:", np.abs(Z).max())
