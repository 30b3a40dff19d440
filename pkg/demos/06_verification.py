"""
Randomized verification
=======================

Suites of inequalities checked on seeded random matrices, with replayable failures.
"""

import numpy as np

from immlift import InequalitySpec, check_loewner, check_scalar
from immlift.characters import constant_one, delta_identity, sign_function
from immlift.verifier import replay_counterexample, run_suite

for r in run_suite("anticommutator", trials=500, m=3, seed=1):
    print(f"{r.spec:36} {r.status:8} min {r.min_statistic:+.3e}")

# a false statement is caught and the offending matrices come back with the report
wrong = InequalitySpec("minus-delta", "loewner-nonneg", 3, (-delta_identity(3),))
r = check_loewner(wrong, trials=100, m=2)
print(r.status, "on trial", r.counterexample["trial"], "replayed:", replay_counterexample(wrong, r.counterexample))

# det ≥ per fails on the all-ones matrix
spec = InequalitySpec("det-minus-per", "scalar-difference", 2, (sign_function(2), constant_one(2)), (1, -1))
print(check_scalar(spec, matrices=[np.ones((2, 2))]).min_statistic)

# the permanent dominance search is reported, not judged
for r in run_suite("perm-dominance", trials=1000, n=4):
    print(f"{r.spec:28} {r.status}  worst margin {r.min_statistic:.3e}")
