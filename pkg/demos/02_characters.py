"""
Characters and central idempotents
==================================

Character values come from the Murnaghan-Nakayama rule; the A_4 table is built in.
"""

from immlift import (
    builtin_a4_table,
    convolve,
    hook_degree,
    idempotent_function,
    mn_character,
    partitions_of,
    sn_character,
    symmetric_group,
)

# the character table of S_4, rows λ and columns cycle types μ
lams = partitions_of(4)
print("      " + "".join(f"{str(mu):>11}" for mu in lams))
for lam in lams:
    print(f"{str(lam):>6}" + "".join(f"{mn_character(lam, mu):>11}" for mu in lams))

print("degrees:", {str(l): hook_degree(l) for l in lams})

# the idempotent of the 2-dimensional representation of S_3
S3 = symmetric_group(3)
p = idempotent_function(S3, sn_character((2, 1)))
for sigma, c in p.items():
    print(f"  c({sigma}) = {c}")

# p * p = p holds exactly, the coefficients are fractions
print("p*p == p:", convolve(p, p).values == p.values)

# A_4 has two complex characters; the table uses ω = exp(2πi/3)
table = builtin_a4_table()
for rep, members in table.classes:
    print(f"class of {rep} (size {len(members)}):", [f"{complex(row(rep)):.3f}" for row in table.rows])
print("orthogonality defect:", table.orthogonality_defect())
