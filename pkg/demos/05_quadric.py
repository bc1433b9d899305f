# Gram matrix of the quadric fibration, its degeneration divisor and coranks there.

from cliffmirror.quadric import coranks_on_divisor, degeneration_divisor
from cliffmirror.square import quadric_family, seeded_labels, symbolic_labels

QF = quadric_family(symbolic_labels())
for row in QF.gram:
    print([str(e) for e in row])
print("det =", degeneration_divisor(QF))

# With rational coefficients the divisor factors over Q; coranks are exact.
for seed in range(3):
    print(f"seed {seed}:", coranks_on_divisor(quadric_family(seeded_labels(seed)), "t"))
