# Splitting deg_dual into s-pairs and t-points.

from cliffmirror.decomp import enumerate_decompositions, validate
from cliffmirror.square import exe_pair, square_pair

pair = square_pair()
for d in enumerate_decompositions(pair):
    print(d, " valid:", validate(pair, d).ok)

# The sum of two squares has index 2, so r runs from 0 to 2.
ds = enumerate_decompositions(exe_pair())
for r in range(3):
    print(f"r = {r}: {sum(d.r == r for d in ds)} decompositions")
