# Even Clifford algebras of the Gram matrix.

from fractions import Fraction

from cliffmirror.quadric import even_clifford
from cliffmirror.square import quadric_family, symbolic_labels

A = even_clifford(quadric_family(symbolic_labels()))
print("dimension", A.dimension, "basis", A.basis)
u = {1: 1}
print("(e1 e2)^2 =", {k: str(v) for k, v in A.multiply(u, u).items()})

# A rank-four form gives an algebra of dimension 8.
Q = [[Fraction(int(i == j) + (i + j) % 2, 2) for j in range(4)] for i in range(4)]
B = even_clifford(Q)
print("\nrank 4: dimension", B.dimension)
print("e1e2 * e3e4 =", {B.basis[k]: str(v) for k, v in B.multiply({1: 1}, {6: 1}).items()})
