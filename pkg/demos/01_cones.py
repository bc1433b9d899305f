# Reflexive Gorenstein cones and their level-one slices.

from cliffmirror.cones import check_reflexive_pair, cone_over_polytope, direct_sum, gorenstein_degree, orthant

# The cone over the square with vertices (+-1, +-1).
square = check_reflexive_pair(cone_over_polytope([(1, 1), (1, -1), (-1, -1), (-1, 1)]))
print("rays of K:", square.K.rays)
print("rays of the dual:", square.K_dual.rays)
print("deg =", square.deg, " deg_dual =", square.deg_dual, " index =", square.index)
print("|K(1)| =", len(square.slice_K1), " |Kdual(1)| =", len(square.slice_Kdual1))

# Direct sums add the index.
exe = direct_sum(square, square)
print("\nsquare + square: rank", exe.rank, "index", exe.index)

# An orthant is self-dual with index equal to its rank.
print("orthant(3) index:", check_reflexive_pair(orthant(3)).index)

# A cone that is Gorenstein but not reflexive.
fat = cone_over_polytope([(0, 0), (2, 0), (0, 2)])
print("\ntriangle of side 2: degree", gorenstein_degree(fat), "reflexive pair:", check_reflexive_pair(fat))
