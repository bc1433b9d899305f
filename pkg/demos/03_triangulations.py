# Central regular triangulations and the quotient fan.

from cliffmirror.decomp import enumerate_decompositions
from cliffmirror.fans import build_central_triangulation, check_centrality, quotient_maximal_cones
from cliffmirror.square import square_pair

pair = square_pair()
for d in enumerate_decompositions(pair):
    T = build_central_triangulation(pair, d)
    print(d)
    print("  simplices:", T.simplices)
    print("  regularity weights:", [str(w) for w in T.weights])
    print("  central:", check_centrality(T, d))
    print("  quotient cones:", quotient_maximal_cones(T, d))
