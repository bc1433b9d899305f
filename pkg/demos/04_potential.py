# The potential C = C1 + C2, its characters and the base-point-free witnesses.

from cliffmirror.decomp import enumerate_decompositions
from cliffmirror.fans import build_central_triangulation
from cliffmirror.mirror import bpf_witnesses, build_potential, character_data, flatness_check, verify_semiinvariance
from cliffmirror.square import square_pair

pair = square_pair()
for d in enumerate_decompositions(pair):
    P = build_potential(pair, d, seed=1)
    print(d)
    print("  C1 =", P.C1)
    print("  C2 =", P.C2)
    cd = character_data(pair, d)
    print("  chi =", cd.chi_weight, " semi-invariant:", verify_semiinvariance(P, cd).ok)
    T = build_central_triangulation(pair, d)
    if d.t:
        print("  witnesses:", len(bpf_witnesses(pair, d, T)))
    if d.r:
        print("  flatness:", flatness_check(pair, d, T).verdict)
