# The elliptic curve and the quadric fibration of the square share their branch data.

from cliffmirror.square import elliptic_section, ramification_identity, reproduce_exe, seeded_labels, symbolic_labels

print("f =", elliptic_section(symbolic_labels()))
for pairing in ("fiber", "other", "crossed"):
    v = ramification_identity(seeded_labels(0), pairing)
    print(f"{pairing:8s} {v.verdict}  mu = {v.mu}  e = {v.exponent}")

rep = reproduce_exe(seed=0)
print("\nsquare + square:", rep.to_json()["verdict"], "with", len(rep.decompositions), "decompositions")
