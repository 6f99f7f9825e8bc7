"""The differential forms omega_j pulled back to the GL(2) slice.

Shows which pullbacks vanish, compares omega_+-2 with its reference
closed form and prints the invariant 3-form obtained by wedging with xi.
"""

from branchkit import geom

forms = geom.iota_pullback_forms()
for j, f in forms["omega"].items():
    print(f"iota* omega_{j}:", f)

ids = geom.iota_identities()
for k, v in ids.items():
    print(f"{k:22s} {v}")

print("omega_2 ^ xi_- =", forms["wedge"][(2, "-")])
