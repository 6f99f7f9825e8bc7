"""From Weil parameters to the scalar in front of the critical value.

For (l2, l3) = (2, 8) this prints the parameters, the shifted Gamma factor,
the critical points found three ways and the constants at each of them.
"""

from fractions import Fraction

from branchkit import lfactors as lf
from branchkit.escoh import cup_constants

pp = lf.PiParams(l2=2, l3=8, delta=0)
print("pi2:", pp.pi2())
print("pi3:", pp.pi3())
print("pi3 x pi2:", pp.pair())
print("L(s - 3/2) gamma factor:", lf.gamma_factor(pp.pair()).shifted(Fraction(-3, 2)))
print("epsilon = i^%d" % lf.epsilon_exponent(pp.pair()))

by_hodge = [m for m in range(-20, 21) if lf.critical_by_hodge(pp, m)]
print("critical m:", lf.critical_points(pp), lf.critical_points_by_poles(pp), by_hodge)

for m in lf.critical_points(pp):
    mc = lf.main_constant(pp, m)
    cup = cup_constants(pp.l3 + 1, pp.delta, pp.l2, m)
    print(f"m = {m}: parity {mc.parity:+d}, scalar {mc.scalar}, C = {cup.C}, prefactor {cup.prefactor}")
