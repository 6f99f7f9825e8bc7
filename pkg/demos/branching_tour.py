"""Walk through the GL(3) -> GL(2) branching for one weight.

Builds L3(w) as the kernel of the contraction, lists the GL(2) weights it
decomposes into, and checks that the nabla operators map a random element
equivariantly.
"""

import random

from branchkit.glrep import (WeightGL3, dim_L3, equivariance_defect, kernel_basis, nabla_n, random_element,
                             random_gl2, xi2_set)

w = WeightGL3(2, 1, 1)
print(f"weight {w}: dim L3 = {dim_L3(w)}, kernel basis has {len(kernel_basis(w))} elements")

pieces = xi2_set(w)
print("GL(2) constituents:", ", ".join(f"({n.n1},{n.n2})" for n in pieces))
print("dimension audit:", sum(n.dim() for n in pieces))

rng = random.Random(0)
p = random_element(w, rng)
for n in pieces[:3]:
    print(f"nabla^{n.n1},{n.n2} P =", nabla_n(n, p))

g = random_gl2(rng)
print("equivariance failures at a random g:", equivariance_defect(w, g, p))
