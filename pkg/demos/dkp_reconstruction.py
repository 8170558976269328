"""
From torsion to a Hessian PDE
=============================

For torsion x^8 the structure sits inside CSp(3) as exponentials of a
nilpotent generator eta(v).  Projecting to the Lagrangian chart gives
Hessian values U(v); fitting a polynomial relation among their entries
recovers the first dKP flow.  The same recipe with the flat generator
gives the wave equation.
"""

import random
from fractions import Fraction

from gl2struct.csp3 import (
    U_of,
    check_conformal_symplectic,
    check_relation,
    cone_from_symbol,
    eta_dkp,
    eta_flat,
    exp_nilpotent,
    is_hyperbolic,
    named_pde,
    on_locus_point,
    pde_symbol,
    reconstruct_relation,
    section_rank,
)

v = [Fraction(1), Fraction(-2), Fraction(1, 2), Fraction(3), Fraction(2)]
g = exp_nilpotent(eta_dkp(v))
print("lambda(exp eta) =", check_conformal_symplectic(g))
print("U(v) =", [[str(x) for x in row] for row in U_of(eta_dkp, v)])

for name, builder in (("flat", eta_flat), ("x^8", eta_dkp)):
    rel = reconstruct_relation(builder)
    bad = check_relation(rel, builder, count=200)
    print(f"{name}: {rel}   (fails on {bad}/200 fresh points)")

# hyperbolicity of the named equations at points of their loci
rng = random.Random(0)
for name in ("wave", "dkp1", "71", "62", "611", "laplace"):
    U = on_locus_point(name, rng)
    print(f"{name:>7}: hyperbolic = {is_hyperbolic(pde_symbol(named_pde(name), U))}")

# the symbol cuts the Veronese cone in a conic; for the wave equation the
# parametrization is q(s, t) = (s^2, s t, t^2)
A = pde_symbol(named_pde("wave"), [[0] * 3 for _ in range(3)])
cs = cone_from_symbol(A)
print("wave cone:", cs.to_json()["q"], " span of quartics:", section_rank(cs))
