"""
Gröbner bases from primitive relations
======================================

For a weight vector strictly inside the secondary cone of the maximal
triangulation, the binomials of the primitive relations already form a
Gröbner basis of the toric ideal, and their leading terms generate the
Stanley-Reisner ideal.  Outside that cone Buchberger has real work to do.
"""

from toricmdp.catalog import hirzebruch
from toricmdp.fan import cross_check_T0, in_secondary_cone, interior_weight, maximal_triangulation
from toricmdp.groebner import (
    MonomialIdeal,
    TermOrder,
    buchberger_complete,
    buchberger_verify,
    candidate_groebner_basis,
    format_monomial,
    stanley_reisner,
)

fan = hirzebruch(1)
basis = candidate_groebner_basis(fan)
print("candidate basis:", [str(b) for b in basis])

omega = (0, 1, 1, 1, 1)
print("omega strictly inside:", in_secondary_cone(fan, omega, strict=True))
report = buchberger_verify(basis, TermOrder(omega))
for pair in report.pairs:
    print(f"  S-pair ({pair.i}, {pair.j}): {pair.disposition}")

sr = stanley_reisner(maximal_triangulation(fan), fan.p)
lt = MonomialIdeal(tuple(report.leading_terms))
print("leading terms:", [format_monomial(m) for m in lt.generators])
print("Stanley-Reisner:", [format_monomial(m) for m in sr.generators])
print("lower hull at omega is T0:", cross_check_T0(fan, omega))

# The library can also pick an interior weight on its own.
print("interior weight:", [str(w) for w in interior_weight(fan)])

# A weight outside the cone: the candidate basis is no longer Gröbner.
order = TermOrder((0, 0, 1, 0, 0))
print("verified at (0,0,1,0,0):", buchberger_verify(basis, order).verified)
gb = buchberger_complete(basis, order)
print("reduced basis:", [str(b) for b in gb])
