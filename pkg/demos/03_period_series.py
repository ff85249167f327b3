"""
Period series against numerical integration
===========================================

The period of 1/f over the unit torus has a power series in the canonical
coordinates x of the Kähler cone.  We compare the truncated series with a
trapezoid-rule evaluation of the integral.
"""

import cmath
from math import comb

from toricmdp.catalog import hirzebruch, projective_space
from toricmdp.fan import point_config
from toricmdp.series import coordinates_x, evaluate_x, local_series, numeric_period

# P1: f = a0 + a1 X + a2 / X, and the series is sum C(2m, m) x^m.
p1 = projective_space(1)
s = local_series(p1, [(-2, 1, 1)], 10)
print("P1 coefficients:", [int(s.by_monoid_degree()[(m,)]) for m in range(11)])
print("central binomials:", [comb(2 * m, m) for m in range(11)])

a = (1, 0.1, 0.1)
config = point_config(p1)
x = coordinates_x(config, [(-2, 1, 1)], a)
print("x =", x[0].real)
print("quadrature  ", numeric_period(config, a, 256).real)
print("series N=10 ", evaluate_x(s, x).real)
print("closed form ", (1 / cmath.sqrt(1 - 4 * x[0])).real)

# F1 has a two-parameter series.
f1 = hirzebruch(1)
basis = [(-1, 1, -1, 1, 0), (-2, 0, 1, 0, 1)]
s = local_series(f1, basis, 10)
table = s.by_monoid_degree()
for m1 in range(4):
    print("  ", [int(table.get((m1, m2), 0)) for m2 in range(4)])

a = (1, 0.05, 0.05, 0.05, 0.05)
config = point_config(f1)
x = coordinates_x(config, basis, a)
q = numeric_period(config, a, 64)
v = evaluate_x(s, x)
print(f"F1 quadrature {q.real:.15f}  series {v.real:.15f}  diff {abs(q - v):.1e}")
