"""
Certifying maximal degeneracy points over a catalog
===================================================

Blow up P2 repeatedly at torus-fixed points.  Some of the resulting surfaces
satisfy property (*); for those we run the full certificate: hypotheses,
choice of tau, unique index, and the annihilation check of the series.
When the Kähler cone is not simplicial there is no default tau; a regular
subcone has to be chosen by hand, so those fans are only listed.
"""

import time

from toricmdp.catalog import blowup_catalog
from toricmdp.fan import property_star
from toricmdp.series import InvalidTau, verify_max_degeneracy

start = time.perf_counter()
fans = blowup_catalog(20)
print(f"{len(fans)} fans")
for fan in fans:
    star = property_star(fan)
    if not star.holds:
        print(f"{fan.name:12s} rays={fan.p}  (*) fails, positive relations {star.positive_relations}")
        continue
    try:
        rep = verify_max_degeneracy(fan, None, 4)
    except InvalidTau as exc:
        print(f"{fan.name:12s} rays={fan.p}  {exc}")
        continue
    print(f"{fan.name:12s} rays={fan.p}  certified={rep.certified}  "
          f"terms={len(rep.series.terms)}  interior residuals checked={rep.annihilation.interior_terms}")
print(f"done in {time.perf_counter() - start:.2f} s")
