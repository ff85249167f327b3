"""
Fans, primitive collections and the Kähler cone
===============================================

A complete regular fan is read from a plain text file.  We check that it is
regular and complete, list its primitive collections and their relations,
and compute the Kähler cone in the coordinates dual to the relation lattice.
"""

from pathlib import Path

from toricmdp.cli import parse_fan_file
from toricmdp.fan import kahler_cone, point_config, primitive_relations, property_star, validate

HERE = Path(__file__).parent

fan = parse_fan_file((HERE / "fans" / "f1.fan").read_text()).to_fan()
print(fan.name, "rays:", fan.rays)
print("valid:", validate(fan).ok)

# The points of the configuration are the rays with a leading 1, plus the
# apex (1, 0, 0) in position 0.
config = point_config(fan)
print("points:", config.points)
print("relation lattice basis:", config.relation_basis)

for r in primitive_relations(fan):
    print(f"collection {r.collection}: c0 = {r.c0}, l = {r.l}")

# Property (*) is tested twice: by the sign of l_0 on every primitive
# relation, and by asking whether every ray sits on the boundary of the hull.
star = property_star(fan)
print("relations criterion:", star.relations_criterion, " hull criterion:", star.hull_criterion)

K = kahler_cone(fan)
print("Kähler cone generators:", K.cone.generators, " large:", K.is_large, " regular:", K.is_regular)

# F3 is complete and regular too, but ray (0, 1) lies inside the hull.
f3 = parse_fan_file((HERE / "fans" / "f3.fan").read_text()).to_fan()
s = property_star(f3)
print("F3: positive relations", s.positive_relations, "interior rays", s.interior_rays)
