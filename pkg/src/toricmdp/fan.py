"""Complete regular fans and their combinatorics.

Ray ``i`` of a fan (0-based) is point ``i + 1`` of the associated point
configuration; point 0 is the apex ``1 x 0``.  Relation vectors are always
indexed over the point configuration.
"""

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .linalg import (
    IntVector,
    determinant,
    dot,
    express_in_basis,
    integer_kernel_basis,
    is_primitive,
    is_unimodular_extension,
    rank,
    solve_rational,
)
from .polyhedra import Cone, dual_cone, hull_boundary_contains, lower_hull_subdivision


class FanError(ValueError):
    pass


class IntegralityError(FanError):
    """A primitive relation had non-integral coefficients: the fan data is not regular."""


class CriteriaDisagreement(RuntimeError):
    """The two property (*) criteria disagreed; this is an implementation bug."""


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: Tuple[IntVector, ...]
    max_cones: Tuple[Tuple[int, ...], ...]
    name: Optional[str] = None

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(sorted(tuple(sorted(c)) for c in self.max_cones))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        for r in rays:
            if len(r) != self.dim:
                raise FanError(f"ray {r} is not of dimension {self.dim}")
            if not is_primitive(r):
                raise FanError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise FanError("rays must be pairwise distinct")
        for c in cones:
            if len(c) != self.dim or len(set(c)) != self.dim:
                raise FanError(f"cone {c} must have {self.dim} distinct rays")
            if any(not 0 <= i < len(rays) for i in c):
                raise FanError(f"cone {c} has an out-of-range ray index")
            if rank([rays[i] for i in c]) != self.dim:
                raise FanError(f"cone {c} has linearly dependent rays")

    @property
    def p(self) -> int:
        return len(self.rays)

    def faces(self) -> FrozenSet[FrozenSet[int]]:
        """All cones of the fan as sets of ray indices (including the empty cone)."""
        out = set()
        for c in self.max_cones:
            for k in range(len(c) + 1):
                out.update(frozenset(s) for s in combinations(c, k))
        return frozenset(out)


@dataclass
class ValidationReport:
    regular: bool
    complete: bool
    witness: Optional[Tuple[int, ...]] = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.regular and self.complete


def _generic_point(n: int, seed: int) -> List[Fraction]:
    rng = random.Random(seed)
    return [Fraction(rng.randint(-997, 997), rng.randint(1, 97)) for _ in range(n)]


def validate(fan: Fan) -> ValidationReport:
    """Check regularity and completeness; failures are reported, not raised.

    Completeness means every codimension-one face lies in exactly two maximal
    cones and the adjacency graph is connected.  A generic point is also
    checked to lie in exactly one maximal cone, which rules out fans that wrap
    around more than once.
    """
    for c in fan.max_cones:
        if abs(determinant([fan.rays[i] for i in c])) != 1:
            return ValidationReport(False, False, c, f"cone {list(c)} has determinant "
                                    f"{determinant([fan.rays[i] for i in c])}")
    if not fan.max_cones:
        return ValidationReport(True, False, None, "no maximal cones")
    facet_owners: Dict[Tuple[int, ...], List[int]] = {}
    for k, c in enumerate(fan.max_cones):
        for f in combinations(c, fan.dim - 1):
            facet_owners.setdefault(f, []).append(k)
    for f, owners in sorted(facet_owners.items()):
        if len(owners) != 2:
            return ValidationReport(True, False, f,
                                    f"face {list(f)} lies in {len(owners)} maximal cones")
    adj: Dict[int, set] = {k: set() for k in range(len(fan.max_cones))}
    for owners in facet_owners.values():
        a, b = owners
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for j in adj[k] - seen:
            seen.add(j)
            queue.append(j)
    if len(seen) != len(fan.max_cones):
        missing = min(set(adj) - seen)
        return ValidationReport(True, False, fan.max_cones[missing], "adjacency graph disconnected")
    for shift in range(20):
        pt = _generic_point(fan.dim, shift)
        hits, on_boundary = 0, False
        for c in fan.max_cones:
            coeffs = express_in_basis([fan.rays[i] for i in c], pt)
            if any(x == 0 for x in coeffs):
                on_boundary = True
                break
            hits += all(x > 0 for x in coeffs)
        if on_boundary:
            continue
        if hits != 1:
            return ValidationReport(True, False, None, f"a generic point lies in {hits} maximal cones")
        break
    return ValidationReport(True, True)


@dataclass(frozen=True)
class PointConfig:
    n: int
    points: Tuple[IntVector, ...]
    relation_basis: Tuple[IntVector, ...]

    @property
    def matrix(self) -> List[List[int]]:
        """Configuration matrix with the points as columns."""
        return [list(col) for col in zip(*self.points)]

    def is_relation(self, l: Sequence[int]) -> bool:
        return len(l) == len(self.points) and not any(
            sum(li * pt[k] for li, pt in zip(l, self.points)) for k in range(self.n + 1))

    def lattice_coords(self, l: Sequence[int]) -> Tuple[int, ...]:
        """Integer coordinates of a relation vector in ``relation_basis``."""
        c = express_in_basis(self.relation_basis, l)
        if c is None or any(x.denominator != 1 for x in c):
            raise FanError(f"{tuple(l)} is not in the relation lattice")
        return tuple(int(x) for x in c)

    def from_lattice_coords(self, k: Sequence[int]) -> IntVector:
        return tuple(sum(ki * b[j] for ki, b in zip(k, self.relation_basis))
                     for j in range(len(self.points)))

    def weights_from_dual(self, f: Sequence) -> List[Fraction]:
        """A weight vector on the points whose pairing with the relation basis is ``f``."""
        w = solve_rational(self.relation_basis, f)
        if w is None:
            raise FanError("inconsistent dual coordinates")
        return w

    def dual_coords(self, omega: Sequence) -> Tuple[Fraction, ...]:
        return tuple(Fraction(dot(omega, b)) for b in self.relation_basis)


def point_config(fan: Fan) -> PointConfig:
    pts = ((1,) + (0,) * fan.dim,) + tuple((1,) + r for r in fan.rays)
    M = [list(col) for col in zip(*pts)]
    return PointConfig(fan.dim, pts, tuple(integer_kernel_basis(M, len(pts))))


def minimal_nonfaces(faces: FrozenSet[FrozenSet[int]], vertices: Sequence[int]
                     ) -> List[Tuple[int, ...]]:
    """Inclusion-minimal non-faces of a simplicial complex, sorted.

    Breadth-first by size: a candidate is a face extended by one larger vertex,
    kept when it is not a face but all its facets are.
    """
    vertices = sorted(vertices)
    out = [(v,) for v in vertices if frozenset([v]) not in faces]
    level = [f for f in faces if len(f) == 1]
    while level:
        nxt = []
        for f in level:
            top = max(f)
            for v in vertices:
                if v <= top:
                    continue
                s = f | {v}
                if s in faces:
                    nxt.append(s)
                elif all(s - {u} in faces for u in s):
                    out.append(tuple(sorted(s)))
        level = nxt
    return sorted(set(out))


def primitive_collections(fan: Fan) -> List[Tuple[int, ...]]:
    """Primitive collections as sorted tuples of 0-based ray indices."""
    return minimal_nonfaces(fan.faces(), range(fan.p))


@dataclass(frozen=True)
class PrimitiveRelation:
    collection: Tuple[int, ...]
    generators: Tuple[int, ...]
    c0: int
    c: Tuple[Tuple[int, int], ...]
    l: IntVector

    @property
    def l0(self) -> int:
        return self.l[0]


def primitive_relation(fan: Fan, P: Sequence[int]) -> PrimitiveRelation:
    """Locate the sum of ``P`` in its minimal cone and build the relation vector."""
    P = tuple(sorted(P))
    s = [sum(fan.rays[i][k] for i in P) for k in range(fan.dim)]
    G: Dict[int, int] = {}
    if any(s):
        for cone in fan.max_cones:
            coeffs = express_in_basis([fan.rays[i] for i in cone], s)
            if all(x >= 0 for x in coeffs):
                for i, x in zip(cone, coeffs):
                    if x > 0:
                        if x.denominator != 1:
                            raise IntegralityError(
                                f"sum of {list(P)} has coefficient {x} on ray {i}")
                        G[i] = int(x)
                break
        else:
            raise FanError(f"sum of {list(P)} lies in no maximal cone; fan is not complete")
    if set(G) & set(P):
        raise FanError(f"collection {list(P)} meets its own minimal cone")
    c0 = len(P) - sum(G.values())
    l = [0] * (fan.p + 1)
    l[0] = -c0
    for i in P:
        l[i + 1] = 1
    for i, ci in G.items():
        l[i + 1] = -ci
    return PrimitiveRelation(P, tuple(sorted(G)), c0, tuple(sorted(G.items())), tuple(l))


def primitive_relations(fan: Fan) -> List[PrimitiveRelation]:
    return [primitive_relation(fan, P) for P in primitive_collections(fan)]


@dataclass
class StarReport:
    relations_criterion: bool
    hull_criterion: bool
    positive_relations: List[Tuple[int, ...]]
    interior_rays: List[int]

    @property
    def holds(self) -> bool:
        return self.relations_criterion and self.hull_criterion


def property_star(fan: Fan) -> StarReport:
    """Evaluate l(P)_0 <= 0 for all primitive relations and the hull-boundary
    condition on the rays independently; they must agree."""
    rels = primitive_relations(fan)
    positive = [r.collection for r in rels if r.l0 > 0]
    interior = [i for i, r in enumerate(fan.rays)
                if not hull_boundary_contains(fan.rays, r)]
    rep = StarReport(not positive, not interior, positive, interior)
    if rep.relations_criterion != rep.hull_criterion:
        raise CriteriaDisagreement(
            f"relations criterion {rep.relations_criterion} vs hull criterion {rep.hull_criterion}")
    return rep


@dataclass(frozen=True)
class KahlerCone:
    """Closed Kähler cone in the coordinates dual to ``relation_basis``."""

    cone: Cone
    relation_cone: Cone
    relation_coords: Tuple[Tuple[int, ...], ...]
    rank: int

    @property
    def is_large(self) -> bool:
        return self.cone.dim == self.rank and not self.cone.lineality()

    @property
    def is_regular(self) -> bool:
        g = self.cone.generators
        return self.is_large and len(g) == self.rank and is_unimodular_extension(g)

    def interior_point(self) -> Tuple[int, ...]:
        return tuple(sum(g[k] for g in self.cone.generators) for k in range(self.rank))


def kahler_cone(fan: Fan, config: Optional[PointConfig] = None) -> KahlerCone:
    config = config or point_config(fan)
    coords = tuple(config.lattice_coords(r.l) for r in primitive_relations(fan))
    k = len(config.relation_basis)
    M = Cone(k, coords)
    return KahlerCone(dual_cone(M), M, coords, k)


@dataclass(frozen=True)
class Triangulation:
    simplices: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "simplices",
                           tuple(sorted(tuple(sorted(s)) for s in self.simplices)))

    def faces(self) -> FrozenSet[FrozenSet[int]]:
        out = set()
        for s in self.simplices:
            for k in range(len(s) + 1):
                out.update(frozenset(c) for c in combinations(s, k))
        return frozenset(out)


def maximal_triangulation(fan: Fan) -> Triangulation:
    return Triangulation(tuple((0,) + tuple(i + 1 for i in c) for c in fan.max_cones))


def in_secondary_cone(fan: Fan, omega: Sequence, strict: bool = False) -> bool:
    """Whether ``omega`` pairs nonnegatively (strictly positively) with every
    primitive relation."""
    if len(omega) != fan.p + 1:
        raise ValueError(f"weight vector must have length {fan.p + 1}")
    vals = [sum(Fraction(w) * li for w, li in zip(omega, r.l)) for r in primitive_relations(fan)]
    return all(v > 0 for v in vals) if strict else all(v >= 0 for v in vals)


def interior_weight(fan: Fan) -> List[Fraction]:
    """A weight vector strictly inside the secondary cone of the maximal
    triangulation (lift of the sum of the Kähler cone generators)."""
    config = point_config(fan)
    K = kahler_cone(fan, config)
    if not K.is_large:
        raise FanError("Kähler cone is not large")
    return config.weights_from_dual(K.interior_point())


def cross_check_T0(fan: Fan, omega: Sequence) -> bool:
    """Compare the lower-hull subdivision at ``omega`` with the maximal triangulation."""
    pts = [(0,) * fan.dim] + list(fan.rays)
    cells = lower_hull_subdivision(pts, omega)
    bad = [c for c in cells if len(c) != fan.dim + 1]
    if bad:
        raise FanError(f"weight vector is not generic: non-simplicial cells {bad}")
    return set(cells) == set(maximal_triangulation(fan).simplices)
