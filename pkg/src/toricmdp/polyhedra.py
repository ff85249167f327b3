"""Exact polyhedral primitives: cones, duality, hull boundaries, lower hulls.

Dual cones are computed by the double description method over the rationals.
Facet normals always point inward.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from .linalg import (
    IntVector,
    dot,
    independent_rows,
    integer_kernel_basis,
    inverse,
    matmul,
    primitive,
    rank,
    transpose,
)

MAX_DUAL_DIM = 8


class DimensionBoundError(ValueError):
    pass


class DegenerateConfiguration(ValueError):
    pass


@dataclass(frozen=True)
class Cone:
    """Cone generated by integer vectors; generators are stored primitive,
    deduplicated and sorted."""

    ambient_dim: int
    generators: Tuple[IntVector, ...] = field(default=())

    def __post_init__(self):
        gens = set()
        for g in self.generators:
            if len(g) != self.ambient_dim:
                raise ValueError(f"generator {g} not of length {self.ambient_dim}")
            g = primitive(g)
            if any(g):
                gens.add(g)
        object.__setattr__(self, "generators", tuple(sorted(gens)))

    @property
    def dim(self) -> int:
        return rank(self.generators) if self.generators else 0

    def lineality(self) -> List[IntVector]:
        gens = set(self.generators)
        return [g for g in self.generators if tuple(-x for x in g) in gens]

    def __contains__(self, p) -> bool:
        return cone_contains(self, p)


def _extreme_rays(A: Sequence[Sequence[int]], r: int) -> List[IntVector]:
    """Extreme rays of the pointed cone ``{t in Q^r : A t >= 0}`` (rank A == r)."""
    if r == 0:
        return []
    rows = [list(a) for a in A]
    basis_idx = independent_rows(rows)
    AI = [rows[i] for i in basis_idx]
    inv = inverse(AI)
    rays = [primitive(col) for col in transpose(inv)]
    processed = list(basis_idx)
    for i, a in enumerate(rows):
        if i in basis_idx:
            continue
        vals = [dot(a, ray) for ray in rays]
        pos = [ray for ray, v in zip(rays, vals) if v > 0]
        neg = [ray for ray, v in zip(rays, vals) if v < 0]
        zero = [ray for ray, v in zip(rays, vals) if v == 0]
        new = []
        for rp in pos:
            zp = {k for k in processed if dot(rows[k], rp) == 0}
            for rn in neg:
                common = [rows[k] for k in processed if k in zp and dot(rows[k], rn) == 0]
                if len(common) < r - 2 or rank(common) != r - 2:
                    continue
                ap, an = dot(a, rp), dot(a, rn)
                new.append(primitive([ap * y - an * x for x, y in zip(rp, rn)]))
        rays = pos + zero + new
        processed.append(i)
    return sorted(set(rays))


def dual_cone(C: Cone) -> Cone:
    """Generators of ``{y : <y, x> >= 0 for all x in C}``.

    Lineality of the dual (the orthogonal complement of span C) is returned as
    pairs ``v, -v``.
    """
    d = C.ambient_dim
    if d > MAX_DUAL_DIM:
        raise DimensionBoundError(f"ambient dimension {d} exceeds {MAX_DUAL_DIM}")
    A = [list(g) for g in C.generators]
    if not A:
        unit = [tuple(int(i == j) for j in range(d)) for i in range(d)]
        return Cone(d, tuple(unit) + tuple(tuple(-x for x in u) for u in unit))
    lin = integer_kernel_basis(A, d)
    W = [A[i] for i in independent_rows(A)]
    r = len(W)
    # parametrise span(C) as y = W^T t
    At = matmul(A, transpose(W))
    rays_t = _extreme_rays(At, r)
    gens = [primitive(matmul([list(t)], W)[0]) for t in rays_t]
    gens += list(lin) + [tuple(-x for x in v) for v in lin]
    return Cone(d, tuple(gens))


def _split_dual(C: Cone):
    D = dual_cone(C)
    lin = set(D.lineality())
    facets = [y for y in D.generators if y not in lin]
    equalities = [y for y in D.generators if y in lin]
    return facets, equalities


def cone_contains(C: Cone, p: Sequence, strict: bool = False) -> bool:
    """Exact membership of ``p`` in ``C``.

    With ``strict`` the test is for the relative interior, which for a
    full-dimensional cone is the usual interior.
    """
    if len(p) != C.ambient_dim:
        raise ValueError("dimension mismatch")
    p = [Fraction(x) for x in p]
    facets, equalities = _split_dual(C)
    if any(dot(y, p) != 0 for y in equalities):
        return False
    if strict:
        return all(dot(y, p) > 0 for y in facets)
    return all(dot(y, p) >= 0 for y in facets)


def same_cone(C: Cone, D: Cone) -> bool:
    """Set equality, decided by mutual generator containment."""
    return (C.ambient_dim == D.ambient_dim
            and all(cone_contains(D, g) for g in C.generators)
            and all(cone_contains(C, g) for g in D.generators))


def hull_boundary_contains(points: Sequence[Sequence[int]], q: Sequence[int]) -> bool:
    """True iff ``q`` lies on the (relative) boundary of ``conv(points)``."""
    pts = [tuple(p) for p in points]
    d = len(pts[0])
    if rank([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]] or [[0] * d]) < 1:
        raise DegenerateConfiguration("points span a single point")
    C = Cone(d + 1, tuple((1,) + p for p in pts))
    facets, equalities = _split_dual(C)
    qh = (1,) + tuple(q)
    if any(dot(y, qh) != 0 for y in equalities):
        return False
    vals = [dot(y, qh) for y in facets]
    return all(v >= 0 for v in vals) and any(v == 0 for v in vals)


def lower_hull_subdivision(points: Sequence[Sequence[int]], heights: Sequence
                           ) -> List[Tuple[int, ...]]:
    """Cells of the regular subdivision induced by lifting ``points`` to ``heights``.

    Each cell is a sorted tuple of point indices (every point lying on the
    corresponding lower facet, not only its vertices).
    """
    pts = [tuple(int(x) for x in p) for p in points]
    if len(pts) != len(heights):
        raise ValueError("need one height per point")
    d = len(pts[0])
    diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    if not diffs or rank(diffs) < d:
        raise DegenerateConfiguration("points are not full-dimensional")
    h = [Fraction(x) for x in heights]
    den = 1
    for x in h:
        den = den * x.denominator // gcd(den, x.denominator)
    lifted = [(1,) + p + (int(x * den),) for p, x in zip(pts, h)]
    if rank(lifted) == d + 1:
        # heights are affine: no kinks
        return [tuple(range(len(pts)))]
    D = dual_cone(Cone(d + 2, tuple(lifted)))
    cells = set()
    for y in D.generators:
        if y[-1] > 0:
            cells.add(tuple(i for i, v in enumerate(lifted) if dot(y, v) == 0))
    return sorted(cells)
