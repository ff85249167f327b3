"""GKZ operators, truncated series solutions and the period-integral oracle.

A ``FormalSeries`` stores ``sum c_v a^(gamma + v)`` as a map from integer
offset vectors ``v`` to exact coefficients.  For a solution series every
offset is a relation vector.  Series built in the canonical coordinates ``x``
of a regular cone carry ``coordinates == "x"``; their coefficients are those
of ``x^m`` and differ from the ``a``-coefficients by ``(-1)^(l_0)``.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .fan import (
    Fan,
    FanError,
    PointConfig,
    kahler_cone,
    point_config,
    primitive_relations,
    property_star,
)
from .groebner import canonical_exponent, falling_factorial, unique_index_certificate, IndexReport
from .linalg import IntVector, express_in_basis, inverse, is_unimodular_extension, transpose


def compositions(total_max: int, parts: int):
    """All nonnegative integer tuples of length ``parts`` with sum <= ``total_max``."""
    if parts == 0:
        yield ()
        return
    for first in range(total_max + 1):
        for rest in compositions(total_max - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class TruncationSpec:
    """Support region of a truncated series.

    ``kind == "monoid"``: relation vectors ``sum m_k basis_k`` with ``m >= 0``
    and ``sum m_k <= max_total_degree``.
    ``kind == "torus"``: relation vectors with entries 1..p nonnegative and
    summing to at most ``max_total_degree``.
    """

    basis: Tuple[IntVector, ...]
    max_total_degree: int
    kind: str = "monoid"

    def __post_init__(self):
        if self.max_total_degree < 0:
            raise ValueError("truncation order must be nonnegative")
        if self.kind not in ("monoid", "torus"):
            raise ValueError(f"unknown truncation kind {self.kind!r}")

    def monoid_coords(self, v: Sequence[int]) -> Optional[Tuple[int, ...]]:
        c = express_in_basis(self.basis, v)
        if c is None or any(x.denominator != 1 for x in c):
            return None
        return tuple(int(x) for x in c)

    def contains(self, v: Sequence[int]) -> bool:
        if self.kind == "torus":
            tail = v[1:]
            return all(x >= 0 for x in tail) and sum(tail) <= self.max_total_degree
        m = self.monoid_coords(v)
        return m is not None and all(x >= 0 for x in m) and sum(m) <= self.max_total_degree


@dataclass
class FormalSeries:
    gamma: Tuple[Fraction, ...]
    terms: Dict[IntVector, Fraction]
    truncation: TruncationSpec
    coordinates: str = "a"

    def __post_init__(self):
        self.gamma = tuple(Fraction(g) for g in self.gamma)
        self.terms = {tuple(k): Fraction(c) for k, c in self.terms.items() if c != 0}

    def in_a_coordinates(self) -> "FormalSeries":
        if self.coordinates == "a":
            return self
        terms = {l: c * (-1) ** (-l[0] % 2) for l, c in self.terms.items()}
        return replace(self, terms=terms, coordinates="a")

    def in_x_coordinates(self) -> "FormalSeries":
        if self.coordinates == "x":
            return self
        terms = {l: c * (-1) ** (-l[0] % 2) for l, c in self.terms.items()}
        return replace(self, terms=terms, coordinates="x")

    def coefficient(self, l: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(l), Fraction(0))

    def by_monoid_degree(self) -> Dict[Tuple[int, ...], Fraction]:
        """Coefficients keyed by the basis coordinates ``m`` of each term."""
        return {self.truncation.monoid_coords(l): c for l, c in self.terms.items()}


@dataclass(frozen=True)
class GkzSystem:
    config: PointConfig
    beta: IntVector
    box_generators: Tuple[IntVector, ...]
    euler_matrix: Tuple[IntVector, ...]


def gkz_system(config: PointConfig, box_generators: Optional[Sequence[IntVector]] = None
               ) -> GkzSystem:
    """GKZ system at exponent ``-1 x 0``; Euler rows use the standard basis of Z x M."""
    gens = tuple(box_generators) if box_generators is not None else config.relation_basis
    for l in gens:
        if not config.is_relation(l):
            raise ValueError(f"{l} is not a relation")
    beta = (-1,) + (0,) * config.n
    return GkzSystem(config, beta, gens, tuple(tuple(r) for r in config.matrix))


def box_apply(l: Sequence[int], series: FormalSeries) -> FormalSeries:
    """Apply ``prod_{l>0} d^l - prod_{l<0} d^-l`` term by term, exactly.

    The result is keyed by offsets ``w`` with the output monomial ``a^(gamma + w)``.
    """
    s = series.in_a_coordinates()
    lp = tuple(max(x, 0) for x in l)
    lm = tuple(max(-x, 0) for x in l)
    out: Dict[IntVector, Fraction] = {}
    for v, c in s.terms.items():
        e = [g + x for g, x in zip(s.gamma, v)]
        for sign, part in ((1, lp), (-1, lm)):
            f = Fraction(1)
            for ei, k in zip(e, part):
                if k:
                    f *= falling_factorial(ei, k)
                    if f == 0:
                        break
            if f:
                w = tuple(x - k for x, k in zip(v, part))
                out[w] = out.get(w, Fraction(0)) + sign * c * f
    return FormalSeries(s.gamma, out, s.truncation, "a")


def euler_residual(system: GkzSystem, series: FormalSeries) -> List[Fraction]:
    """Residual coefficient of every first-order operator on every term.

    Ordered by sorted offset, then by Euler row.
    """
    s = series.in_a_coordinates()
    out = []
    for v in sorted(s.terms):
        c = s.terms[v]
        e = [g + x for g, x in zip(s.gamma, v)]
        for row, b in zip(system.euler_matrix, system.beta):
            out.append(c * (sum(r * ei for r, ei in zip(row, e)) - b))
    return out


def torus_cycle_series(config: PointConfig, N: int) -> FormalSeries:
    """Expansion of the torus-cycle period for ``|a_0| >> |a_i|`` to total degree ``N``.

    Normalised so the constant term is 1 (the ``(2 pi i)^n`` factor is dropped
    and the period is multiplied by ``a_0``).
    """
    p = len(config.points) - 1
    n = config.n
    terms: Dict[IntVector, Fraction] = {}
    for ls in compositions(N, p):
        if any(sum(li * config.points[i + 1][k] for i, li in enumerate(ls))
               for k in range(1, n + 1)):
            continue
        r = sum(ls)
        coeff = factorial(r)
        for li in ls:
            coeff //= factorial(li)
        terms[(-r,) + ls] = Fraction((-1) ** r * coeff)
    return FormalSeries(canonical_exponent(p), terms,
                        TruncationSpec(config.relation_basis, N, "torus"), "a")


def check_tau_basis(fan: Fan, tau_basis: Sequence[IntVector], config: Optional[PointConfig] = None):
    """Raise unless ``tau_basis`` is a Z-basis of L whose monoid contains every
    primitive relation."""
    config = config or point_config(fan)
    coords = [config.lattice_coords(b) for b in tau_basis]
    if len(coords) != len(config.relation_basis) or not is_unimodular_extension(coords):
        raise FanError("tau basis is not a Z-basis of the relation lattice")
    for r in primitive_relations(fan):
        c = express_in_basis(list(tau_basis), r.l)
        if c is None or any(x < 0 for x in c):
            raise FanError(f"primitive relation {r.l} is not in the dual of tau")


def local_series(fan: Fan, tau_basis: Sequence[IntVector], N: int) -> FormalSeries:
    """Period expansion in the canonical coordinates ``x`` of a regular cone.

    Coefficient of ``x^m`` is ``(-l_0)! / prod_{i>=1} l_i!`` for
    ``l = sum m_k tau_basis[k]``; terms with ``l_0 > 0`` are skipped and terms
    with a negative ``l_i`` vanish.
    """
    config = point_config(fan)
    check_tau_basis(fan, tau_basis, config)
    basis = tuple(tuple(b) for b in tau_basis)
    p = fan.p
    terms: Dict[IntVector, Fraction] = {}
    for m in compositions(N, len(basis)):
        l = tuple(sum(mk * b[i] for mk, b in zip(m, basis)) for i in range(p + 1))
        if l[0] > 0 or any(x < 0 for x in l[1:]):
            continue
        coeff = factorial(-l[0])
        for x in l[1:]:
            coeff //= factorial(x)
        terms[l] = Fraction(coeff)
    return FormalSeries(canonical_exponent(p), terms, TruncationSpec(basis, N), "x")


@dataclass
class AnnihilationReport:
    passed: bool
    interior_terms: int
    boundary_terms: Dict[IntVector, Dict[IntVector, Fraction]] = field(default_factory=dict)
    failures: Dict[IntVector, Dict[IntVector, Fraction]] = field(default_factory=dict)


def verify_annihilation(system: GkzSystem, series: FormalSeries,
                        operators: Sequence[IntVector]) -> AnnihilationReport:
    """Apply each box operator and require exact cancellation away from the
    truncation edge.

    A residual term at offset ``w`` counts as interior when both of its
    preimages ``w + l+`` and ``w + l-`` lie in the truncation region.
    """
    s = series.in_a_coordinates()
    rep = AnnihilationReport(True, 0)
    for l in operators:
        l = tuple(l)
        if not system.config.is_relation(l):
            raise ValueError(f"{l} is not a relation")
        lp = tuple(max(x, 0) for x in l)
        lm = tuple(max(-x, 0) for x in l)
        out = box_apply(l, s).terms
        # also visit interior offsets whose residual cancelled to zero
        candidates = set(out)
        for v in s.terms:
            candidates.add(tuple(a - b for a, b in zip(v, lp)))
            candidates.add(tuple(a - b for a, b in zip(v, lm)))
        for w in sorted(candidates):
            c = out.get(w, Fraction(0))
            up = tuple(a + b for a, b in zip(w, lp))
            um = tuple(a + b for a, b in zip(w, lm))
            if s.truncation.contains(up) and s.truncation.contains(um):
                rep.interior_terms += 1
                if c != 0:
                    rep.failures.setdefault(l, {})[w] = c
                    rep.passed = False
            elif c != 0:
                rep.boundary_terms.setdefault(l, {})[w] = c
    return rep


def laurent_polynomial(config: PointConfig, a: Sequence[complex]) -> Dict[IntVector, complex]:
    """Monomials ``mu -> a_mu`` of ``f(X, a) = sum a_mu X^mu``."""
    return {tuple(pt[1:]): complex(c) for pt, c in zip(config.points, a)}


class QuadratureError(ValueError):
    pass


def numeric_period(config: PointConfig, a: Sequence[complex], K: int,
                   tol: float = 1e-12) -> complex:
    """``a_0`` times the torus-cycle period divided by ``(2 pi i)^n``.

    Uses the periodic trapezoid rule with ``K`` nodes per circle, i.e. the
    mean of ``a_0 / f(X, a)`` over the ``K^n`` grid on the unit torus.  The
    grid is summed slab by slab along the first axis, so the float result is
    reproducible.
    """
    a = [complex(x) for x in a]
    if abs(a[0]) <= sum(abs(x) for x in a[1:]):
        raise QuadratureError("need |a_0| > sum |a_i| for the torus cycle expansion")
    n = config.n
    exps = np.array([pt[1:] for pt in config.points], dtype=float)
    coeffs = np.array(a, dtype=complex)
    theta = 2 * np.pi * np.arange(K) / K
    if n == 0:
        return 1.0 + 0j
    rest = np.stack(np.meshgrid(*([theta] * (n - 1)), indexing="ij"), axis=-1).reshape(-1, n - 1) \
        if n > 1 else np.zeros((1, 0))
    total = 0j
    for t0 in theta:
        grid = np.concatenate([np.full((rest.shape[0], 1), t0), rest], axis=1)
        phase = np.exp(1j * grid @ exps.T)
        f = phase @ coeffs
        if np.min(np.abs(f)) < tol:
            raise QuadratureError("integrand denominator vanishes on the torus")
        total += np.sum(a[0] / f)
    return complex(total / K ** n)


def coordinates_x(config: PointConfig, tau_basis: Sequence[IntVector],
                  a: Sequence[complex]) -> List[complex]:
    """``x_k = (-1)^(l_0) a^l`` for each basis vector ``l``."""
    a = [complex(x) for x in a]
    if any(x == 0 for x in a):
        raise ValueError("all coordinates a_mu must be nonzero")
    out = []
    for l in tau_basis:
        x = complex((-1) ** (l[0] % 2))
        for ai, li in zip(a, l):
            x *= ai ** li
        out.append(x)
    return out


def evaluate_x(series: FormalSeries, x: Sequence[complex]) -> complex:
    """Sum ``c_m x^m`` of a series in canonical coordinates."""
    s = series.in_x_coordinates()
    total = 0j
    for l, c in sorted(s.terms.items()):
        m = s.truncation.monoid_coords(l)
        term = complex(c)
        for xk, mk in zip(x, m):
            term *= complex(xk) ** mk
        total += term
    return total


def evaluate_a(series: FormalSeries, a: Sequence[complex]) -> complex:
    """Sum ``c_l a^l`` (the series of ``a_0`` times the period)."""
    s = series.in_a_coordinates()
    total = 0j
    for l, c in sorted(s.terms.items()):
        term = complex(c)
        for ai, li in zip(a, l):
            term *= complex(ai) ** li
        total += term
    return total


def dual_basis(tau_generators: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Basis of the dual lattice pairing to the identity with a unimodular basis."""
    inv = inverse(tau_generators)
    # rows b_k with <g_j, b_k> = delta: B = (G^-1)^T
    return [tuple(int(x) for x in col) for col in transpose(inv)]


class InvalidTau(ValueError):
    pass


@dataclass
class MdpReport:
    hypotheses: bool
    tau_valid: bool
    uniqueness: bool
    existence: bool
    tau_generators: List[Tuple[int, ...]] = field(default_factory=list)
    tau_dual_basis: List[IntVector] = field(default_factory=list)
    index: Optional[IndexReport] = None
    annihilation: Optional[AnnihilationReport] = None
    series: Optional[FormalSeries] = None
    notes: List[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.hypotheses and self.tau_valid and self.uniqueness and self.existence


def default_tau(fan: Fan) -> List[Tuple[int, ...]]:
    """Generators of the closed Kähler cone, when it is a regular large cone."""
    K = kahler_cone(fan)
    if not K.is_regular:
        raise InvalidTau("Kähler cone is not regular; pass tau explicitly")
    return list(K.cone.generators)


def verify_max_degeneracy(fan: Fan, tau_generators: Optional[Sequence[Sequence[int]]],
                          N: int) -> MdpReport:
    """Certify a maximal degeneracy point at the fixed point of ``tau``.

    ``tau_generators`` are given in the coordinates dual to the relation
    basis; ``None`` selects the closed Kähler cone.
    """
    config = point_config(fan)
    star = property_star(fan)
    K = kahler_cone(fan, config)
    rep = MdpReport(star.holds and K.is_large, False, False, False)
    if not star.holds:
        rep.notes.append("fan does not have property (*)")
    if not K.is_large:
        rep.notes.append("Kähler cone is not large")
    if tau_generators is None:
        tau_generators = default_tau(fan)
    gens = [tuple(int(x) for x in g) for g in tau_generators]
    k = K.rank
    if any(len(g) != k for g in gens):
        raise InvalidTau(f"tau generators must have {k} coordinates")
    if len(gens) != k:
        raise InvalidTau(f"tau needs {k} generators to be large, got {len(gens)}")
    if not is_unimodular_extension(gens):
        raise InvalidTau("tau is not regular")
    for g in gens:
        if any(sum(x * y for x, y in zip(g, r)) < 0 for r in K.relation_coords):
            raise InvalidTau(f"tau generator {g} is not in the Kähler cone")
    rep.tau_valid = True
    rep.tau_generators = gens
    if not rep.hypotheses:
        return rep
    rep.index = unique_index_certificate(fan)
    rep.uniqueness = rep.index.passes
    basis = [config.from_lattice_coords(b) for b in dual_basis(gens)]
    rep.tau_dual_basis = basis
    series = local_series(fan, basis, N)
    rep.series = series
    system = gkz_system(config)
    ops = sorted({r.l for r in primitive_relations(fan)} | set(basis))
    rep.annihilation = verify_annihilation(system, series, ops)
    rep.existence = (series.coefficient((0,) * (fan.p + 1)) == 1
                     and rep.annihilation.passed)
    return rep
