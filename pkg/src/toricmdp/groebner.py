"""Binomial toric ideals, term orders, Gröbner verification and indicial ideals.

Monomials are exponent tuples indexed over the point configuration, so
variable ``y_i`` corresponds to point ``i`` (``y_0`` is the apex).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .fan import (
    Fan,
    PointConfig,
    Triangulation,
    in_secondary_cone,
    kahler_cone,
    maximal_triangulation,
    minimal_nonfaces,
    point_config,
    primitive_relations,
    property_star,
)
from .linalg import IntVector, rank
from .polyhedra import dual_cone

Monomial = Tuple[int, ...]


class NotARelation(ValueError):
    pass


class DegreeCapExceeded(RuntimeError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Binomial:
    """``y^lplus - y^lminus`` with disjoint supports."""

    lplus: Monomial
    lminus: Monomial

    def __post_init__(self):
        if len(self.lplus) != len(self.lminus):
            raise ValueError("exponent vectors differ in length")
        if any(a < 0 for a in self.lplus + self.lminus):
            raise ValueError("exponents must be nonnegative")
        if any(a and b for a, b in zip(self.lplus, self.lminus)):
            raise ValueError("supports of the two monomials must be disjoint")
        if not any(self.lplus) and not any(self.lminus):
            raise ValueError("zero binomial")

    @property
    def l(self) -> IntVector:
        return tuple(a - b for a, b in zip(self.lplus, self.lminus))

    @property
    def degree(self) -> int:
        return max(sum(self.lplus), sum(self.lminus))

    def __str__(self):
        return f"{format_monomial(self.lplus)} - {format_monomial(self.lminus)}"


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"y{i}")
        elif e > 1:
            parts.append(f"y{i}^{e}")
    return "*".join(parts) or "1"


def binomial_from_relation(l: Sequence[int], config: Optional[PointConfig] = None) -> Binomial:
    """Split a relation by sign.  When ``config`` is given, ``l`` is checked to be a relation."""
    if config is not None and not config.is_relation(l):
        raise NotARelation(f"{tuple(l)} is not a relation on the point configuration")
    if not any(l):
        raise NotARelation("zero vector")
    return Binomial(tuple(max(x, 0) for x in l), tuple(max(-x, 0) for x in l))


@dataclass(frozen=True)
class TermOrder:
    """Weight order refined by lex with ``y_0`` smallest."""

    weight: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "weight", tuple(Fraction(w) for w in self.weight))

    def key(self, m: Monomial):
        return (sum(w * e for w, e in zip(self.weight, m)),) + tuple(reversed(m))

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)


def leading_term(b: Binomial, order: TermOrder) -> Monomial:
    return b.lplus if order.greater(b.lplus, b.lminus) else b.lminus


def _orient(u: Monomial, v: Monomial, order: TermOrder) -> Tuple[Monomial, Monomial]:
    return (u, v) if order.greater(u, v) else (v, u)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(m: Monomial, rules: Sequence[Tuple[Monomial, Monomial]],
                order: TermOrder, max_steps: int = 100000) -> Monomial:
    """Rewrite a monomial with rules ``head -> tail`` (head > tail) until irreducible.

    Toric binomials are homogeneous, so every chain of rewrites stays inside a
    finite degree slice and terminates; ``max_steps`` only guards against
    malformed input.
    """
    for _ in range(max_steps):
        for head, tail in rules:
            if _divides(head, m):
                m = tuple(x - h + t for x, h, t in zip(m, head, tail))
                break
        else:
            return m
    raise RuntimeError("monomial reduction did not terminate")


def s_binomial(f: Tuple[Monomial, Monomial], g: Tuple[Monomial, Monomial]
               ) -> Tuple[Monomial, Monomial]:
    """S-binomial of two oriented binomials, as an unoriented monomial pair."""
    (a, b), (c, d) = f, g
    m = _lcm(a, c)
    return (tuple(x - y + z for x, y, z in zip(m, a, b)),
            tuple(x - y + z for x, y, z in zip(m, c, d)))


@dataclass
class PairRecord:
    i: int
    j: int
    disposition: str  # "coprime", "reduces-to-zero" or "nonzero-remainder"
    remainder: Optional[Tuple[Monomial, Monomial]] = None


@dataclass
class VerifyReport:
    verified: bool
    pairs: List[PairRecord] = field(default_factory=list)
    leading_terms: List[Monomial] = field(default_factory=list)


def buchberger_verify(basis: Sequence[Binomial], order: TermOrder) -> VerifyReport:
    """Buchberger's S-pair criterion for a set of binomials."""
    if not basis:
        raise ValueError("empty basis")
    rules = [_orient(b.lplus, b.lminus, order) for b in basis]
    report = VerifyReport(True, leading_terms=[h for h, _ in rules])
    for i, j in combinations(range(len(rules)), 2):
        a, c = rules[i][0], rules[j][0]
        if not any(x and y for x, y in zip(a, c)):
            report.pairs.append(PairRecord(i, j, "coprime"))
            continue
        u, v = s_binomial(rules[i], rules[j])
        nu, nv = normal_form(u, rules, order), normal_form(v, rules, order)
        if nu == nv:
            report.pairs.append(PairRecord(i, j, "reduces-to-zero"))
        else:
            report.pairs.append(PairRecord(i, j, "nonzero-remainder", _orient(nu, nv, order)))
            report.verified = False
    return report


def _reduce_pair(u, v, rules, order):
    nu, nv = normal_form(u, rules, order), normal_form(v, rules, order)
    if nu == nv:
        return None
    return _orient(nu, nv, order)


def buchberger_complete(generators: Sequence[Binomial], order: TermOrder,
                        degree_cap: Optional[int] = None) -> List[Binomial]:
    """Reduced Gröbner basis of the ideal generated by toric binomials.

    Raises ``DegreeCapExceeded`` if an intermediate binomial exceeds
    ``degree_cap`` (default: four times the largest generator degree).
    """
    if not generators:
        raise ValueError("no generators")
    if degree_cap is None:
        degree_cap = 4 * max(g.degree for g in generators)
    rules: List[Tuple[Monomial, Monomial]] = []
    for g in generators:
        r = _reduce_pair(g.lplus, g.lminus, rules, order)
        if r is not None:
            rules.append(r)
    pairs = list(combinations(range(len(rules)), 2))
    while pairs:
        i, j = pairs.pop(0)
        a, c = rules[i][0], rules[j][0]
        if not any(x and y for x, y in zip(a, c)):
            continue
        u, v = s_binomial(rules[i], rules[j])
        if max(sum(u), sum(v)) > degree_cap:
            raise DegreeCapExceeded(f"S-binomial of degree {max(sum(u), sum(v))} > cap {degree_cap}")
        r = _reduce_pair(u, v, rules, order)
        if r is None:
            continue
        if sum(r[0]) > degree_cap:
            raise DegreeCapExceeded(f"new basis element of degree {sum(r[0])} > cap {degree_cap}")
        rules.append(r)
        pairs.extend((k, len(rules) - 1) for k in range(len(rules) - 1))
    return _reduced_basis(rules, order)


def _reduced_basis(rules, order) -> List[Binomial]:
    rules = sorted(rules, key=lambda r: order.key(r[0]))
    minimal = []
    for h, t in rules:
        if not any(_divides(h2, h) for h2, _ in minimal):
            minimal = [(h2, t2) for h2, t2 in minimal if not _divides(h, h2)]
            minimal.append((h, t))
    out = []
    for k, (h, t) in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        t = normal_form(t, others + [(h, t)], order)
        if any(x and y for x, y in zip(h, t)):
            raise ValueError("generators do not span a saturated binomial ideal; "
                             "basis element with common factor")
        out.append(Binomial(h, t))
    return sorted(out, key=lambda b: order.key(b.lplus))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal with a minimal generating set (sorted)."""

    generators: Tuple[Monomial, ...]

    def __post_init__(self):
        gens = sorted(set(tuple(g) for g in self.generators))
        minimal = [g for g in gens
                   if not any(h != g and _divides(h, g) for h in gens)]
        object.__setattr__(self, "generators", tuple(minimal))

    def contains(self, m: Monomial) -> bool:
        return any(_divides(g, m) for g in self.generators)


def stanley_reisner(T: Triangulation, p: int) -> MonomialIdeal:
    """Squarefree monomials of the minimal non-faces of ``T`` over variables 0..p."""
    gens = []
    for nf in minimal_nonfaces(T.faces(), range(p + 1)):
        gens.append(tuple(int(i in nf) for i in range(p + 1)))
    return MonomialIdeal(tuple(gens))


def candidate_groebner_basis(fan: Fan) -> List[Binomial]:
    """Binomials of the primitive relations.

    Requires property (*) and a large Kähler cone.
    """
    if not property_star(fan).holds:
        raise PreconditionError("fan does not have property (*)")
    if not kahler_cone(fan).is_large:
        raise PreconditionError("Kähler cone is not large")
    return [binomial_from_relation(r.l) for r in primitive_relations(fan)]


def check_lt_equals_sr(fan: Fan, omega: Sequence) -> bool:
    if not in_secondary_cone(fan, omega, strict=True):
        raise PreconditionError("weight vector is not strictly inside the Kähler cone")
    order = TermOrder(tuple(omega))
    basis = candidate_groebner_basis(fan)
    rep = buchberger_verify(basis, order)
    if not rep.verified:
        raise RuntimeError("candidate basis failed the S-pair criterion")
    lt = MonomialIdeal(tuple(rep.leading_terms))
    sr = stanley_reisner(maximal_triangulation(fan), fan.p)
    return lt == sr


def falling_factorial(x, k: int):
    out = Fraction(1)
    for j in range(k):
        out *= x - j
    return out


def indicial_value(l: Sequence[int], gamma: Sequence) -> Fraction:
    """``prod_mu gamma_mu (gamma_mu - 1) ... (gamma_mu - l+_mu + 1)``."""
    out = Fraction(1)
    for li, g in zip(l, gamma):
        if li > 0:
            out *= falling_factorial(Fraction(g), li)
    return out


def canonical_exponent(p: int) -> Tuple[Fraction, ...]:
    return (Fraction(-1),) + (Fraction(0),) * p


@dataclass
class IndexReport:
    cones_independent: bool
    apex_exponent_forced: bool
    relations_vanish: bool
    dual_generators_positive: bool
    failing_relations: List[IntVector] = field(default_factory=list)
    dual_generators: List[IntVector] = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return (self.cones_independent and self.apex_exponent_forced
                and self.relations_vanish and self.dual_generators_positive)


def unique_index_certificate(fan: Fan) -> IndexReport:
    """Certify that ``(-1, 0, ..., 0)`` is the only index at the Kähler cone.

    (a) the rays of every maximal cone are independent, so the linear Euler
        relations meet the Stanley–Reisner locus only in gamma_1..p = 0;
    (b) the apex coordinate is then forced to -1;
    (c) every primitive relation's indicial polynomial vanishes at the lift;
    (d) every generator of the dual of the Kähler cone has a positive entry
        away from the apex.
    """
    config = point_config(fan)
    p = fan.p
    a = all(rank([fan.rays[i] for i in c]) == len(c) for c in fan.max_cones)
    # with gamma_1..p = 0 the Euler system reads gamma_0 * apex = beta
    beta = (-1,) + (0,) * fan.dim
    apex = config.points[0]
    forced = [Fraction(b, x) for b, x in zip(beta, apex) if x != 0]
    b = (not any(x == 0 and b_ != 0 for b_, x in zip(beta, apex))
         and len(set(forced)) == 1 and forced[0] == -1)
    gamma = canonical_exponent(p)
    failing = [r.l for r in primitive_relations(fan) if indicial_value(r.l, gamma) != 0]
    K = kahler_cone(fan, config)
    dual_gens = [config.from_lattice_coords(g) for g in dual_cone(K.cone).generators]
    d = all(any(x > 0 for x in g[1:]) for g in dual_gens)
    return IndexReport(a, b, not failing, d, failing, dual_gens)


def chow_ring_dimension(fan: Fan) -> int:
    """Rank of the total Chow ring of a smooth complete toric variety: the
    number of maximal cones."""
    return len(fan.max_cones)
