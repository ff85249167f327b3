"""Fan files and the ``toricmdp`` command line.

Fan file grammar (one statement per line, ``#`` starts a comment line)::

    name <free text>          optional
    dim <n>
    ray <n integers>          one per ray; order fixes 0-based ray indices
    cone <n ray indices>      one per maximal cone

Exit status: 0 certified / true, 1 falsified, 2 invalid input.
"""

import argparse
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .fan import (
    Fan,
    FanError,
    cross_check_T0,
    in_secondary_cone,
    interior_weight,
    kahler_cone,
    maximal_triangulation,
    point_config,
    primitive_relations,
    property_star,
    validate,
)
from .groebner import (
    PreconditionError,
    TermOrder,
    buchberger_complete,
    buchberger_verify,
    candidate_groebner_basis,
    chow_ring_dimension,
    format_monomial,
    stanley_reisner,
    unique_index_certificate,
    MonomialIdeal,
)
from .report import Report, render_json, render_text
from .series import (
    InvalidTau,
    QuadratureError,
    coordinates_x,
    default_tau,
    evaluate_x,
    numeric_period,
    verify_max_degeneracy,
)

EXIT_OK, EXIT_FALSE, EXIT_INVALID = 0, 1, 2


class FanFileError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


@dataclass
class FanFile:
    dim: int
    rays: List[Tuple[int, ...]]
    cones: List[Tuple[int, ...]]
    name: Optional[str] = None

    def to_fan(self) -> Fan:
        return Fan(self.dim, tuple(self.rays), tuple(self.cones), self.name)


def _ints(tokens, lineno):
    out = []
    for col, tok in tokens:
        try:
            out.append(int(tok))
        except ValueError:
            raise FanFileError(f"expected an integer, got {tok!r}", lineno, col)
    return out


def parse_fan_file(text: str) -> FanFile:
    dim = None
    name = None
    rays: List[Tuple[int, ...]] = []
    cones: List[Tuple[Tuple[int, ...], int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        (col, key), rest = tokens[0], tokens[1:]
        if key == "name":
            name = stripped[len("name"):].strip()
        elif key == "dim":
            if dim is not None:
                raise FanFileError("duplicate dim statement", lineno, col)
            vals = _ints(rest, lineno)
            if len(vals) != 1 or vals[0] < 1:
                raise FanFileError("dim takes one positive integer", lineno, col)
            dim = vals[0]
        elif key in ("ray", "cone"):
            if dim is None:
                raise FanFileError(f"{key} before dim", lineno, col)
            vals = _ints(rest, lineno)
            if len(vals) != dim:
                raise FanFileError(f"dimension mismatch: {key} has {len(vals)} entries, "
                                   f"expected {dim}", lineno, col)
            if key == "ray":
                rays.append(tuple(vals))
            else:
                cones.append((tuple(vals), lineno))
        else:
            raise FanFileError(f"unknown statement {key!r}", lineno, col)
    if dim is None:
        raise FanFileError("missing dim")
    for cone, lineno in cones:
        for i in cone:
            if not 0 <= i < len(rays):
                raise FanFileError(f"ray index {i} out of range (have {len(rays)} rays)", lineno, 1)
    return FanFile(dim, rays, [c for c, _ in cones], name)


def render_fan_file(fan: Fan) -> str:
    lines = []
    if fan.name:
        lines.append(f"name {fan.name}")
    lines.append(f"dim {fan.dim}")
    lines += ["ray " + " ".join(map(str, r)) for r in fan.rays]
    lines += ["cone " + " ".join(map(str, c)) for c in fan.max_cones]
    return "\n".join(lines) + "\n"


def _parse_rational_list(text: str) -> List[Fraction]:
    return [Fraction(x.strip()) for x in text.split(",") if x.strip()]


def _parse_tau(text: str) -> List[Tuple[int, ...]]:
    return [tuple(int(x) for x in g.split(",")) for g in text.split(";") if g.strip()]


def _relations_section(rep: Report, fan: Fan):
    config = point_config(fan)
    rels = primitive_relations(fan)
    rep.add("primitive-relations", True,
            relation_basis=config.relation_basis,
            primitive_collections=[r.collection for r in rels],
            primitive_relations=[{"collection": r.collection, "generators": r.generators,
                                  "c0": r.c0, "c": [list(x) for x in r.c], "l": r.l}
                                 for r in rels])


def _star_section(rep: Report, fan: Fan):
    s = property_star(fan)
    rep.add("star", s.holds, s.positive_relations + [[i] for i in s.interior_rays],
            relations_criterion=s.relations_criterion, hull_criterion=s.hull_criterion,
            positive_relations=s.positive_relations, interior_rays=s.interior_rays)
    return s


def _kahler_section(rep: Report, fan: Fan):
    K = kahler_cone(fan)
    rep.add("kahler", K.is_large, generators=K.cone.generators,
            relation_cone=K.relation_cone.generators, rank=K.rank,
            is_large=K.is_large, is_regular=K.is_regular)
    return K


def _index_section(rep: Report, fan: Fan):
    ix = unique_index_certificate(fan)
    rep.add("index", ix.passes, ix.failing_relations,
            cones_independent=ix.cones_independent,
            apex_exponent_forced=ix.apex_exponent_forced,
            relations_vanish=ix.relations_vanish,
            dual_generators_positive=ix.dual_generators_positive,
            dual_generators=ix.dual_generators,
            chow_ring_dimension=chow_ring_dimension(fan))
    return ix


def _series_section(rep: Report, mdp):
    s = mdp.series.in_x_coordinates()
    coeffs = sorted((list(m), c) for m, c in s.by_monoid_degree().items())
    ann = mdp.annihilation
    rep.add("series", ann.passed,
            [{"operator": list(l), "terms": len(t)} for l, t in ann.failures.items()],
            tau_generators=mdp.tau_generators, tau_dual_basis=mdp.tau_dual_basis,
            order=s.truncation.max_total_degree,
            coefficients=[{"m": m, "coefficient": c} for m, c in coeffs],
            interior_residual_terms=ann.interior_terms,
            boundary_residual_terms=sum(len(t) for t in ann.boundary_terms.values()))


def cmd_validate(fan, args, rep):
    v = validate(fan)
    rep.add("validate", v.ok, [v.witness] if v.witness else [],
            regular=v.regular, complete=v.complete, reason=v.reason)
    return EXIT_OK if v.ok else EXIT_FALSE


def cmd_relations(fan, args, rep):
    _relations_section(rep, fan)
    return EXIT_OK


def cmd_star(fan, args, rep):
    return EXIT_OK if _star_section(rep, fan).holds else EXIT_FALSE


def cmd_kahler(fan, args, rep):
    return EXIT_OK if _kahler_section(rep, fan).is_large else EXIT_FALSE


def cmd_groebner(fan, args, rep):
    omega = _parse_rational_list(args.omega) if args.omega else interior_weight(fan)
    if len(omega) != fan.p + 1:
        raise ValueError(f"--omega needs {fan.p + 1} entries")
    order = TermOrder(tuple(omega))
    basis = candidate_groebner_basis(fan)
    ver = buchberger_verify(basis, order)
    sr = stanley_reisner(maximal_triangulation(fan), fan.p)
    lt = MonomialIdeal(tuple(ver.leading_terms))
    strict = in_secondary_cone(fan, omega, strict=True)
    data = dict(omega=omega, strictly_inside=strict,
                candidate_basis=[str(b) for b in basis],
                pairs=[{"i": p.i, "j": p.j, "disposition": p.disposition} for p in ver.pairs],
                leading_terms=[format_monomial(m) for m in lt.generators],
                stanley_reisner=[format_monomial(m) for m in sr.generators],
                lt_equals_sr=ver.verified and lt == sr)
    if strict:
        data["lower_hull_equals_T0"] = cross_check_T0(fan, omega)
    else:
        gb = buchberger_complete(basis, order)
        data["completed_basis"] = [str(b) for b in gb]
        data["completed_leading_terms"] = [format_monomial(b.lplus) for b in gb]
    ok = ver.verified and lt == sr
    rep.add("groebner", ok, [p.remainder for p in ver.pairs if p.remainder], **data)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_index(fan, args, rep):
    return EXIT_OK if _index_section(rep, fan).passes else EXIT_FALSE


def _tau(args):
    return _parse_tau(args.tau) if args.tau else None


def cmd_series(fan, args, rep):
    mdp = verify_max_degeneracy(fan, _tau(args), args.order)
    if mdp.series is None:
        rep.add("series", False, notes=mdp.notes)
        return EXIT_FALSE
    _series_section(rep, mdp)
    return EXIT_OK if mdp.annihilation.passed else EXIT_FALSE


def cmd_certify(fan, args, rep):
    _star_section(rep, fan)
    _kahler_section(rep, fan)
    mdp = verify_max_degeneracy(fan, _tau(args), args.order)
    if mdp.index is not None:
        _index_section(rep, fan)
    if mdp.series is not None:
        _series_section(rep, mdp)
    rep.add("mdp", mdp.certified, hypotheses=mdp.hypotheses, tau_valid=mdp.tau_valid,
            uniqueness=mdp.uniqueness, existence=mdp.existence,
            tau_generators=mdp.tau_generators, notes=mdp.notes)
    return EXIT_OK if mdp.certified else EXIT_FALSE


def cmd_oracle(fan, args, rep):
    config = point_config(fan)
    a = [complex(x.strip().replace(" ", "")) for x in args.a.split(",")]
    if len(a) != fan.p + 1:
        raise ValueError(f"--a needs {fan.p + 1} entries")
    value = numeric_period(config, a, args.grid)
    data = dict(a=a, grid=args.grid, period=value)
    try:
        mdp = verify_max_degeneracy(fan, _tau(args), args.order)
    except InvalidTau:
        mdp = None
    if mdp is not None and mdp.series is not None:
        x = coordinates_x(config, mdp.tau_dual_basis, a)
        sv = evaluate_x(mdp.series, x)
        data.update(x=x, order=args.order, series_value=sv, difference=abs(sv - value))
    rep.add("oracle", True, **data)
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "relations": cmd_relations,
    "star": cmd_star,
    "kahler": cmd_kahler,
    "groebner": cmd_groebner,
    "index": cmd_index,
    "series": cmd_series,
    "certify-mdp": cmd_certify,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricmdp", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("file")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out")
        return p

    add("validate", "check regularity and completeness")
    add("relations", "relation lattice, primitive collections and relations")
    add("star", "property (*) by both criteria")
    add("kahler", "Kähler cone in the secondary fan")
    add("groebner", "verify the primitive-relation Gröbner basis").add_argument("--omega")
    add("index", "unique-index certificate")
    for name, help in (("series", "local period series"),
                       ("certify-mdp", "full maximal degeneracy certificate")):
        p = add(name, help)
        p.add_argument("--order", type=int, required=True)
        p.add_argument("--tau")
    p = add("oracle", "numeric period integral on the unit torus")
    p.add_argument("--a", required=True)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--tau")
    return parser


def _threads() -> int:
    raw = os.environ.get("TORICMDP_THREADS")
    if raw is None:
        return 1
    n = int(raw)
    if n < 1:
        raise ValueError("TORICMDP_THREADS must be a positive integer")
    return n


def run(argv: Sequence[str]) -> Tuple[int, Report]:
    """Run one command; returns the exit status and the report."""
    parser = build_parser()
    args = parser.parse_args(list(argv))
    rep = Report(args.command)
    try:
        _threads()
        with open(args.file) as fh:
            fan = parse_fan_file(fh.read()).to_fan()
        if args.command != "validate":
            v = validate(fan)
            if not v.ok:
                raise FanError(f"fan is not complete and regular: {v.reason}")
        code = COMMANDS[args.command](fan, args, rep)
    except (OSError, ValueError, InvalidTau, QuadratureError, PreconditionError) as exc:
        rep.add("error", False, message=str(exc), kind=type(exc).__name__)
        code = EXIT_INVALID
    rep._format, rep._out = args.format, args.out
    return code, rep


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, rep = run(sys.argv[1:] if argv is None else argv)
    text = render_json(rep) if rep._format == "json" else render_text(rep)
    if rep._out:
        with open(rep._out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code
