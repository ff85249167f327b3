import cmath
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from toricmdp.catalog import hirzebruch, projective_space
from toricmdp.fan import point_config, property_star
from toricmdp.groebner import canonical_exponent, indicial_value
from toricmdp.series import (
    FormalSeries,
    InvalidTau,
    QuadratureError,
    TruncationSpec,
    box_apply,
    compositions,
    coordinates_x,
    euler_residual,
    evaluate_a,
    evaluate_x,
    gkz_system,
    local_series,
    numeric_period,
    torus_cycle_series,
    verify_annihilation,
    verify_max_degeneracy,
)

F1_BASIS = [(-1, 1, -1, 1, 0), (-2, 0, 1, 0, 1)]
F1_TAU = [(1, 2), (-1, -1)]


def test_box_apply_single_term():
    s = FormalSeries((-1, 0, 0), {(0, 0, 0): 1}, TruncationSpec(((-2, 1, 1),), 0))
    out = box_apply((-2, 1, 1), s)
    assert out.terms == {(-2, 0, 0): -2}
    zero = FormalSeries((-1, 0, 0), {}, s.truncation)
    assert box_apply((-2, 1, 1), zero).terms == {}


def test_p1_central_binomials(p1):
    (l,) = point_config(p1).relation_basis
    basis = [l if l[0] < 0 else tuple(-x for x in l)]
    s = local_series(p1, basis, 10)
    assert [s.by_monoid_degree()[(m,)] for m in range(11)] == \
        [comb(2 * m, m) for m in range(11)]


def test_quintic_coefficients(p4):
    s = local_series(p4, [(-5, 1, 1, 1, 1, 1)], 3)
    got = [s.by_monoid_degree()[(m,)] for m in range(4)]
    assert got == [factorial(5 * m) // factorial(m) ** 5 for m in range(4)]
    assert got == [1, 120, 113400, 168168000]


def test_f1_coefficients(f1):
    s = local_series(f1, F1_BASIS, 6).by_monoid_degree()
    assert [s[m] for m in [(0, 1), (1, 1), (1, 2), (2, 2)]] == [2, 6, 60, 90]


def test_local_series_matches_torus_series(f1):
    # two independent expansions of the same period, compared in a-coordinates
    local = local_series(f1, F1_BASIS, 8).in_a_coordinates()
    torus = torus_cycle_series(point_config(f1), 8)
    common = [l for l in local.terms if torus.truncation.contains(l)]
    assert len(common) >= 10
    for l in common:
        assert local.coefficient(l) == torus.coefficient(l)
    for l in torus.terms:
        if local.truncation.contains(l):
            assert local.coefficient(l) == torus.coefficient(l)


def test_annihilation_f1_and_quintic(f1, p4):
    system = gkz_system(point_config(f1))
    rep = verify_annihilation(system, local_series(f1, F1_BASIS, 6), F1_BASIS)
    assert rep.passed and rep.interior_terms > 0
    system = gkz_system(point_config(p4))
    rep = verify_annihilation(system, torus_cycle_series(point_config(p4), 15),
                              [(-5, 1, 1, 1, 1, 1)])
    assert rep.passed and rep.interior_terms > 0


def test_annihilation_detects_a_wrong_coefficient(f1):
    s = local_series(f1, F1_BASIS, 6)
    s.terms[(-3, 1, 0, 1, 1)] += 1
    rep = verify_annihilation(gkz_system(point_config(f1)), s, F1_BASIS)
    assert not rep.passed and rep.failures


@pytest.mark.parametrize("make", [lambda: projective_space(2), lambda: hirzebruch(0),
                                  lambda: hirzebruch(1), lambda: projective_space(3)])
def test_euler_residual_zero(make):
    fan = make()
    config = point_config(fan)
    system = gkz_system(config)
    assert not any(euler_residual(system, torus_cycle_series(config, 6)))
    rep = verify_max_degeneracy(fan, None, 5)
    assert rep.certified
    assert not any(euler_residual(system, rep.series))
    for c in rep.series.in_x_coordinates().terms.values():
        assert c.denominator == 1 and c > 0


def test_ragged_gamma_gives_euler_residual():
    config = point_config(projective_space(1))
    s = FormalSeries((0, 0, 0), {(0, 0, 0): 1}, TruncationSpec(config.relation_basis, 0))
    assert any(euler_residual(gkz_system(config), s))


def test_p1_period_closed_form(p1):
    config = point_config(p1)
    a = (1, 0.1, 0.1)
    exact = 1 / cmath.sqrt(1 - 4 * 0.01)
    assert abs(numeric_period(config, a, 256) - exact) < 1e-10
    s = local_series(p1, [(-2, 1, 1)], 10)
    x = coordinates_x(config, [(-2, 1, 1)], a)
    assert abs(evaluate_x(s, x) - exact) < 1e-10
    assert abs(evaluate_a(s, a) - exact) < 1e-10


def test_f1_quadrature_matches_series(f1):
    config = point_config(f1)
    a = (1, 0.05, 0.05, 0.05, 0.05)
    s = local_series(f1, F1_BASIS, 10)
    x = coordinates_x(config, F1_BASIS, a)
    assert abs(numeric_period(config, a, 64) - evaluate_x(s, x)) < 1e-8


def test_quadrature_guards(p1):
    config = point_config(p1)
    with pytest.raises(QuadratureError):
        numeric_period(config, (1, 0.6, 0.6), 32)


def test_quadrature_is_deterministic(f1):
    config = point_config(f1)
    a = (1, 0.05, 0.05, 0.05, 0.05)
    assert numeric_period(config, a, 32) == numeric_period(config, a, 32)


def test_invalid_tau(f1, f3):
    with pytest.raises(InvalidTau):
        verify_max_degeneracy(f1, [(1, 0), (0, 1), (1, 1)], 3)
    with pytest.raises(InvalidTau, match="not regular"):
        verify_max_degeneracy(f1, [(-1, -1), (1, 3)], 3)
    with pytest.raises(InvalidTau, match="not in the Kähler cone"):
        verify_max_degeneracy(f1, [(2, 1), (1, 1)], 3)


def test_mdp_f1_certified(f1):
    rep = verify_max_degeneracy(f1, F1_TAU, 6)
    assert rep.certified
    assert rep.tau_dual_basis == F1_BASIS


def test_mdp_f3_not_certified(f3):
    rep = verify_max_degeneracy(f3, None, 3)
    assert rep.tau_valid and not rep.hypotheses and not rep.certified


def test_compositions():
    assert sorted(compositions(2, 2)) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=2, max_size=2))
def test_indicial_vanishes_on_f1_monoid(m):
    l = tuple(m[0] * a + m[1] * b for a, b in zip(*F1_BASIS))
    if any(m):
        assert indicial_value(l, canonical_exponent(4)) == 0
