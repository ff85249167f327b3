from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from toricmdp.linalg import (
    determinant,
    express_in_basis,
    hermite_normal_form,
    integer_kernel_basis,
    inverse,
    is_unimodular_extension,
    matmul,
    matvec,
    primitive,
    rank,
    solve_rational,
)

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_hnf_small_example():
    H, U = hermite_normal_form([[2, 4], [1, 3]])
    assert H == [[1, 1], [0, 2]]
    assert matmul(U, [[2, 4], [1, 3]]) == H
    assert abs(determinant(U)) == 1


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_hnf_shape_and_transform(M):
    H, U = hermite_normal_form(M)
    assert matmul(U, M) == H
    assert abs(determinant(U)) == 1
    last_pivot = -1
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            assert all(not any(r) for r in H[i:])
            break
        j = nz[0]
        assert j > last_pivot and row[j] > 0
        assert all(0 <= H[k][j] < row[j] for k in range(i))
        last_pivot = j


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_and_determinant_match_sympy(M):
    assert rank(M) == sympy.Matrix(M).rank()
    if len(M) == len(M[0]):
        assert determinant(M) == sympy.Matrix(M).det()


def test_quintic_and_p1_kernels():
    quintic = [[1] * 6, [0, 1, 0, 0, 0, -1], [0, 0, 1, 0, 0, -1],
               [0, 0, 0, 1, 0, -1], [0, 0, 0, 0, 1, -1]]
    (k,) = integer_kernel_basis(quintic)
    assert k in ((5, -1, -1, -1, -1, -1), (-5, 1, 1, 1, 1, 1))
    (k,) = integer_kernel_basis([[1, 1, 1], [0, 1, -1]])
    assert k in ((2, -1, -1), (-2, 1, 1))


def _brute_kernel(M, bound):
    n = len(M[0])
    return [v for v in product(range(-bound, bound + 1), repeat=n)
            if any(v) and not any(matvec(M, v))]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=3))
def test_kernel_basis_against_enumeration(M):
    basis = integer_kernel_basis(M)
    assert len(basis) == 4 - sympy.Matrix(M).rank()
    for b in basis:
        assert not any(matvec(M, b))
    # saturation: every small kernel vector is an integer combination
    for v in _brute_kernel(M, 2):
        c = express_in_basis(basis, v)
        assert c is not None and all(x.denominator == 1 for x in c)


def test_unimodular_extension():
    assert not is_unimodular_extension([(2, 0)])
    assert is_unimodular_extension([(1, 0), (1, 1)])
    assert is_unimodular_extension([(1, 2, 3)])
    assert not is_unimodular_extension([(1, 1, 0), (1, -1, 0)])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_and_solve(M):
    if determinant(M) == 0:
        return
    inv = inverse(M)
    assert matmul(M, inv) == [[int(i == j) for j in range(3)] for i in range(3)]
    x = solve_rational(M, [1, 2, 3])
    assert matvec(M, x) == [1, 2, 3]


def test_primitive():
    assert primitive([Fraction(2, 3), Fraction(-4, 3)]) == (1, -2)
    assert primitive([0, 6, 9]) == (0, 2, 3)
