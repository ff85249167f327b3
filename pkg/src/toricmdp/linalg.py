"""Exact integer and rational linear algebra.

Matrices are plain lists of rows of Python ints (or ``Fraction`` where noted).
Nothing in here touches floating point.
"""

from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

IntVector = Tuple[int, ...]
IntMatrix = List[List[int]]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return [[int(x) for x in row] for row in rows]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence], ncols: Optional[int] = None) -> list:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(M: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in M]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1


def primitive(v: Sequence) -> IntVector:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = content(ints)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hermite_normal_form(M: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``H == U @ M``. Pivots of
    ``H`` are positive, entries above a pivot lie in ``[0, pivot)`` and zero
    rows sit at the bottom.
    """
    H = as_matrix(M)
    m = len(H)
    n = len(H[0]) if m else 0
    U = identity(m)
    r = 0
    for j in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if H[i][j] == 0:
                continue
            a, b = H[r][j], H[i][j]
            g, s, t = _xgcd(a, b)
            p, q = a // g, b // g
            # [[s, t], [-q, p]] has determinant 1
            for X in (H, U):
                row_r, row_i = X[r], X[i]
                X[r] = [s * x + t * y for x, y in zip(row_r, row_i)]
                X[i] = [-q * x + p * y for x, y in zip(row_r, row_i)]
        if H[r][j] == 0:
            continue
        if H[r][j] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][j]
        for i in range(r):
            f = H[i][j] // piv
            if f:
                H[i] = [x - f * y for x, y in zip(H[i], H[r])]
                U[i] = [x - f * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def rank(M: Sequence[Sequence]) -> int:
    return len(_row_reduce([[Fraction(x) for x in row] for row in M])[1])


def _row_reduce(A):
    """Reduced row echelon form over Q, in place; returns (A, pivot_columns)."""
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for j in range(n):
        p = next((i for i in range(r, m) if A[i][j] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][j]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][j] != 0:
                f = A[i][j]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(j)
        r += 1
        if r == m:
            break
    return A, pivots


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Integer determinant by Bareiss fraction-free elimination."""
    A = as_matrix(M)
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def inverse(M: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    A, pivots = _row_reduce(A)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in A]


def independent_rows(M: Sequence[Sequence]) -> List[int]:
    """Indices of a greedy maximal linearly independent subset of rows."""
    chosen: List[int] = []
    basis: list = []
    for i, row in enumerate(M):
        trial = basis + [[Fraction(x) for x in row]]
        if rank(trial) == len(trial):
            basis = trial
            chosen.append(i)
    return chosen


def integer_kernel_basis(M: Sequence[Sequence[int]], ncols: Optional[int] = None
                         ) -> List[IntVector]:
    """Z-basis of ``{v : M v = 0}``, canonicalised as the nonzero rows of an HNF."""
    M = as_matrix(M)
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [tuple(row) for row in identity(ncols)]
    H, U = hermite_normal_form(transpose(M))
    r = sum(1 for row in H if any(row))
    kernel = [row for row in U[r:]]
    if not kernel:
        return []
    K, _ = hermite_normal_form(kernel)
    return [tuple(row) for row in K if any(row)]


def is_unimodular_extension(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the vectors extend to a Z-basis of the ambient lattice.

    Equivalently every Smith invariant factor of the matrix they form is 1.
    Linearly dependent input gives False.
    """
    V = as_matrix(vectors)
    if not V:
        return True
    k = len(V)
    if rank(V) < k:
        return False
    H, _ = hermite_normal_form(transpose(V))
    # H = [R; 0] with R upper triangular k x k; invariants of V are those of R
    d = 1
    for i in range(k):
        d *= H[i][i]
    return abs(d) == 1


def solve_rational(A: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """Some rational solution x of ``A x = b``, or None if inconsistent."""
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    aug, pivots = _row_reduce(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, j in enumerate(pivots):
        x[j] = aug[r][n]
    return x


def express_in_basis(basis: Sequence[Sequence[int]], target: Sequence
                     ) -> Optional[List[Fraction]]:
    """Coefficients c with ``sum(c[i] * basis[i]) == target``, or None off-span."""
    if not basis:
        return [] if not any(target) else None
    return solve_rational(transpose(basis), target)
