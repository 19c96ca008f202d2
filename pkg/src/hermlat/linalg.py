"""Exact linear algebra over Q and Z on plain nested lists.

Entries are ``int`` or ``fractions.Fraction``; nothing here ever touches a
float. Matrices are lists of rows.
"""

from fractions import Fraction
from math import gcd

from .errors import NotPositiveDefinite


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(r) for r in zip(*M)]


def matmul(A, B):
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def quad(G, x):
    """x^T G x."""
    n = len(x)
    total = 0
    for i in range(n):
        xi = x[i]
        if xi:
            total += xi * sum(G[i][j] * x[j] for j in range(n))
    return total


def bilinear(G, x, y):
    return sum(x[i] * sum(G[i][j] * y[j] for j in range(len(y))) for i in range(len(x)))


def _to_fraction_rows(M):
    return [[Fraction(v) for v in row] for row in M]


def det(M):
    """Determinant by fraction-free Gaussian elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = _to_fraction_rows(M)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        p = A[c][c]
        result *= p
        for r in range(c + 1, n):
            f = A[r][c] / p
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    result *= sign
    return int(result) if result.denominator == 1 else result


def rref(M):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    A = _to_fraction_rows(M)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [v / p for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M):
    if not M:
        return 0
    return len(rref(M)[1])


def inverse(M):
    n = len(M)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def solve(M, b):
    """Solve M x = b for square nonsingular M."""
    n = len(M)
    aug = [list(row) + [b[i]] for i, row in enumerate(M)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) > n:
        raise ZeroDivisionError("singular matrix")
    return [R[i][n] for i in range(n)]


def ldl(G):
    """Decompose a symmetric matrix as U^T diag(D) U with U unit upper triangular.

    Returns ``(D, U)`` so that x^T G x = sum_i D[i] * (x_i + sum_{j>i} U[i][j] x_j)^2.
    Raises NotPositiveDefinite if some pivot is <= 0.
    """
    n = len(G)
    D = [Fraction(0)] * n
    U = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for i in range(n):
        d = Fraction(G[i][i]) - sum(D[k] * U[k][i] ** 2 for k in range(i))
        if d <= 0:
            raise NotPositiveDefinite(f"leading pivot {i} is {d}")
        D[i] = d
        for j in range(i + 1, n):
            U[i][j] = (Fraction(G[i][j]) - sum(D[k] * U[k][i] * U[k][j] for k in range(i))) / d
    return D, U


def is_positive_definite(G):
    try:
        ldl(G)
    except NotPositiveDefinite:
        return False
    return True


def is_symmetric(G):
    n = len(G)
    return all(G[i][j] == G[j][i] for i in range(n) for j in range(i + 1, n))


def common_denominator(values):
    den = 1
    for v in values:
        d = Fraction(v).denominator
        den = den * d // gcd(den, d)
    return den


def hnf_rows(M):
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows of H where H = U M for unimodular U, H upper
    echelon with positive pivots and entries above each pivot reduced into
    [0, pivot).
    """
    A = [[int(v) for v in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    r = 0
    for c in range(cols):
        # gcd-reduce column c among rows r..end
        while True:
            nz = [i for i in range(r, rows) if A[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[piv] = A[piv], A[r]
            done = True
            for i in range(r + 1, rows):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if r < rows and A[r][c] != 0:
            if A[r][c] < 0:
                A[r] = [-v for v in A[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
            if r == rows:
                break
    return [row for row in A if any(row)]


def rational_hnf_rows(M):
    """HNF for a rational matrix: clear the common denominator, reduce, rescale."""
    den = common_denominator(v for row in M for v in row)
    H = hnf_rows([[int(Fraction(v) * den) for v in row] for row in M])
    return [[Fraction(v, den) for v in row] for row in H]
