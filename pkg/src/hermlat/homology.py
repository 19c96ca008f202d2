"""Integer linear algebra for torsion counting: Smith normal form and friends."""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .bigbound import BigBound
from .errors import BoundaryError, DomainError


@dataclass(frozen=True)
class IntMatrix:
    """Integer matrix with an explicit shape, so 0 x n and n x 0 maps are representable."""

    rows: int
    cols: int
    entries: tuple

    @classmethod
    def of(cls, M, rows=None, cols=None):
        if isinstance(M, IntMatrix):
            return M
        M = [[int(v) for v in r] for r in M]
        r = len(M) if rows is None else rows
        c = (len(M[0]) if M else 0) if cols is None else cols
        if len(M) != r or any(len(row) != c for row in M):
            raise DomainError("ragged or mis-shaped integer matrix")
        return cls(r, c, tuple(tuple(row) for row in M))

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def tolist(self):
        return [list(r) for r in self.entries]

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DomainError("shape mismatch")
        out = [
            [sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix(self.rows, other.cols, tuple(tuple(r) for r in out))

    def is_zero(self):
        return all(v == 0 for r in self.entries for v in r)


@dataclass(frozen=True)
class ElementaryDivisors:
    divisors: tuple     # nonzero diagonal entries d1 | d2 | ... (ones included)
    free_rank: int      # rank of the cokernel's free part

    @property
    def torsion(self):
        return tuple(d for d in self.divisors if d > 1)


@dataclass(frozen=True)
class SmithForm:
    U: list
    D: list
    V: list
    U_inv: list
    V_inv: list
    divisors: ElementaryDivisors


def _eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(M):
    """U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... .

    Pivoting takes the smallest nonzero entry of the remaining block.
    """
    M = IntMatrix.of(M)
    m, n = M.rows, M.cols
    A = M.tolist()
    U, Ui = _eye(m), _eye(m)
    V, Vi = _eye(n), _eye(n)

    def row_add(dst, src, q):       # row dst += q * row src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        for r in Ui:                # inverse: column src -= q * column dst
            r[src] -= q * r[dst]

    def col_add(dst, src, q):       # col dst += q * col src
        for r in A:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_neg(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for r in Ui:
            r[i] = -r[i]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        while True:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # divisibility of the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                    None,
                )
                if bad is None:
                    break
                row_add(t, bad[0], 1)
                dirty = True
            # re-pivot on the smallest entry in row/column t
            cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, pi, pj = min(cand)
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
        if A[t][t] < 0:
            row_neg(t)
        t += 1
    diag = [A[i][i] for i in range(min(m, n)) if A[i][i]]
    rank = len(diag)
    return SmithForm(U, A, V, Ui, Vi, ElementaryDivisors(tuple(diag), m - rank))


def elementary_divisors(M):
    return smith_normal_form(M).divisors


def cokernel_torsion(M):
    """|Q_tors| for Q = Z^rows / (column span of M)."""
    out = 1
    for d in smith_normal_form(M).divisors.divisors:
        out *= d
    return out


@dataclass(frozen=True)
class GabberReport:
    alpha_sq: int          # max squared Euclidean column norm (clamped at 1)
    exponent: int          # min(a, b)
    bound: BigBound        # alpha^min(a, b)
    torsion: int
    holds: bool


def gabber_bound(M):
    """Gabber's bound alpha^min(a, b) on the cokernel torsion of M (columns are phi(e_i)).

    alpha is kept as sqrt of an integer; it is clamped at 1 since the torsion
    order is at least 1 (matters only for the zero map).
    """
    M = IntMatrix.of(M)
    a, b = M.cols, M.rows
    alpha_sq = max([sum(v * v for v in M.column(j)) for j in range(a)] + [1])
    bound = BigBound.power(alpha_sq, Fraction(min(a, b), 2))
    tors = cokernel_torsion(M)
    return GabberReport(alpha_sq, min(a, b), bound, tors, bound >= tors)


def _lcm(a, b):
    return a * b // gcd(a, b)


def card_ell(divisors, ell):
    """Order of A / B, B generated by elements of order <= ell, A = sum Z/d_i.

    Per cyclic factor Z/d, B meets it in the subgroup of order
    lcm{k : k | d, k <= ell}.
    """
    if isinstance(divisors, ElementaryDivisors):
        divisors = divisors.torsion
    if ell < 1:
        raise DomainError("ell must be >= 1")
    out = 1
    for d in divisors:
        d = int(d)
        if d < 1:
            raise DomainError("cyclic orders must be positive")
        b = 1
        for k in range(1, min(d, ell) + 1):
            if d % k == 0:
                b = _lcm(b, k)
        out *= d // b
    return out


class ChainComplex:
    """Free chain complex given by boundary matrices.

    ``boundaries[k - 1]`` is d_k : C_k -> C_{k-1}, shaped dim C_{k-1} x dim C_k.
    """

    def __init__(self, boundaries, check=True):
        self.boundaries = [IntMatrix.of(b) for b in boundaries]
        for k in range(1, len(self.boundaries)):
            lo, hi = self.boundaries[k - 1], self.boundaries[k]
            if lo.cols != hi.rows:
                raise BoundaryError(f"shape mismatch between d_{k} and d_{k + 1}")
            if check and not (lo @ hi).is_zero():
                raise BoundaryError(f"d_{k} o d_{k + 1} != 0")
        self.ranks = [self.boundaries[0].rows if self.boundaries else 0] + [b.cols for b in self.boundaries]

    @property
    def top(self):
        return len(self.ranks) - 1

    def boundary(self, k):
        """d_k, with zero maps outside the stored range."""
        if 1 <= k <= len(self.boundaries):
            return self.boundaries[k - 1]
        rows = self.ranks[k - 1] if 0 <= k - 1 <= self.top else 0
        cols = self.ranks[k] if 0 <= k <= self.top else 0
        return IntMatrix.zero(rows, cols)


def homology_torsion(cx, k):
    """Torsion order of H_k = ker d_k / im d_{k+1}, via SNF on a kernel basis."""
    if not 0 <= k <= cx.top:
        return 1
    dk = cx.boundary(k)
    dk1 = cx.boundary(k + 1)
    n = cx.ranks[k]
    if dk.rows == 0 or dk.is_zero():
        X = dk1
    else:
        snf = smith_normal_form(dk)
        r = len(snf.divisors.divisors)
        # kernel basis: columns r.. of V. Image in those coordinates: rows r.. of V^-1 d_{k+1}
        Y = IntMatrix.of(snf.V_inv, n, n) @ dk1
        if any(Y.entries[i][j] for i in range(r) for j in range(Y.cols)):
            raise BoundaryError("image of d_{k+1} is not inside ker d_k")
        X = IntMatrix(n - r, dk1.cols, Y.entries[r:])
    return cokernel_torsion(X)


def complex_torsion_bound(alphas, beta):
    """Per-degree bound beta^(min(alpha_{k+1}, alpha_k)/2) on H_k torsion."""
    beta = Fraction(beta)
    if beta < 1:
        raise DomainError("beta must be >= 1")
    if any(a < 0 for a in alphas):
        raise DomainError("face counts must be nonnegative")
    alphas = list(alphas) + [0]
    return [BigBound.power(beta, Fraction(min(alphas[k + 1], alphas[k]), 2)) for k in range(len(alphas) - 1)]


def max_column_norm_sq(M):
    M = IntMatrix.of(M)
    return max([sum(v * v for v in M.column(j)) for j in range(M.cols)] + [0])


def isqrt_ceil(n):
    r = isqrt(n)
    return r if r * r == n else r + 1
