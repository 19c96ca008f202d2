"""Hermitian lattices (O_F^N, h) over a totally real or CM field.

A vector is a tuple of N FieldElements. Its integer coordinates are laid
out vector-major: entry j contributes coordinates ``j*d .. j*d + d - 1`` in
the integral basis, which is the indexing of ``q_gram``.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, product

from . import linalg
from .bigbound import BigBound
from .bounds import FieldParams, coeff_bound_T, general_basis_bound, per_coordinate_count_bound, simplified_basis_bound
from .config import settings
from .enumeration import Enumerator
from .errors import BudgetExceeded, ConjugationUnavailable, DomainError, NonUnimodular, NotPositiveDefinite
from .field_core import CLASS_NUMBER_ONE, FieldElement, FractionalIdeal, conjugate, norm_abs, parse_element, trace
from .ideal_lattice import IdealLattice, scaling_multiplier, shortest_vector


# -- linear algebra over F ----------------------------------------------------

def _echelon(rows):
    """Row-reduce a matrix of FieldElements; returns (reduced rows, pivot columns, sign of det)."""
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if A else 0
    pivots, r, sign = [], 0, 1
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        if p != r:
            A[r], A[p] = A[p], A[r]
            sign = -sign
        inv = A[r][c].inverse()
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots, sign


def field_rank(rows):
    if not rows:
        return 0
    return len(_echelon(rows)[1])


def field_det(M):
    n = len(M)
    if n == 0:
        raise DomainError("empty matrix")
    F = M[0][0].field
    A, pivots, sign = _echelon(M)
    if len(pivots) < n:
        return F.zero()
    out = F.one() * sign
    for i in range(n):
        out = out * A[i][i]
    return out


def field_inverse(M):
    n = len(M)
    F = M[0][0].field
    aug = [list(M[i]) + [F.one() if i == j else F.zero() for j in range(n)] for i in range(n)]
    A, pivots, _ = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix over F")
    out = []
    for i in range(n):
        inv = A[i][i].inverse()
        out.append([a * inv for a in A[i][n:]])
    return out


def field_solve(M, b):
    """x with M x = b over F (M square, nonsingular)."""
    inv = field_inverse(M)
    return [sum((inv[i][j] * b[j] for j in range(len(b))), M[0][0].field.zero()) for i in range(len(b))]


# -- the lattice ----------------------------------------------------------------

def _as_vector(F, x, N):
    if len(x) == N * F.degree and all(not isinstance(v, (list, tuple, FieldElement)) for v in x) and N * F.degree != N:
        d = F.degree
        return tuple(F([Fraction(v) for v in x[j * d:(j + 1) * d]]) for j in range(N))
    if len(x) != N:
        raise DomainError(f"vector needs {N} entries")
    return tuple(parse_element(F, v) for v in x)


def _flat(x):
    return [c for e in x for c in e.coords]


class HermitianLattice:
    """(O_F^N, h) with h given by its matrix: h(x, y) = sum_jl x_j H[j][l] conj(y_l)."""

    def __init__(self, field, herm_gram, check=True):
        if not field.has_conjugation:
            raise ConjugationUnavailable(f"{field!r} is not closed under complex conjugation")
        self.field = field
        H = [[parse_element(field, v) for v in row] for row in herm_gram]
        N = len(H)
        if N < 1 or any(len(r) != N for r in H):
            raise DomainError("Hermitian Gram must be a nonempty square matrix")
        for j in range(N):
            for l in range(j, N):
                if H[l][j] != conjugate(H[j][l]):
                    raise DomainError(f"entry ({l},{j}) is not the conjugate of ({j},{l})")
        self.herm_gram = H
        self.rank = N
        d = field.degree
        basis = field.basis()
        cbasis = [conjugate(a) for a in basis]
        Q = [[Fraction(0)] * (N * d) for _ in range(N * d)]
        for j in range(N):
            for l in range(N):
                for i in range(d):
                    ah = basis[i] * H[j][l]
                    for k in range(d):
                        Q[j * d + i][l * d + k] = trace(ah * cbasis[k])
        self.q_gram = Q
        if check and not linalg.is_positive_definite(Q):
            raise NotPositiveDefinite("h is not positive definite at every embedding")
        self._enum = None

    @property
    def dim(self):
        return self.rank * self.field.degree

    @property
    def enumerator(self):
        if self._enum is None:
            self._enum = Enumerator(self.q_gram)
        return self._enum

    def vector(self, x):
        return _as_vector(self.field, x, self.rank)

    def from_flat(self, flat):
        d = self.field.degree
        return tuple(self.field(list(flat[j * d:(j + 1) * d])) for j in range(self.rank))

    def __repr__(self):
        return f"HermitianLattice({self.field!r}, N={self.rank})"


def hermitian_lattice(field, herm_gram):
    return HermitianLattice(field, herm_gram)


def qh_value(L, x):
    """q_h(x) = Tr h(x, x), exact."""
    return linalg.quad(L.q_gram, _flat(L.vector(x)))


def h_value(L, x, y):
    x, y = L.vector(x), L.vector(y)
    F = L.field
    out = F.zero()
    for j in range(L.rank):
        for l in range(L.rank):
            out = out + x[j] * L.herm_gram[j][l] * conjugate(y[l])
    return out


@dataclass(frozen=True)
class MinimalVectorSet:
    minimum: Fraction
    vectors: tuple          # tuples of N FieldElements, both signs
    flat: tuple             # the same vectors as integer coordinate tuples

    @property
    def count(self):
        return len(self.vectors)

    @property
    def count_mod_sign(self):
        return len(self.vectors) // 2


def minimal_vectors(L):
    m, vecs = L.enumerator.shortest()
    flat = tuple(tuple(v) for v in vecs)
    return MinimalVectorSet(m, tuple(L.from_flat(v) for v in flat), flat)


@dataclass(frozen=True)
class WellRoundedness:
    holds: bool
    witness: tuple = ()     # N minimal vectors spanning V when holds
    reason: str = ""

    def __bool__(self):
        return self.holds


def _spanning_subset(vectors):
    chosen = []
    for v in vectors:
        if field_rank(chosen + [list(v)]) > len(chosen):
            chosen.append(list(v))
    return [tuple(v) for v in chosen]


def is_well_rounded(L):
    M = minimal_vectors(L)
    if M.minimum != 1:
        return WellRoundedness(False, (), f"minimum is {M.minimum}, not 1")
    span = _spanning_subset(M.vectors)
    if len(span) < L.rank:
        return WellRoundedness(False, tuple(span), f"minimal vectors span rank {len(span)} < {L.rank}")
    return WellRoundedness(True, tuple(span), "")


def normalize_minimum(L):
    m = minimal_vectors(L).minimum
    if m == 1:
        return L
    s = 1 / m
    return HermitianLattice(L.field, [[e * s for e in row] for row in L.herm_gram])


# -- the GL_N(O_F) action --------------------------------------------------------

class UnimodularMatrix:
    """N x N matrix over O_F with a unit determinant; the inverse is kept."""

    def __init__(self, field, rows):
        self.field = field
        A = [[parse_element(field, v) for v in r] for r in rows]
        N = len(A)
        if N < 1 or any(len(r) != N for r in A):
            raise NonUnimodular("matrix must be square and nonempty")
        if not all(e.is_integral() for r in A for e in r):
            raise NonUnimodular("entries are not all in O_F")
        det = field_det(A)
        if not det or not det.is_integral() or norm_abs(det) != 1:
            raise NonUnimodular(f"determinant {det!r} is not a unit of O_F")
        inv = field_inverse(A)
        if not all(e.is_integral() for r in inv for e in r):
            raise NonUnimodular("inverse is not integral")
        self.rows = A
        self.inverse = inv
        self.det = det
        self.size = N

    @classmethod
    def identity(cls, field, N):
        return cls(field, [[field.one() if i == j else field.zero() for j in range(N)] for i in range(N)])

    def apply(self, x):
        F = self.field
        return tuple(sum((self.rows[j][l] * x[l] for l in range(self.size)), F.zero()) for j in range(self.size))

    def __matmul__(self, other):
        F, N = self.field, self.size
        return UnimodularMatrix(F, [
            [sum((self.rows[i][k] * other.rows[k][j] for k in range(N)), F.zero()) for j in range(N)]
            for i in range(N)
        ])


def gamma_action(gamma, L):
    """gamma . h with (gamma . h)(x, y) = h(gamma^-1 x, gamma^-1 y)."""
    if not isinstance(gamma, UnimodularMatrix):
        gamma = UnimodularMatrix(L.field, gamma)
    if gamma.size != L.rank:
        raise NonUnimodular(f"gamma is {gamma.size}x{gamma.size}, lattice has rank {L.rank}")
    F, N, G, H = L.field, L.rank, gamma.inverse, L.herm_gram
    cG = [[conjugate(e) for e in r] for r in G]
    new = [
        [
            sum((G[j][a] * H[j][l] * cG[l][b] for j in range(N) for l in range(N)), F.zero())
            for b in range(N)
        ]
        for a in range(N)
    ]
    return HermitianLattice(F, new)


# -- bounded bases ----------------------------------------------------------------

def _require_pid(F):
    if F.name not in CLASS_NUMBER_ONE:
        raise DomainError(f"{F!r} is not in the class-number-one whitelist {sorted(CLASS_NUMBER_ONE)}")


@dataclass(frozen=True)
class RankOneGenerator:
    element: FieldElement     # f = c * e with c = a * alpha
    alpha: FieldElement       # x = alpha e with small index |L / O_F x|
    multiplier: FieldElement  # a from the scaling step
    index: Fraction           # |L / O_F f|
    norm2: Fraction           # ||f||_h^2
    index_ok: bool            # index <= C1 C3^d
    norm_ok: bool             # ||f||_h <= C3 C1^(1/d)


def rank_one_generator(field, h11, ideal=None):
    """A generator-sized f in L = b e, following the rank-one step of the bounded-basis argument.

    ``h11 = h(e, e)`` must satisfy Tr(h11) <= 1 and ``ideal`` (default O_F)
    must contain 1 so that e lies in L.
    """
    _require_pid(field)
    h11 = parse_element(field, h11)
    if conjugate(h11) != h11:
        raise DomainError("h(e, e) must be fixed by conjugation")
    q_e = trace(h11)
    if not 0 < q_e <= 1:
        raise DomainError(f"need 0 < ||e||_h^2 <= 1, got {q_e}")
    b = ideal if ideal is not None else FractionalIdeal.unit(field)
    if not b.contains(field.one()):
        raise DomainError("e must lie in L (the coefficient ideal must contain 1)")
    lat = IdealLattice(field, b)
    alpha = lat.ideal_element(shortest_vector(lat).coords)
    a = scaling_multiplier(alpha).element
    c = a * alpha
    index = norm_abs(c) / b.norm
    norm2 = trace(c * conjugate(c) * h11)
    d, D = field.degree, field.abs_disc
    # index <= C1 C3^d  <=>  index^2 <= d^d |D|^3 ; ||f||^2 <= C3^2 C1^(2/d)  <=>  norm2^d <= d^d |D|^3
    cap = Fraction(d) ** d * D**3
    return RankOneGenerator(c, alpha, a, index, norm2, index**2 <= cap, norm2**d <= cap)


@dataclass(frozen=True)
class BoundedBasis:
    basis: tuple                  # N vectors
    max_norm: Fraction            # max q_h over the basis, i.e. max ||e_i||_h^2
    certificate: BigBound         # general bound on ||e_i||_h
    simplified: BigBound = None   # simplified B when N >= 5 and d >= 2
    holds: bool = False           # max ||e_i||_h <= certificate (and <= simplified when present)
    radius: Fraction = None       # q_h radius at which the search succeeded
    candidates: int = 0


def _minors(rows, k):
    N = len(rows[0])
    for cols in combinations(range(N), k):
        yield field_det([[r[c] for c in cols] for r in rows])


def _extendable(F, rows):
    """True if the vectors span a direct summand of O_F^N, i.e. their maximal minors generate O_F."""
    gens = [m for m in _minors(rows, len(rows)) if m]
    if not gens:
        return False
    return FractionalIdeal.from_generators(F, gens) == FractionalIdeal.unit(F)


def _find_basis(F, N, vectors, budget):
    """Depth-first search for N of ``vectors`` forming an O_F-basis; ``vectors`` sorted by norm."""
    nodes = [0]

    def extend(start, chosen):
        if len(chosen) == N:
            return list(chosen)
        for i in range(start, len(vectors)):
            nodes[0] += 1
            if nodes[0] > budget:
                raise BudgetExceeded(f"basis search exceeded {budget} nodes")
            cand = chosen + [list(vectors[i])]
            if _extendable(F, cand):
                found = extend(i + 1, cand)
                if found:
                    return found
        return None

    return extend(0, [])


def bounded_basis(L, budget=None):
    """An O_F-basis of a well-rounded L with every ||e_i||_h under the explicit bound.

    The search radius on q_h starts at the minimum and doubles until the
    vectors below it contain a basis; the bound is then checked on the output.
    """
    F, N = L.field, L.rank
    _require_pid(F)
    wr = is_well_rounded(L)
    if not wr:
        raise DomainError(f"lattice is not well-rounded: {wr.reason}")
    budget = budget if budget is not None else settings().node_budget
    fp = FieldParams.of_field(F)
    general = general_basis_bound(fp, N)
    simplified = simplified_basis_bound(fp, N) if N >= 5 and F.degree >= 2 else None
    radius = Fraction(1)
    while True:
        vecs = L.enumerator.short_vectors(radius)
        # one of each +-x (the lexicographically larger); sparse vectors first at equal norm
        kept = [(v, x) for x, v in vecs if tuple(-c for c in x) < x]
        kept.sort(key=lambda t: (t[0], sum(1 for c in t[1] if c), tuple(-c for c in t[1])))
        reps = [L.from_flat(x) for _, x in kept]
        found = _find_basis(F, N, reps, budget)
        if found is not None:
            break
        if BigBound.power(radius) > general**2:
            raise BudgetExceeded(
                f"no basis among {len(reps)} vectors with q_h <= {radius}, past the bound {general.describe()}"
            )
        radius *= 2
    basis = tuple(tuple(v) for v in found)
    UnimodularMatrix(F, [list(v) for v in basis])   # exact re-check, raises on failure
    max_norm = max(qh_value(L, v) for v in basis)
    length = BigBound.sqrt(max_norm)
    holds = length <= general and (simplified is None or length <= simplified)
    return BoundedBasis(basis, max_norm, general, simplified, holds, radius, len(reps))


# -- coefficient bound and Phi ----------------------------------------------------------

@dataclass
class CoefficientReport:
    T: BigBound
    records: list = dc_field(default_factory=list)      # (vector index, coordinate index, sum |sigma(x_i)|^2)
    violations: list = dc_field(default_factory=list)
    max_ratio: BigBound = None                          # max observed value / T

    @property
    def passed(self):
        return not self.violations


def coefficient_bound_check(L, basis, vectors=None):
    """Expand each minimal vector in ``basis`` and compare its coordinates' embedding sums with T.

    T is built from B^2 = the basis' actual max q_h value.
    """
    F, N = L.field, L.rank
    basis_vecs = basis.basis if isinstance(basis, BoundedBasis) else tuple(L.vector(v) for v in basis)
    max_norm = basis.max_norm if isinstance(basis, BoundedBasis) else max(qh_value(L, v) for v in basis_vecs)
    T = coeff_bound_T(FieldParams.of_field(F), N, BigBound.sqrt(max_norm))
    if vectors is None:
        vectors = minimal_vectors(L).vectors
    # x = sum_i c_i e_i  <=>  A c = x with A[j][i] = e_i[j]
    A = [[basis_vecs[i][j] for i in range(N)] for j in range(N)]
    inv = field_inverse(A)
    report = CoefficientReport(T)
    best = None
    for vi, x in enumerate(vectors):
        coeffs = [sum((inv[i][j] * x[j] for j in range(N)), F.zero()) for i in range(N)]
        for ci, c in enumerate(coeffs):
            if not c.is_integral():
                report.violations.append((vi, ci, "coordinate not in O_F"))
                continue
            s = trace(c * conjugate(c))
            report.records.append((vi, ci, s))
            if s == 0:
                continue
            if not BigBound.power(s) <= T:
                report.violations.append((vi, ci, s))
            if best is None or s > best:
                best = s
    if best is not None:
        report.max_ratio = BigBound.power(best) / T
    return report


@dataclass(frozen=True)
class PhiSet:
    per_coordinate: tuple        # elements y of O_F with Tr(y conj y) <= T
    vectors: tuple               # all sums sum x_i f_i
    coordinate_bound: BigBound   # T^(d/2) 2^(d+3)
    coordinate_ok: bool
    total_ok: bool

    @property
    def count(self):
        return len(self.vectors)


PHI_CAP = 10**6


def phi_enumerate(field, N, basis=None, cap_T=1, max_vectors=PHI_CAP):
    """Phi = { sum x_i f_i : x_i in O_F, sum_sigma |sigma(x_i)|^2 <= cap_T }, for desk-scale T only."""
    if not field.has_conjugation:
        raise ConjugationUnavailable(f"{field!r} is not closed under complex conjugation")
    cap_T = Fraction(cap_T)
    if cap_T <= 0:
        raise DomainError("cap_T must be positive")
    if N < 1:
        raise DomainError("N must be >= 1")
    if basis is None:
        basis = [tuple(field.one() if i == j else field.zero() for j in range(N)) for i in range(N)]
    else:
        basis = [_as_vector(field, v, N) for v in basis]
        if len(basis) != N:
            raise DomainError(f"need {N} basis vectors")
    gram = IdealLattice(field).gram
    S = [field(list(x)) for x, _ in Enumerator(gram).short_vectors(cap_T, include_zero=True)]
    total = len(S) ** N
    if total > max_vectors:
        raise BudgetExceeded(f"Phi has {total} elements, above the cap {max_vectors}")
    out = []
    for combo in product(S, repeat=N):
        out.append(tuple(
            sum((combo[i] * basis[i][j] for i in range(N)), field.zero()) for j in range(N)
        ))
    bound = per_coordinate_count_bound(field.degree, cap_T)
    ok = BigBound.power(len(S)) <= bound
    return PhiSet(tuple(S), tuple(out), bound, ok, BigBound.power(total) <= bound**N)
