"""Explicit constants of the torsion bound and the inequality chains between them.

Everything is a :class:`~hermlat.bigbound.BigBound`; comparisons are exact
in the log domain. Formulas below are stated with ``d`` the degree, ``D``
the absolute discriminant, ``N`` the lattice rank and ``n`` the K-group index.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .bigbound import BigBound, interval_endpoints, interval_width
from .errors import DomainError


@dataclass(frozen=True)
class FieldParams:
    d: int
    r1: int
    r2: int
    abs_disc: int

    def __post_init__(self):
        if self.d < 1 or self.r1 < 0 or self.r2 < 0 or self.r1 + 2 * self.r2 != self.d:
            raise DomainError(f"inconsistent signature ({self.r1}, {self.r2}) for degree {self.d}")
        if self.abs_disc < 1:
            raise DomainError("|D_F| must be >= 1")

    @classmethod
    def of_field(cls, F):
        return cls(F.degree, F.r1, F.r2, F.abs_disc)

    @classmethod
    def synthetic(cls, d, abs_disc):
        """Parameters for grid checks where only d and |D_F| matter."""
        return cls(d, d, 0, abs_disc)


@dataclass(frozen=True)
class KParams:
    n: int
    N: int
    ell: int
    t: int          # floor(log2 N) + 1


def k_params(fp, n):
    if n < 2:
        raise DomainError("n must be >= 2")
    N = 2 * n + 1
    return KParams(n, N, max(fp.d + 1, 2 * n + 2), N.bit_length())


def _require_nonrational(fp, what):
    if fp.d < 2:
        raise DomainError(f"{what} needs F != Q (degree >= 2)")


# -- basic constants ---------------------------------------------------------

def c1(fp):
    return BigBound.sqrt(fp.abs_disc)


def c2(fp, strict=False):
    """d/2 |D|^(1/d). With ``strict`` the F = Q case (where C2 < 1) is rejected."""
    if strict:
        _require_nonrational(fp, "C2 >= 1")
    return BigBound.power(Fraction(fp.d, 2)) * BigBound.power(fp.abs_disc, Fraction(1, fp.d))


def c3(fp):
    return BigBound.sqrt(fp.d) * BigBound.power(fp.abs_disc, Fraction(1, fp.d))


def dim_x(fp, N):
    """(exact dimension of the symmetric space, the d N(N+1)/2 upper bound)."""
    if N < 1:
        raise DomainError("N must be >= 1")
    exact = fp.r1 * N * (N + 1) // 2 + fp.r2 * N * N
    return exact, fp.d * N * (N + 1) // 2


def e_dn(d, n):
    if d < 1 or n < 1:
        raise DomainError("need d >= 1 and n >= 1")
    return d * (2 * n * n + 3 * n + 1) - n - 1


def alpha_k(card_phi, d, N, k):
    """card(Phi)^(d N(N+1)/2 - k), the k-cell count bound."""
    e = d * N * (N + 1) // 2 - k
    if k < 0 or e < 0:
        raise DomainError(f"k = {k} outside 0..{d * N * (N + 1) // 2}")
    return BigBound.coerce(card_phi) ** e


def alpha_k_binomial(card_phi, d, N, k):
    """The sharper c^m / m! relaxation of binomial(c, m), m = d N(N+1)/2 - k."""
    m = d * N * (N + 1) // 2 - k
    if k < 0 or m < 0:
        raise DomainError(f"k = {k} outside 0..{d * N * (N + 1) // 2}")
    return BigBound.coerce(card_phi) ** m / factorial(m)


def beta(card_phi, N):
    return BigBound.coerce(card_phi) ** (N + 1)


# -- bounded bases --------------------------------------------------------------

def general_basis_bound(fp, N):
    """lambda (1 + C2)^(t+1) k^((d+1)(4N-1)) with k = C1 C3^d, lambda = N C2, t = floor(log2 N) + 1.

    No degree restriction: the formula is evaluated as written even for F = Q.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    t = N.bit_length()
    C2 = c2(fp)
    k = c1(fp) * c3(fp) ** fp.d
    lam = C2 * N
    return lam * (BigBound.one() + C2) ** (t + 1) * k ** ((fp.d + 1) * (4 * N - 1))


def simplified_basis_bound(fp, N):
    """B = 4N^2/2^N d^(5Nd^2) |D|^(6N(d+1)), stated for N >= 5 and d >= 2."""
    _require_nonrational(fp, "the simplified basis bound")
    if N < 5:
        raise DomainError("the simplified basis bound needs N >= 5")
    d, D = fp.d, fp.abs_disc
    return BigBound.power(Fraction(4 * N * N, 2**N)) * BigBound.power(d, 5 * N * d * d) * BigBound.power(D, 6 * N * (d + 1))


def basis_bound(fp, N):
    """(general, simplified or None). Rejects F = Q."""
    _require_nonrational(fp, "basis_bound")
    general = general_basis_bound(fp, N)
    simplified = simplified_basis_bound(fp, N) if N >= 5 else None
    return general, simplified


# -- coefficient bound and Phi ---------------------------------------------------

def coeff_bound_T(fp, N, B):
    """N^(Nd) d^(3Nd/2 + 1) B^(2(Nd-1)) |D|^(2N)."""
    d = fp.d
    return (
        BigBound.power(N, N * d)
        * BigBound.power(d, Fraction(3 * N * d, 2) + 1)
        * BigBound.coerce(B) ** (2 * (N * d - 1))
        * BigBound.power(fp.abs_disc, 2 * N)
    )


def icaza_gamma(fp, N):
    return BigBound.power(N, fp.d) * BigBound.power(fp.abs_disc)


def per_coordinate_count_bound(d, T):
    """T^(d/2) 2^(d+3): elements of O_F with sum |sigma(x)|^2 <= T."""
    return BigBound.coerce(T) ** Fraction(d, 2) * BigBound.power(2, d + 3)


def phi_card_bound(fp, N):
    """(expanded, closed) bounds on card(Phi).

    expanded = T^(Nd/2) 2^(N(d+3)) with T built from the basis bound (the
    simplified B when N >= 5, the general one otherwise); closed is
    N^(3N^2d^2) d^(5N^3d^4) |D|^(9N^3d^3), only for N >= 5.
    """
    _require_nonrational(fp, "phi_card_bound")
    if N < 1:
        raise DomainError("N must be >= 1")
    d, D = fp.d, fp.abs_disc
    general, simplified = basis_bound(fp, N)
    B = simplified if simplified is not None else general
    T = coeff_bound_T(fp, N, B)
    expanded = T ** Fraction(N * d, 2) * BigBound.power(2, N * (d + 3))
    closed = None
    if N >= 5:
        closed = BigBound.power(N, 3 * N * N * d * d) * BigBound.power(d, 5 * N**3 * d**4) * BigBound.power(D, 9 * N**3 * d**3)
    return expanded, closed


def theorem_bound(fp, n):
    d = fp.d
    return (
        BigBound.power(2 * n + 1, 71 * n**4 * d**3)
        * BigBound.power(d, 293 * n**5 * d**5)
        * BigBound.power(fp.abs_disc, 528 * n**5 * d**4)
    )


# -- the assembled bound -----------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class KBoundReport:
    fp: FieldParams
    kp: KParams
    C1: BigBound
    C2: BigBound
    C3: BigBound
    B_general: BigBound
    B_simplified: BigBound
    T: BigBound
    card_phi_expanded: BigBound
    card_phi_closed: BigBound
    alpha: list
    beta: BigBound
    e: int
    assembled: BigBound
    theorem: BigBound
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)


def k_bound(fp, n):
    """Assemble (n+1) log(c) c^e(d,n) for c = card(Phi) bound, next to the closed form.

    Both are upper bounds on log card_ell K_n(O_F)_tors.
    """
    _require_nonrational(fp, "k_bound")
    kp = k_params(fp, n)
    N, d = kp.N, fp.d
    general, simplified = basis_bound(fp, N)
    T = coeff_bound_T(fp, N, simplified)
    expanded, closed = phi_card_bound(fp, N)
    e = e_dn(d, n)
    assembled = BigBound.power(n + 1) * BigBound.log(expanded) * expanded ** e
    theorem = theorem_bound(fp, n)
    top = d * N * (N + 1) // 2
    alphas = [alpha_k(expanded, d, N, k) for k in range(top + 1)]
    b = beta(expanded, N)

    checks = []

    def add(name, ok, detail=""):
        checks.append(Check(name, bool(ok), detail))

    # half alpha_{n+1} log beta is the same quantity, written the long way
    literal = alphas[n + 1] * BigBound.log(b) / 2
    add("literal form: (n+1) log c c^e == alpha_{n+1} log(beta) / 2", _close(literal, assembled))
    add("exponent: e(d,n) + n + 1 <= 15/4 n^2 d", Fraction(e + n + 1) <= Fraction(15, 4) * n * n * d,
        f"{e + n + 1} <= {Fraction(15, 4) * n * n * d}")
    add("rank: 2n + 1 <= 5/2 n", Fraction(N) <= Fraction(5, 2) * n, f"{N} <= {Fraction(5, 2) * n}")
    add("basis: general <= simplified", general <= simplified)
    add("phi: expanded <= closed", expanded <= closed)
    add("assembled <= c^(e+n+1)", assembled <= expanded ** (e + n + 1))
    add("c^(e+n+1) <= closed^(15/4 n^2 d)", expanded ** (e + n + 1) <= closed ** (Fraction(15, 4) * n * n * d))
    add("assembled <= theorem", assembled <= theorem)
    rel = _relative_width(theorem)
    add("theorem log interval width < 1e-6 relative", rel < Fraction(1, 10**6), f"{float(rel):.3g}")

    return KBoundReport(
        fp, kp, c1(fp), c2(fp), c3(fp), general, simplified, T, expanded, closed, alphas, b, e, assembled, theorem, checks
    )


def _close(a, b):
    """Log intervals overlap at high precision (used for identities that differ syntactically)."""
    la, lb = a.log_interval(512), b.log_interval(512)
    return not (la.b < lb.a or lb.b < la.a)


def _relative_width(bound):
    lo, hi = interval_endpoints(bound.log_interval())
    if lo <= 0:
        return Fraction(1)
    w = interval_width(bound.log_interval())
    return Fraction(str(float(w / lo))) if w else Fraction(0)


# -- grid verification --------------------------------------------------------------

ASSEMBLY_DISCS = (3, 4, 8, 49, 10**6)


def exponent_checks(max_d=50, max_n=50):
    """The two reduction inequalities, with equality exactly when n = 2."""
    bad = []
    for d in range(2, max_d + 1):
        for n in range(2, max_n + 1):
            lhs, rhs = Fraction(e_dn(d, n) + n + 1), Fraction(15, 4) * n * n * d
            if lhs > rhs or (lhs == rhs) != (n == 2):
                bad.append(("exponent", d, n))
            lhs, rhs = Fraction(2 * n + 1), Fraction(5, 2) * n
            if lhs > rhs or (lhs == rhs) != (n == 2):
                bad.append(("rank", d, n))
    return bad


def basis_grid(ds=range(2, 5), Ns=range(5, 10), discs=range(3, 101)):
    """Points where the general basis bound exceeds the simplified one (should be none)."""
    bad = []
    for d in ds:
        for N in Ns:
            for D in discs:
                general, simplified = basis_bound(FieldParams.synthetic(d, D), N)
                if not general <= simplified:
                    bad.append((d, N, D))
    return bad


def assembly_grid(ds=range(2, 6), ns=range(2, 5), discs=ASSEMBLY_DISCS):
    """Run k_bound on the grid; returns {(d, n, D): report}."""
    return {(d, n, D): k_bound(FieldParams.synthetic(d, D), n) for d in ds for n in ns for D in discs}


def anchor_closed_log10():
    """log10 of the closed card(Phi) form at (d, N, |D|) = (2, 5, 4), as an interval."""
    _, closed = phi_card_bound(FieldParams.synthetic(2, 4), 5)
    return closed.log10_interval()


def verify_all_grids(quick=False):
    """Run every grid check; returns a list of Check."""
    checks = []
    bad = exponent_checks()
    checks.append(Check("exponent/rank inequalities on 2<=d,n<=50 (equality iff n=2)", not bad, f"{len(bad)} failures"))
    grid = basis_grid(discs=range(3, 101, 13) if quick else range(3, 101))
    checks.append(Check("general basis bound <= simplified B on {2..4}x{5..9}x{3..100}", not grid, f"{len(grid)} failures"))
    reports = assembly_grid()
    failed = [k for k, r in reports.items() if not r.passed]
    checks.append(Check("k_bound chain on {2..5}x{2..4}x{3,4,8,49,1e6}", not failed, f"{len(failed)} failing points"))
    from mpmath import log10, mpf, workprec
    lo, hi = interval_endpoints(anchor_closed_log10())
    with workprec(256):
        ref = 300 * log10(5) + 10000 * log10(2) + 9000 * log10(4)
        ok = lo - mpf(2) ** -100 <= ref <= hi + mpf(2) ** -100
    checks.append(Check("anchor log10 closed card(Phi) at (2,5,4)", ok, f"[{lo}, {hi}]"))
    return checks
