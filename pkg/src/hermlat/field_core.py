"""Exact arithmetic in a number field given by a monic polynomial and an integral basis.

Elements are stored as rational coordinates in the integral basis. Every
identity that matters (traces, norms, discriminants, Gram entries) is
computed in ``Fraction``; complex embeddings use mpmath with an explicit
error radius attached.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from pathlib import Path

import mpmath
import yaml

from . import linalg
from .config import settings
from .errors import (
    ConjugationUnavailable,
    DomainError,
    InvalidFieldError,
    PrecisionUnreachable,
)

MAX_ROOT_PRECISION = 8192

# name -> (min_poly constant-first, integral basis in power coordinates)
PRESETS = {
    "rationals": ([-1, 1], [[1]]),
    "gaussian": ([1, 0, 1], [[1, 0], [0, 1]]),
    "eisenstein": ([1, -1, 1], [[1, 0], [0, 1]]),
    "real_quad_2": ([-2, 0, 1], [[1, 0], [0, 1]]),
    "real_quad_5": ([-1, -1, 1], [[1, 0], [0, 1]]),
    "cyclotomic_5": ([1, 1, 1, 1, 1], [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
}

CLASS_NUMBER_ONE = frozenset({"rationals", "gaussian", "eisenstein", "real_quad_2", "real_quad_5", "cyclotomic_5"})


# -- polynomial helpers (coefficient lists, constant term first) -------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _polymul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polymod(a, m):
    """Remainder of a modulo m (m need not be monic)."""
    a = [Fraction(v) for v in _trim(a)]
    m = _trim(m)
    lead = Fraction(m[-1])
    while len(a) >= len(m):
        q = a[-1] / lead
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] -= q * c
        a = _trim(a)
    return a


def _polygcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _polymod(a, b)
    return a


def _derivative(p):
    return [i * c for i, c in enumerate(p)][1:]


def _polyeval_mp(p, z):
    acc = mpmath.mpf(0)
    for c in reversed(p):
        acc = acc * z + c
    return acc


@dataclass(frozen=True)
class _EmbeddingTable:
    prec: int
    roots: tuple           # generator images, ordered real first, then (z, conj z) pairs
    root_radius: tuple
    basis_values: tuple    # basis_values[s][i] = sigma_s(a_i)
    basis_radius: tuple    # per embedding, bound on the error of every basis value


class NumberField:
    """A number field F = Q[x]/(f) together with a chosen integral basis.

    Use :func:`make_field` or :func:`preset`; the constructor does the same
    validation but takes the already-parsed inputs.
    """

    def __init__(self, min_poly, integral_basis, precision=None, name=None):
        min_poly = [int(c) for c in min_poly]
        if any(Fraction(c) != int(c) for c in min_poly):
            raise InvalidFieldError("min_poly must have integer coefficients")
        min_poly = _trim(min_poly)
        if len(min_poly) < 2:
            raise InvalidFieldError("min_poly must have degree >= 1")
        if min_poly[-1] != 1:
            raise InvalidFieldError("min_poly must be monic")
        if len(_polygcd(min_poly, _derivative(min_poly))) > 1:
            raise InvalidFieldError("min_poly is not squarefree")
        self.min_poly = tuple(min_poly)
        self.degree = d = len(min_poly) - 1
        self.name = name
        basis = [[Fraction(v) for v in b] for b in integral_basis]
        if len(basis) != d or any(len(b) != d for b in basis):
            raise InvalidFieldError(f"integral_basis must hold {d} vectors of length {d}")
        if linalg.det(basis) == 0:
            raise InvalidFieldError("integral_basis is not linearly independent")
        self.integral_basis = tuple(tuple(b) for b in basis)
        self._P = basis
        self._Pinv = linalg.inverse(basis)

        # structure constants: a_i * a_j = sum_k mult[i][j][k] a_k
        mult = []
        for i in range(d):
            row = []
            for j in range(d):
                prod = _polymod(_polymul(basis[i], basis[j]), min_poly)
                row.append(tuple(self._power_to_coords(prod)))
            mult.append(tuple(row))
        self._mult = tuple(mult)
        if any(c.denominator != 1 for row in mult for v in row for c in v):
            raise InvalidFieldError("integral_basis is not closed under multiplication")
        self._one = tuple(self._power_to_coords([1]))
        if any(c.denominator != 1 for c in self._one):
            raise InvalidFieldError("1 is not an integral combination of the basis")
        self._basis_traces = tuple(sum(mult[i][k][k] for k in range(d)) for i in range(d))
        tp = [[self._trace_coords(mult[i][j]) for j in range(d)] for i in range(d)]
        disc = linalg.det(tp)
        if disc == 0 or Fraction(disc).denominator != 1:
            raise InvalidFieldError("trace pairing determinant is not a nonzero integer")
        self.discriminant = int(disc)
        self.trace_pairing = tuple(tuple(int(v) for v in row) for row in tp)

        self._tables = {}
        self.precision = precision or settings().precision
        table = self._table(self.precision)
        n_real = sum(1 for z in table.roots if mpmath.im(z) == 0)
        self.signature = (n_real, (d - n_real) // 2)
        self.conj_perm = None
        self._conj = None
        self._detect_conjugation(table)

    # -- coordinates -----------------------------------------------------

    def _power_to_coords(self, p):
        p = list(p) + [0] * (self.degree - len(p))
        return [sum(Fraction(p[k]) * self._Pinv[k][j] for k in range(self.degree)) for j in range(self.degree)]

    def _coords_to_power(self, c):
        return [sum(c[i] * self._P[i][k] for i in range(self.degree)) for k in range(self.degree)]

    def _trace_coords(self, c):
        return sum(ci * t for ci, t in zip(c, self._basis_traces))

    def __call__(self, coords):
        return FieldElement(self, tuple(Fraction(c) for c in coords))

    def from_power(self, p):
        """Element with the given coordinates in the power basis 1, x, x^2, ..."""
        return self(self._power_to_coords(_polymod(p, self.min_poly)))

    def one(self):
        return FieldElement(self, self._one)

    def zero(self):
        return FieldElement(self, (Fraction(0),) * self.degree)

    def generator(self):
        return self.from_power([0, 1])

    def basis(self):
        d = self.degree
        return [self([1 if i == j else 0 for j in range(d)]) for i in range(d)]

    @property
    def r1(self):
        return self.signature[0]

    @property
    def r2(self):
        return self.signature[1]

    @property
    def abs_disc(self):
        return abs(self.discriminant)

    @property
    def has_conjugation(self):
        return self._conj is not None

    @property
    def is_monogenic(self):
        """True when the integral basis is exactly 1, x, ..., x^(d-1)."""
        return linalg.hnf_rows([[int(v) for v in row] for row in self._P]) == linalg.identity(self.degree) and all(
            v.denominator == 1 for row in self._P for v in row
        )

    def __eq__(self, other):
        return isinstance(other, NumberField) and (self.min_poly, self.integral_basis) == (
            other.min_poly,
            other.integral_basis,
        )

    def __hash__(self):
        return hash((self.min_poly, self.integral_basis))

    def __repr__(self):
        label = self.name or f"Q[x]/({list(self.min_poly)})"
        return f"NumberField({label}, d={self.degree}, sig={self.signature}, D={self.discriminant})"

    # -- embeddings ------------------------------------------------------

    def _table(self, prec):
        if prec in self._tables:
            return self._tables[prec]
        for p in self._tables:
            if p >= prec:
                return self._tables[p]
        table = self._compute_table(prec)
        self._tables[prec] = table
        return table

    def _compute_table(self, prec):
        f = list(self.min_poly)
        d = self.degree
        target = mpmath.mpf(2) ** (-prec)
        wp = prec + 64
        while wp <= MAX_ROOT_PRECISION:
            with mpmath.workprec(wp):
                try:
                    approx = mpmath.polyroots(list(reversed(f)), maxsteps=200 + 4 * wp, extraprec=wp)
                except mpmath.libmp.NoConvergence:
                    wp *= 2
                    continue
                if not isinstance(approx, (list, tuple)):
                    approx = [approx]
                radii = [self._root_radius(f, z, wp) for z in approx]
                ok = all(r < target for r in radii) and all(
                    abs(approx[i] - approx[j]) > radii[i] + radii[j] for i in range(d) for j in range(i + 1, d)
                )
                if ok:
                    return self._assemble_table(prec, wp, approx, radii)
            wp *= 2
        raise PrecisionUnreachable(f"could not isolate roots to 2^-{prec}")

    @staticmethod
    def _root_radius(f, z, wp):
        # a disk of radius n|f(z)/f'(z)| around z contains a root; pad for rounding
        n = len(f) - 1
        az = abs(z)
        slack = sum(abs(c) * az ** k for k, c in enumerate(f)) * mpmath.mpf(2) ** (-wp + 8)
        fz = abs(_polyeval_mp(f, z)) + slack
        dfz = abs(_polyeval_mp(_derivative(f), z))
        dslack = sum(abs(c) * az ** k for k, c in enumerate(_derivative(f))) * mpmath.mpf(2) ** (-wp + 8)
        if dfz <= dslack:
            return mpmath.inf
        return n * fz / (dfz - dslack) * (1 + mpmath.mpf(2) ** (-wp + 8))

    def _assemble_table(self, prec, wp, approx, radii):
        d = self.degree
        real, upper = [], []
        for z, r in zip(approx, radii):
            mirrored_clash = any(
                abs(mpmath.conj(z) - w) <= r + s for w, s in zip(approx, radii) if w is not z
            )
            if abs(mpmath.im(z)) <= r and not mirrored_clash:
                real.append((mpmath.mpc(mpmath.re(z), 0), r))
            elif mpmath.im(z) > 0:
                upper.append((z, r))
        real.sort(key=lambda t: -mpmath.re(t[0]))
        upper.sort(key=lambda t: (mpmath.re(t[0]), mpmath.im(t[0])))
        if len(real) + 2 * len(upper) != d:
            raise PrecisionUnreachable("could not classify real and complex roots")
        ordered = list(real)
        for z, r in upper:
            ordered.append((z, r))
            ordered.append((mpmath.conj(z), r))
        roots = tuple(z for z, _ in ordered)
        rads = tuple(r for _, r in ordered)
        values, vrad = [], []
        for z, rho in zip(roots, rads):
            row = []
            bound = mpmath.mpf(0)
            for b in self._P:
                row.append(_polyeval_mp([mpmath.mpf(c.numerator) / c.denominator for c in b], z))
                deriv = _derivative([abs(c) for c in b])
                # |p(w) - p(z)| <= rho * sum k|c_k| (|z|+rho)^(k-1)
                e = rho * sum(float(c) * (abs(z) + rho) ** k for k, c in enumerate(deriv)) if deriv else 0
                bound = max(bound, e + abs(row[-1]) * mpmath.mpf(2) ** (-wp + 8))
            values.append(tuple(row))
            vrad.append(bound)
        return _EmbeddingTable(prec, roots, rads, tuple(values), tuple(vrad))

    def embedding_table(self, prec=None):
        """Generator images per embedding and their error radii."""
        t = self._table(prec or self.precision)
        return t.roots, t.root_radius

    def _detect_conjugation(self, table):
        with mpmath.workprec(table.prec + 64):
            self._detect_conjugation_at(table)

    def _detect_conjugation_at(self, table):
        d = self.degree
        # conj_perm from root values
        perm = []
        for z in table.roots:
            cz = mpmath.conj(z)
            hits = [j for j, w in enumerate(table.roots) if abs(w - cz) <= 2 * table.root_radius[j] + table.root_radius[0]]
            if len(hits) != 1:
                return
            perm.append(hits[0])
        if self.r2 == 0:
            self.conj_perm = tuple(range(d))
            self._conj = linalg.identity(d)
            return
        # look for g in F with sigma(g) = conj(sigma(theta)) for every embedding
        with mpmath.workprec(table.prec + 64):
            V = mpmath.matrix([[z ** k for k in range(d)] for z in table.roots])
            rhs = mpmath.matrix([mpmath.conj(z) for z in table.roots])
            try:
                sol = mpmath.lu_solve(V, rhs)
            except ZeroDivisionError:
                return
            bound = abs(self._poly_disc())
            coeffs = []
            for k in range(d):
                if abs(mpmath.im(sol[k])) > mpmath.mpf(2) ** (-table.prec // 2):
                    return
                x = mpmath.re(sol[k])
                coeffs.append(Fraction(mpmath.nstr(x, table.prec // 3, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)).limit_denominator(bound))
        # exact check: f(g) = 0 in F, so x -> g is an automorphism
        g = self.from_power(coeffs)
        val = self.zero()
        for c in reversed(self.min_poly):
            val = val * g + c
        if val != self.zero():
            return
        # numeric check: sigma(g) = conj(sigma(theta)) for every sigma
        gv = self._embed_values(g, table)
        for s, z in enumerate(table.roots):
            if abs(gv[0][s] - mpmath.conj(z)) > gv[1] + table.root_radius[s] + mpmath.mpf(2) ** (-table.prec // 2):
                return
        # image of each basis element under the automorphism
        gpow = [self.one()]
        for _ in range(1, d):
            gpow.append(gpow[-1] * g)
        images = []
        for b in self._P:
            acc = self.zero()
            for k, c in enumerate(b):
                if c:
                    acc = acc + gpow[k] * c
            images.append(list(acc.coords))
        self._conj = images  # row i = coords of conj(a_i)
        self.conj_perm = tuple(perm)

    def _poly_disc(self):
        d = self.degree
        comp = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d - 1):
            comp[i + 1][i] = Fraction(1)
        for i in range(d):
            comp[i][d - 1] = Fraction(-self.min_poly[i])
        traces = []
        M = linalg.identity(d)
        for _ in range(2 * d - 1):
            traces.append(sum(M[i][i] for i in range(d)))
            M = linalg.matmul(M, comp)
        return linalg.det([[traces[i + j] for j in range(d)] for i in range(d)])

    def _embed_values(self, a, table):
        with mpmath.workprec(table.prec + 64):
            return self._embed_values_at(a, table)

    def _embed_values_at(self, a, table):
        vals = []
        radius = mpmath.mpf(0)
        for s in range(self.degree):
            acc = mpmath.mpc(0)
            for c, v in zip(a.coords, table.basis_values[s]):
                if c:
                    acc += (mpmath.mpf(c.numerator) / c.denominator) * v
            vals.append(acc)
            radius = max(radius, sum(abs(c) for c in a.coords) * table.basis_radius[s])
        return vals, radius * (1 + mpmath.mpf(2) ** (-table.prec))


@dataclass(frozen=True)
class FieldElement:
    """Element of F as rational coordinates in the integral basis."""

    field: NumberField = dc_field(repr=False, compare=False)
    coords: tuple

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise DomainError("elements from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(Fraction(other) * c for c in self.field._one))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.field.degree
        mult = self.field._mult
        out = [Fraction(0)] * d
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(mult[i][j]):
                    if c:
                        out[k] += ab * c
        return FieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coords)

    def mult_matrix(self):
        """Matrix M with (self * a_j) = sum_k M[j][k] a_k."""
        d = self.field.degree
        mult = self.field._mult
        return [
            [sum(self.coords[i] * mult[i][j][k] for i in range(d) if self.coords[i]) for k in range(d)]
            for j in range(d)
        ]

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        M = self.mult_matrix()
        # solve x * self = 1, i.e. sum_j x_j M[j][k] = one_k
        x = linalg.solve(linalg.transpose(M), list(self.field._one))
        return FieldElement(self.field, tuple(x))

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coords)

    def power_coords(self):
        return self.field._coords_to_power(self.coords)

    def __repr__(self):
        return "FieldElement(" + ", ".join(str(c) for c in self.coords) + ")"


def trace(a):
    """Exact trace Tr(a) = sum of the embeddings of a."""
    return Fraction(a.field._trace_coords(a.coords))


def norm_abs(x):
    """|N(x)|: exact Fraction for a FieldElement, (value, radius) for a RealEmbeddingVector."""
    if isinstance(x, RealEmbeddingVector):
        value = mpmath.mpf(1)
        for v in x.values:
            value *= abs(v)
        radius = mpmath.mpf(0)
        # |prod(|v|+r) - prod|v|| bounds the error
        upper = mpmath.mpf(1)
        for v in x.values:
            upper *= abs(v) + x.radius
        radius = upper - value
        return value, radius
    return abs(Fraction(linalg.det(x.mult_matrix())))


def conjugate(a):
    """Complex conjugate of ``a``; requires a totally real or CM field."""
    F = a.field
    if F._conj is None:
        raise ConjugationUnavailable(f"{F!r} is not closed under complex conjugation")
    d = F.degree
    out = [Fraction(0)] * d
    for i, c in enumerate(a.coords):
        if c:
            for k in range(d):
                out[k] += c * F._conj[i][k]
    return FieldElement(F, tuple(out))


@dataclass(frozen=True)
class RealEmbeddingVector:
    """A point of F tensor R given by its d embedding values and a shared error radius."""

    values: tuple
    radius: object
    conj_perm: tuple = None

    def __post_init__(self):
        if self.conj_perm is not None:
            for s, t in enumerate(self.conj_perm):
                if abs(self.values[t] - mpmath.conj(self.values[s])) > 2 * self.radius + mpmath.mpf(2) ** -40:
                    raise DomainError("values violate the F_R invariance x_sigmabar = conj(x_sigma)")

    @classmethod
    def from_values(cls, field, values, radius=0):
        """Build from raw embedding values, ordered like the field's embeddings."""
        vals = tuple(mpmath.mpc(v) for v in values)
        if len(vals) != field.degree:
            raise DomainError(f"need {field.degree} values")
        perm = _embedding_conj_perm(field)
        return cls(vals, mpmath.mpf(radius), perm)

    def __len__(self):
        return len(self.values)


def _embedding_conj_perm(field):
    r1, r2 = field.signature
    perm = list(range(r1))
    for k in range(r2):
        perm += [r1 + 2 * k + 1, r1 + 2 * k]
    return tuple(perm)


def embed(a, precision=None):
    """Complex embeddings of ``a`` with error radius at most 2^-precision (relative to size)."""
    F = a.field
    bits = precision or F.precision
    if bits <= 0:
        raise DomainError("precision must be positive")
    extra = 8 + max(0, max((abs(c.numerator) + c.denominator).bit_length() for c in a.coords))
    extra = -(-extra // 64) * 64   # round up so nearby sizes share a cached table
    table = F._table(bits + extra)
    with mpmath.workprec(table.prec + 64):
        return _embed_at(F, a, bits, extra, table)


def _embed_at(F, a, bits, extra, table):
    vals, radius = F._embed_values(a, table)
    scale = 1 + max(abs(v) for v in vals)
    if radius > mpmath.mpf(2) ** (-bits) * scale:
        table = F._table(2 * (bits + extra))
        vals, radius = F._embed_values(a, table)
        if radius > mpmath.mpf(2) ** (-bits) * scale:
            raise PrecisionUnreachable(f"embedding radius {radius} above 2^-{bits}")
    r1 = F.r1
    vals = [mpmath.mpc(mpmath.re(v), 0) if s < r1 else v for s, v in enumerate(vals)]
    # enforce exact conjugate symmetry on complex pairs
    for k in range(F.r2):
        s = r1 + 2 * k
        vals[s + 1] = mpmath.conj(vals[s])
    return RealEmbeddingVector(tuple(vals), radius, _embedding_conj_perm(F))


# -- fractional ideals -----------------------------------------------------

class FractionalIdeal:
    """A fractional ideal stored by a canonical (Hermite) Z-basis."""

    def __init__(self, field, z_basis, check=True):
        self.field = field
        rows = [list(b.coords) if isinstance(b, FieldElement) else [Fraction(v) for v in b] for b in z_basis]
        H = linalg.rational_hnf_rows(rows)
        if len(H) != field.degree:
            raise DomainError("z_basis does not span a full-rank lattice")
        self._rows = tuple(tuple(r) for r in H)
        self.z_basis = tuple(FieldElement(field, r) for r in self._rows)
        self.norm = abs(Fraction(linalg.det(H)))
        if check and not self.is_closed():
            raise DomainError("Z-module is not closed under multiplication by O_F")

    @classmethod
    def from_generators(cls, field, gens):
        gens = [g if isinstance(g, FieldElement) else field(g) for g in gens]
        return cls(field, [g * a for g in gens for a in field.basis()], check=False)

    @classmethod
    def principal(cls, a):
        return cls.from_generators(a.field, [a])

    @classmethod
    def unit(cls, field):
        return cls(field, field.basis(), check=False)

    def is_closed(self):
        return all(self.contains(b * a) for b in self.z_basis for a in self.field.basis())

    def coords_of(self, x):
        """Rational coordinates of x in this ideal's Z-basis."""
        return linalg.solve(linalg.transpose([list(r) for r in self._rows]), list(x.coords))

    def contains(self, x):
        return all(c.denominator == 1 for c in self.coords_of(x))

    def is_integral(self):
        return all(c.denominator == 1 for r in self._rows for c in r)

    def __mul__(self, other):
        return FractionalIdeal(self.field, [a * b for a in self.z_basis for b in other.z_basis], check=False)

    def __eq__(self, other):
        return isinstance(other, FractionalIdeal) and self.field == other.field and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"FractionalIdeal(norm={self.norm}, basis={[list(map(str, r)) for r in self._rows]})"


def ideal_norm(ideal):
    return ideal.norm


def _primes_upto(n):
    sieve = [True] * (n + 1)
    out = []
    for p in range(2, n + 1):
        if sieve[p]:
            out.append(p)
            for q in range(p * p, n + 1, p):
                sieve[q] = False
    return out


def _divides_mod_p(g, f, p):
    r = [c % p for c in f]
    g = [c % p for c in g]
    while len(_trim(r)) >= len(g):
        r = _trim(r)
        q = r[-1] * pow(g[-1], -1, p) % p
        shift = len(r) - len(g)
        for i, c in enumerate(g):
            r[shift + i] = (r[shift + i] - q * c) % p
        r = _trim(r)
        if not r:
            break
    return not _trim(r)


def ideals_up_to_norm(field, bound):
    """All integral ideals of norm <= bound, for a monogenic integral basis.

    Ideals containing p correspond to monic divisors of f mod p; every ideal
    is a product of primes and each prime contains its rational prime, so
    closing that set under multiplication reaches everything.
    """
    if not field.is_monogenic:
        raise DomainError("ideal enumeration needs the power basis as integral basis")
    d = field.degree
    f = list(field.min_poly)
    theta = field.generator()
    blocks = set()
    for p in _primes_upto(int(bound)):
        k = 1
        while k <= d and p ** k <= bound:
            for tail in product(range(p), repeat=k):
                g = list(tail) + [1]
                if _divides_mod_p(g, f, p):
                    gt = field.zero()
                    for c in reversed(g):
                        gt = gt * theta + c
                    blocks.add(FractionalIdeal.from_generators(field, [field.one() * p, gt]))
            k += 1
    found = {FractionalIdeal.unit(field)}
    frontier = list(found)
    while frontier:
        nxt = []
        for I in frontier:
            for P in blocks:
                if I.norm * P.norm <= bound:
                    J = I * P
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda I: (I.norm, I._rows))


# -- construction / IO -------------------------------------------------------

def make_field(min_poly, integral_basis, precision=None, name=None):
    return NumberField(min_poly, integral_basis, precision=precision, name=name)


_preset_cache = {}


def preset(name):
    if name not in PRESETS:
        raise DomainError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    if name not in _preset_cache:
        poly, basis = PRESETS[name]
        _preset_cache[name] = make_field(poly, basis, name=name)
    return _preset_cache[name]


def load_field(spec):
    """Preset name, path to a YAML/JSON description, or an already-parsed mapping."""
    if isinstance(spec, NumberField):
        return spec
    if isinstance(spec, dict):
        data = spec
    elif spec in PRESETS:
        return preset(spec)
    else:
        path = Path(spec)
        if not path.exists():
            raise DomainError(f"{spec!r} is neither a preset nor a readable file")
        data = yaml.safe_load(path.read_text())
    if "preset" in data:
        return preset(data["preset"])
    basis = data.get("integral_basis")
    poly = data["min_poly"]
    if basis is None:
        n = len(poly) - 1
        basis = linalg.identity(n)
    basis = [[Fraction(str(v)) for v in b] for b in basis]
    name = data.get("name")
    if name in PRESETS and PRESETS[name] == (list(poly), [[int(v) for v in b] for b in basis]):
        return preset(name)
    return make_field(poly, basis, name=name)


def parse_element(field, value):
    """Parse an element from a coordinate list (integral basis) or a scalar."""
    if isinstance(value, FieldElement):
        return value
    if isinstance(value, (int, Fraction)):
        return field.one() * Fraction(value)
    if isinstance(value, str):
        value = yaml.safe_load(value)
        if not isinstance(value, list):
            return field.one() * Fraction(str(value))
    if isinstance(value, (int, float)):
        return field.one() * Fraction(str(value))
    if len(value) != field.degree:
        raise DomainError(f"element needs {field.degree} coordinates")
    return field([Fraction(str(v)) for v in value])


def element_to_json(a):
    return [str(c) for c in a.coords]
