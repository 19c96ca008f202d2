"""Ideal lattices (I, q0) with I = x * a and q0(y) = Tr(y * conj(y)).

Inequalities that involve d-th roots (the covering radius, C2, C3) are
decided exactly by raising both sides to the d-th power, so for inputs in F
every certificate below is a comparison of rationals.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .bigbound import BigBound
from .enumeration import Enumerator
from .errors import DomainError, FloatModeOnly, ZeroComponent
from .field_core import (
    FieldElement,
    FractionalIdeal,
    RealEmbeddingVector,
    conjugate,
    embed,
    norm_abs,
    trace,
)

RESIDUE_CAP = 10**4


def _mpf_to_fraction(x):
    x = mpmath.mpf(x)
    sign, mant, e, _ = x._mpf_
    if not mant:
        return Fraction(0)
    v = Fraction(int(mant)) * (Fraction(2) ** e)
    return -v if sign else v


def _mp(q):
    if isinstance(q, Fraction):
        return mpmath.mpf(q.numerator) / q.denominator
    return mpmath.mpf(q)


def _real_coords(field, values):
    """Map embedding values to R^d so that q0 becomes the Euclidean square norm."""
    r1, r2 = field.signature
    out = [mpmath.re(v) for v in values[:r1]]
    s2 = mpmath.sqrt(2)
    for k in range(r2):
        v = values[r1 + 2 * k]
        out += [s2 * mpmath.re(v), s2 * mpmath.im(v)]
    return out


class IdealLattice:
    """The rank-d Z-lattice x * a inside F tensor R with the trace form.

    ``scaling`` is either a nonzero FieldElement (exact mode, needs complex
    conjugation on F) or a RealEmbeddingVector (float mode: the Gram matrix
    is the exact rational matrix of binary floats nearest the true one, and
    carries ``gram_radius``).
    """

    def __init__(self, field, ideal=None, scaling=None):
        self.field = field
        self.ideal = ideal if ideal is not None else FractionalIdeal.unit(field)
        if scaling is None:
            scaling = field.one()
        if isinstance(scaling, (int, Fraction)):
            scaling = field.one() * scaling
        self.scaling = scaling
        self.exact = isinstance(scaling, FieldElement) and field.has_conjugation
        d = field.degree
        if isinstance(scaling, FieldElement):
            if not scaling:
                raise ZeroComponent("scaling must be nonzero")
            self.basis = [scaling * z for z in self.ideal.z_basis]
            self.norm = norm_abs(scaling) * self.ideal.norm
            self.norm_radius = 0
        else:
            nv, nr = norm_abs(scaling)
            if nv <= nr:
                raise ZeroComponent("scaling has a vanishing component")
            self.basis = None
            self.norm = nv * self.ideal.norm
            self.norm_radius = nr * self.ideal.norm
        if self.exact:
            conj = [conjugate(b) for b in self.basis]
            self.gram = [[trace(self.basis[i] * conj[j]) for j in range(d)] for i in range(d)]
            self.gram_radius = 0
        else:
            self.gram, self.gram_radius = self._float_gram()
        self._enum = None

    def _float_gram(self):
        F = self.field
        d = F.degree
        prec = F.precision
        with mpmath.workprec(prec + 64):
            if isinstance(self.scaling, FieldElement):
                xv = embed(self.scaling, prec)
            else:
                xv = self.scaling
            zv = [embed(z, prec) for z in self.ideal.z_basis]
            rows = []
            for i in range(d):
                vi = [xv.values[s] * zv[i].values[s] for s in range(d)]
                rows.append(_real_coords(F, vi))
            self._real_basis = rows
            G = [[Fraction(0)] * d for _ in range(d)]
            for i in range(d):
                for j in range(i, d):
                    g = mpmath.fsum(a * b for a, b in zip(rows[i], rows[j]))
                    G[i][j] = G[j][i] = _mpf_to_fraction(g)
            scale = max(abs(v) for v in xv.values) + xv.radius
            zscale = max(max(abs(v) for v in z.values) for z in zv)
            radius = 4 * d * scale * zscale * (xv.radius * zscale + scale * max(z.radius for z in zv)) + mpmath.mpf(2) ** (-prec)
        return G, radius

    @property
    def enumerator(self):
        if self._enum is None:
            self._enum = Enumerator(self.gram)
        return self._enum

    def element(self, coords):
        """The lattice vector with the given integer coordinates, as an element of F (exact mode)."""
        if self.basis is None:
            raise FloatModeOnly("lattice vectors are not elements of F in float mode")
        out = self.field.zero()
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b * c
        return out

    def ideal_element(self, coords):
        """Element of the ideal part a with these coordinates (the lattice vector divided by x)."""
        out = self.field.zero()
        for c, z in zip(coords, self.ideal.z_basis):
            if c:
                out = out + z * c
        return out

    def coords_of(self, t):
        """Rational lattice coordinates of a target.

        Exact for FieldElements (exact mode); for RealEmbeddingVectors the
        coordinates are the exact binary rationals nearest the true solution.
        """
        if isinstance(t, FieldElement):
            if self.basis is None:
                raise FloatModeOnly("FieldElement targets need an exact-mode lattice")
            return self.ideal.coords_of(t / self.scaling)
        F = self.field
        with mpmath.workprec(F.precision + 64):
            if not hasattr(self, "_real_basis"):
                self._float_gram()
            B = mpmath.matrix(self._real_basis).T
            rhs = mpmath.matrix(_real_coords(F, t.values))
            sol = mpmath.lu_solve(B, rhs)
            return [_mpf_to_fraction(sol[i]) for i in range(F.degree)]

    def __repr__(self):
        return f"IdealLattice({self.field.name}, norm={self.norm}, exact={self.exact})"


def ideal_lattice(field, ideal=None, scaling=None):
    return IdealLattice(field, ideal, scaling)


def trace_gram(lat, allow_float=False):
    """Exact Gram matrix of q0 on the lattice basis.

    In float mode raises FloatModeOnly unless ``allow_float`` is set, in
    which case ``(gram, radius)`` is returned.
    """
    if not lat.exact:
        if allow_float:
            return lat.gram, lat.gram_radius
        raise FloatModeOnly("Gram matrix is only known to within an error radius")
    return [row[:] for row in lat.gram]


# -- covering radius --------------------------------------------------------

def _norm_q(lat):
    if not isinstance(lat.norm, Fraction):
        raise FloatModeOnly("lattice norm is not an exact rational")
    return lat.norm


def covering_bound(lat):
    """R = sqrt(d)/2 * |D_F|^(1/d) * N(I)^(1/d) as a BigBound (upper rational bound on N(I) in float mode)."""
    F = lat.field
    d = F.degree
    if isinstance(lat.norm, Fraction):
        n = lat.norm
    else:
        with mpmath.workprec(F.precision + 16):
            n = _mpf_to_fraction(lat.norm + lat.norm_radius) * (1 + Fraction(1, 2**F.precision))
    return BigBound.sqrt(d) / 2 * BigBound.power(F.abs_disc, Fraction(1, d)) * BigBound.power(n, Fraction(1, d))


def within_covering_bound(lat, dist2):
    """Exact test of dist <= R via dist2^d <= (d/4)^d |D|^2 N(I)^2."""
    d = lat.field.degree
    return Fraction(dist2) ** d <= Fraction(d, 4) ** d * lat.field.abs_disc ** 2 * _norm_q(lat) ** 2


@dataclass(frozen=True)
class CVPResult:
    coords: tuple          # integer coordinates of y in the lattice basis
    dist2: Fraction        # q0(target' - y) for the rational target' actually enumerated
    ties: int              # number of equidistant minimisers
    target_coords: tuple   # rational coordinates that were enumerated
    within_bound: bool

    @property
    def dist(self):
        return mpmath.sqrt(mpmath.mpf(self.dist2.numerator) / self.dist2.denominator)


def closest_vector(lat, target):
    """Exact closest lattice vector; the lexicographically least minimiser wins ties.

    ``target`` may be a FieldElement, a RealEmbeddingVector or a list of
    rational lattice coordinates.
    """
    if isinstance(target, (FieldElement, RealEmbeddingVector)):
        t = lat.coords_of(target)
    else:
        t = [Fraction(v) for v in target]
    dist2, best = lat.enumerator.closest(t)
    within = _within(lat, dist2)
    return CVPResult(best[0], dist2, len(best), tuple(t), within)


def _within(lat, dist2):
    if isinstance(lat.norm, Fraction):
        return within_covering_bound(lat, dist2)
    return BigBound.sqrt(dist2) <= covering_bound(lat) if dist2 else True


@dataclass(frozen=True)
class SVPResult:
    coords: tuple
    len2: Fraction
    count: int             # number of minimal vectors (both signs)
    within_bound: bool     # len <= 2R


def shortest_vector(lat):
    len2, vecs = lat.enumerator.shortest()
    # len <= 2R  <=>  len2^d <= d^d |D|^2 N(I)^2
    d = lat.field.degree
    if isinstance(lat.norm, Fraction):
        within = len2 ** d <= Fraction(d) ** d * lat.field.abs_disc ** 2 * lat.norm ** 2
    else:
        within = BigBound.sqrt(len2) <= covering_bound(lat) * 2
    return SVPResult(vecs[0], len2, len(vecs), within)


# -- rounding, scaling and residue constructions ---------------------------------

def _l1(values):
    return mpmath.fsum(abs(v) for v in values)


@dataclass(frozen=True)
class CloseInteger:
    element: FieldElement
    dist2: Fraction        # q0(x - a) (for the enumerated rational target)
    l1_error: object       # sum_sigma |x_sigma - sigma(a)|, mpf
    certified: bool        # sqrt(d) * ||x - a|| <= C2, decided exactly


def close_integer(x):
    """An a in O_F with sum |x_sigma - sigma(a)| <= C2 = d/2 |D_F|^(1/d).

    ``x`` is a FieldElement or a RealEmbeddingVector paired with its field
    via ``(field, vector)``.
    """
    if isinstance(x, tuple):
        field, x = x
    else:
        field = x.field
    lat = IdealLattice(field)
    d = field.degree
    if isinstance(x, FieldElement) and not x:
        return CloseInteger(field.zero(), Fraction(0), mpmath.mpf(0), True)
    res = closest_vector(lat, x)
    a = lat.element(res.coords)
    # d * dist2 <= C2^2 = d^2/4 |D|^(2/d)  <=>  (d dist2)^d <= (d^2/4)^d |D|^2
    certified = (d * res.dist2) ** d <= Fraction(d * d, 4) ** d * field.abs_disc ** 2
    with mpmath.workprec(field.precision + 64):
        xv = x if isinstance(x, RealEmbeddingVector) else embed(x)
        av = embed(a)
        l1 = _l1([u - v for u, v in zip(xv.values, av.values)])
    return CloseInteger(a, res.dist2, l1, certified)


def c2_value(field):
    d = field.degree
    return BigBound.power(Fraction(d, 2)) * BigBound.power(field.abs_disc, Fraction(1, d))


def c3_value(field):
    d = field.degree
    return BigBound.sqrt(d) * BigBound.power(field.abs_disc, Fraction(1, d))


@dataclass(frozen=True)
class ScalingMultiplier:
    element: FieldElement      # a in O_F, nonzero
    q0_xa: Fraction            # ||x a||^2 (exact mode) or its rational approximation
    sup_value: object          # sup_sigma |sigma(a) x_sigma|, mpf
    bound: object              # C3 * N(x)^(1/d), mpf
    certified: bool            # ||x a|| <= C3 N(x)^(1/d) (which dominates the sup)


def scaling_multiplier(x, field=None):
    """A nonzero a in O_F with sup_sigma |sigma(a) x_sigma| <= C3 N(x)^(1/d).

    ``a`` is read off a shortest vector of the ideal lattice x O_F.
    """
    if isinstance(x, FieldElement):
        field = x.field
        if not x:
            raise ZeroComponent("x = 0 has vanishing components")
    elif field is None:
        raise DomainError("a RealEmbeddingVector needs its field")
    lat = IdealLattice(field, scaling=x)
    d = field.degree
    sv = shortest_vector(lat)
    a = lat.ideal_element(sv.coords)
    with mpmath.workprec(field.precision + 64):
        xv = x if isinstance(x, RealEmbeddingVector) else embed(x)
        av = embed(a)
        sup = max(abs(u * v) for u, v in zip(xv.values, av.values))
        nx = norm_abs(x)
        nx_val = nx if isinstance(nx, Fraction) else nx[0]
        bound = mpmath.sqrt(d) * mpmath.mpf(field.abs_disc) ** (mpmath.mpf(1) / d) * _mp(nx_val) ** (mpmath.mpf(1) / d)
    if isinstance(nx, Fraction) and lat.exact:
        # ||xa||^2 <= C3^2 N(x)^(2/d)  <=>  ||xa||^(2d) <= d^d |D|^2 N(x)^2
        certified = sv.len2 ** d <= Fraction(d) ** d * field.abs_disc ** 2 * nx ** 2
    else:
        slack = lat.gram_radius * d * max(1, max(abs(c) for c in sv.coords)) ** 2
        with mpmath.workprec(field.precision + 64):
            certified = bool(mpmath.sqrt(mpmath.mpf(sv.len2.numerator) / sv.len2.denominator + slack) <= bound * (1 - mpmath.mpf(2) ** (-field.precision // 2)))
    return ScalingMultiplier(a, sv.len2, sup, bound, certified)


@dataclass(frozen=True)
class ResidueSet:
    representatives: list     # FieldElements, one per class of O_F / a
    q0_values: list           # q0 of each representative
    l1_values: list           # sum |sigma(x)| of each, mpf
    certified: list           # per representative: sqrt(d) ||x|| <= C2 N(a)^(1/d), exact


def _reduce_mod(rows, v):
    v = list(v)
    for r, row in enumerate(rows):
        p = row[r]
        q = v[r] // p
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


def residue_representatives(ideal, cap=RESIDUE_CAP):
    """One representative per class of O_F / a, each inside the covering ball of (a, q0)."""
    field = ideal.field
    if not ideal.is_integral():
        raise DomainError("residue representatives need an integral ideal")
    n_ideal = ideal.norm
    if n_ideal > cap:
        raise DomainError(f"N(a) = {n_ideal} exceeds the cap {cap}")
    d = field.degree
    disc = field.abs_disc
    lat = IdealLattice(field)  # O_F with q0
    # R^2 = d/4 |D|^(2/d) N^(2/d); enumerate with a rational upper bound, then filter exactly
    r2_upper = _rational_root_upper(Fraction(d, 4) ** d * disc ** 2 * n_ideal ** 2, d)
    rows = [[int(c) for c in r] for r in ideal._rows]
    chosen = {}
    for coords, q in lat.enumerator.short_vectors(r2_upper, include_zero=True):
        if q ** d > Fraction(d, 4) ** d * disc ** 2 * n_ideal ** 2:
            continue
        key = _reduce_mod(rows, coords)
        if key not in chosen:
            chosen[key] = (coords, q)  # short_vectors is sorted by (q, coords)
    if len(chosen) != n_ideal:
        raise AssertionError(
            f"covering ball met {len(chosen)} classes, expected {n_ideal}: enumeration is broken"
        )
    picked = sorted(chosen.values(), key=lambda t: (t[1], t[0]))
    reps = [lat.element(c) for c, _ in picked]
    qs = [q for _, q in picked]
    # sqrt(d) ||x|| <= C2 N^(1/d)  <=>  (d q)^d <= (d^2/4)^d |D|^2 N^2
    cert = [(d * q) ** d <= Fraction(d * d, 4) ** d * disc ** 2 * n_ideal ** 2 for q in qs]
    with mpmath.workprec(field.precision + 64):
        l1 = [_l1(embed(r).values) for r in reps]
    return ResidueSet(reps, qs, l1, cert)


def _rational_root_upper(value, d):
    """A rational number >= value^(1/d)."""
    value = Fraction(value)
    with mpmath.workprec(128):
        approx = mpmath.root(mpmath.mpf(value.numerator) / value.denominator, d)
        guess = Fraction(mpmath.nstr(approx * (1 + mpmath.mpf(2) ** -60), 40, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))
    while guess ** d < value:
        guess *= Fraction(1001, 1000)
    return guess
