"""Exact symbolic products of powers, compared in the log domain.

A :class:`BigBound` is ``prod base_i ** exp_i`` with positive rational bases
(kept factored into primes when cheap) and rational exponents, optionally
times a few non-monomial factors such as ``1 + X`` or ``log X``. Products and
powers are exact operations on the factor lists. Order comparisons evaluate
the logarithm with outward-rounded interval arithmetic and refine the
working precision until the two intervals separate.
"""

import threading
from fractions import Fraction

import mpmath
from mpmath import iv

from .errors import DomainError, Undecided

BASE_PRECISION = 128
MAX_PRECISION = 8192
_FACTOR_LIMIT = 10**12
_iv_lock = threading.RLock()


def _factor(n):
    """Prime factorisation for n below the trial-division limit, else {n: 1}."""
    out = {}
    if n < 2:
        return out
    if n > _FACTOR_LIMIT:
        return {n: 1}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _ivq(q):
    q = Fraction(q)
    return iv.mpf(q.numerator) / q.denominator


class _Expr:
    """A positive real factor that is not a monomial in rationals."""

    def log_interval(self, prec):
        raise NotImplementedError

    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, _Expr) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


class SumOf(_Expr):
    """Sum of positive BigBounds."""

    def __init__(self, *terms):
        self.terms = tuple(BigBound.coerce(t) for t in terms)
        if not self.terms:
            raise DomainError("empty sum")

    def log_interval(self, prec):
        total = iv.mpf(0)
        for t in self.terms:
            total += iv.exp(t.log_interval(prec))
        return iv.log(total)

    def key(self):
        return ("sum",) + tuple(sorted(t.key() for t in self.terms))

    def describe(self):
        return "(" + " + ".join(t.describe() for t in self.terms) + ")"

    def to_json(self):
        return {"sum": [t.to_json() for t in self.terms]}


class LogOf(_Expr):
    """Natural logarithm of a BigBound that exceeds 1."""

    def __init__(self, inner):
        self.inner = BigBound.coerce(inner)

    def log_interval(self, prec):
        inner = self.inner.log_interval(prec)
        if not inner.a > 0:
            raise DomainError("log of a bound that is not certified > 1")
        return iv.log(inner)

    def key(self):
        return ("log", self.inner.key())

    def describe(self):
        return f"log({self.inner.describe()})"

    def to_json(self):
        return {"log": self.inner.to_json()}


class BigBound:
    """Symbolic positive real ``prod b**e`` with exact factor bookkeeping."""

    __slots__ = ("_primes", "_exprs", "_cache")

    def __init__(self, primes=None, exprs=None):
        self._primes = {b: Fraction(e) for b, e in (primes or {}).items() if e != 0}
        self._exprs = {x: Fraction(e) for x, e in (exprs or {}).items() if e != 0}
        self._cache = {}

    # -- construction ----------------------------------------------------

    @classmethod
    def coerce(cls, value):
        if isinstance(value, BigBound):
            return value
        return cls.power(value, 1)

    @classmethod
    def one(cls):
        return cls()

    @classmethod
    def power(cls, base, exponent=1):
        """``base ** exponent`` for a positive rational or an expression base."""
        exponent = Fraction(exponent)
        if isinstance(base, BigBound):
            return base ** exponent
        if isinstance(base, _Expr):
            return cls(exprs={base: exponent})
        base = Fraction(base)
        if base <= 0:
            raise DomainError(f"BigBound base must be positive, got {base}")
        primes = {}
        for p, k in _factor(base.numerator).items():
            primes[p] = primes.get(p, 0) + k * exponent
        for p, k in _factor(base.denominator).items():
            primes[p] = primes.get(p, 0) - k * exponent
        return cls(primes)

    @classmethod
    def sqrt(cls, value):
        return cls.power(value, Fraction(1, 2))

    @classmethod
    def sum(cls, *terms):
        return cls.power(SumOf(*terms), 1)

    @classmethod
    def log(cls, inner):
        return cls.power(LogOf(inner), 1)

    # -- algebra -------------------------------------------------------

    def __mul__(self, other):
        other = BigBound.coerce(other)
        primes = dict(self._primes)
        for b, e in other._primes.items():
            primes[b] = primes.get(b, 0) + e
        exprs = dict(self._exprs)
        for x, e in other._exprs.items():
            exprs[x] = exprs.get(x, 0) + e
        return BigBound(primes, exprs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * BigBound.coerce(other) ** -1

    def __rtruediv__(self, other):
        return BigBound.coerce(other) * self ** -1

    def __pow__(self, exponent):
        exponent = Fraction(exponent)
        return BigBound(
            {b: e * exponent for b, e in self._primes.items()},
            {x: e * exponent for x, e in self._exprs.items()},
        )

    def __add__(self, other):
        return BigBound.sum(self, other)

    __radd__ = __add__

    # -- inspection -----------------------------------------------------

    def key(self):
        return (
            tuple(sorted(self._primes.items())),
            tuple(sorted((x.key(), e) for x, e in self._exprs.items())),
        )

    @property
    def factors(self):
        """[(base, exponent)] with integer prime bases, then expression bases."""
        return sorted(self._primes.items()) + sorted(self._exprs.items(), key=lambda t: repr(t[0].key()))

    def is_rational(self):
        """True when the value is an exact rational (all prime exponents integral)."""
        return not self._exprs and all(e.denominator == 1 for e in self._primes.values())

    def exact(self):
        """Exact Fraction value; only for rational bounds of manageable size."""
        if not self.is_rational():
            raise DomainError("bound is not rational")
        if sum(abs(e) * b.bit_length() for b, e in self._primes.items()) > 10**6:
            raise DomainError("bound too large to expand exactly")
        v = Fraction(1)
        for b, e in self._primes.items():
            v *= Fraction(b) ** int(e)
        return v

    def log_interval(self, prec=BASE_PRECISION):
        """Rigorous enclosure of the natural log at ``prec`` bits."""
        if prec in self._cache:
            return self._cache[prec]
        with _iv_lock:
            old = iv.prec
            iv.prec = prec
            try:
                total = iv.mpf(0)
                for b, e in self._primes.items():
                    total += _ivq(e) * iv.log(iv.mpf(b))
                for x, e in self._exprs.items():
                    total += _ivq(e) * x.log_interval(prec)
            finally:
                iv.prec = old
        self._cache[prec] = total
        return total

    def log10_interval(self, prec=BASE_PRECISION):
        with _iv_lock:
            old = iv.prec
            iv.prec = prec
            try:
                ln = self.log_interval(prec)
                return ln / iv.log(iv.mpf(10))
            finally:
                iv.prec = old

    def log10(self):
        """Midpoint of log10 as a float, for display only."""
        iv_ = self.log10_interval()
        with mpmath.workprec(BASE_PRECISION + 16):
            return float((mpmath.mpf(iv_.a) + mpmath.mpf(iv_.b)) / 2)

    def __float__(self):
        return 10.0 ** self.log10()

    # -- comparison -----------------------------------------------------

    def compare(self, other, max_prec=MAX_PRECISION):
        """-1, 0 or 1. Equal only when the canonical factor lists coincide."""
        other = BigBound.coerce(other)
        if self.key() == other.key():
            return 0
        quotient = self / other
        if quotient.is_rational() and not quotient._primes:
            return 0
        prec = BASE_PRECISION
        while prec <= max_prec:
            a = quotient.log_interval(prec)
            if a.b < 0:
                return -1
            if a.a > 0:
                return 1
            prec *= 2
        raise Undecided(f"could not separate {self.describe()} and {other.describe()}")

    def __eq__(self, other):
        if not isinstance(other, (BigBound, int, Fraction)):
            return NotImplemented
        return self.key() == BigBound.coerce(other).key()

    def __hash__(self):
        return hash(self.key())

    def __le__(self, other):
        return self.compare(other) <= 0

    def __lt__(self, other):
        return self.compare(other) < 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    # -- display / serialisation ---------------------------------------

    def describe(self):
        parts = []
        for b, e in sorted(self._primes.items()):
            parts.append(f"{b}" if e == 1 else f"{b}^({e})")
        for x, e in self._exprs.items():
            parts.append(x.describe() if e == 1 else f"{x.describe()}^({e})")
        return " * ".join(parts) if parts else "1"

    def __repr__(self):
        return f"BigBound({self.describe()})"

    def to_json(self, prec=BASE_PRECISION):
        lo_hi = self.log10_interval(prec)
        with mpmath.workprec(prec + 16):
            lo, hi = mpmath.mpf(lo_hi.a), mpmath.mpf(lo_hi.b)
            out = {
                "factors": [[str(b), e.numerator, e.denominator] for b, e in sorted(self._primes.items())],
                "log10": [mpmath.nstr(lo, 30), mpmath.nstr(hi, 30)],
                "log10_width": mpmath.nstr(hi - lo, 5),
            }
        if self._exprs:
            out["expr_factors"] = [[x.to_json(), e.numerator, e.denominator] for x, e in self._exprs.items()]
        return out


def interval_width(interval):
    with mpmath.workprec(MAX_PRECISION):
        return mpmath.mpf(interval.b) - mpmath.mpf(interval.a)


def interval_endpoints(interval):
    with mpmath.workprec(MAX_PRECISION):
        return mpmath.mpf(interval.a), mpmath.mpf(interval.b)
