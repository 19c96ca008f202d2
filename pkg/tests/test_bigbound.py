import json
import random
from fractions import Fraction as Q

import mpmath
import pytest
from hypothesis import given, strategies as st

from hermlat.bigbound import BigBound, interval_endpoints
from hermlat.errors import DomainError, Undecided

bases = st.fractions(min_value=Q(1, 50), max_value=500, max_denominator=50).filter(lambda q: q > 0)
exps = st.fractions(min_value=-40, max_value=40, max_denominator=6)
monomials = st.lists(st.tuples(bases, exps), min_size=1, max_size=4)


def build(terms):
    out = BigBound.one()
    for b, e in terms:
        out = out * BigBound.power(b, e)
    return out


def reference_log(terms):
    with mpmath.workprec(600):
        return mpmath.fsum(mpmath.mpf(e.numerator) / e.denominator * mpmath.log(mpmath.mpf(b.numerator) / b.denominator) for b, e in terms)


def test_canonical_factorisation():
    assert BigBound.power(4, Q(1, 2)) == BigBound.power(2)
    assert BigBound.power(2, 2) * BigBound.power(2, 3) == BigBound.power(32)
    assert BigBound.power(Q(3, 4)) == BigBound.power(3) / BigBound.power(4)
    assert BigBound.power(6, 2).exact() == 36
    assert BigBound.sqrt(2).is_rational() is False
    with pytest.raises(DomainError):
        BigBound.power(0)
    with pytest.raises(DomainError):
        BigBound.sqrt(2).exact()


@given(monomials, monomials)
def test_comparison_agrees_with_high_precision_logs(a, b):
    A, B = build(a), build(b)
    la, lb = reference_log(a), reference_log(b)
    if A.key() == B.key():
        assert A.compare(B) == 0
        return
    with mpmath.workprec(600):
        diff = la - lb
    if abs(diff) < mpmath.mpf(2) ** -500:
        return        # equal values with different spellings cannot occur for prime-factored monomials
    assert A.compare(B) == (1 if diff > 0 else -1)


@given(st.lists(monomials, min_size=3, max_size=3))
def test_strict_weak_order(triple):
    X, Y, Z = (build(t) for t in triple)
    assert X.compare(Y) == -Y.compare(X)
    if X <= Y and Y <= Z:
        assert X <= Z
    assert X <= X and not X < X


def test_log_interval_encloses_reference():
    rng = random.Random(4)
    for _ in range(50):
        terms = [(Q(rng.randint(2, 10**6)), Q(rng.randint(-10**4, 10**4), rng.randint(1, 7))) for _ in range(3)]
        lo, hi = interval_endpoints(build(terms).log_interval())
        ref = reference_log(terms)
        with mpmath.workprec(600):
            assert lo <= ref <= hi


def test_refinement_separates_close_values():
    big = BigBound.power(2, 10000)
    nudged = big * BigBound.sum(1, BigBound.power(2, -300))
    assert nudged > big
    assert big < nudged


def test_undecided_for_equal_values_with_different_forms():
    with pytest.raises(Undecided):
        BigBound.sum(1, 1).compare(2)


def test_sum_and_log_factors():
    s = BigBound.sum(1, BigBound.sqrt(2))         # 1 + sqrt 2
    assert s > BigBound.power(Q(241, 100))
    assert s < BigBound.power(Q(242, 100))
    lg = BigBound.log(BigBound.power(2, 100))      # 100 log 2 ~ 69.3
    assert BigBound.power(69) < lg < BigBound.power(70)


def test_json_form():
    b = BigBound.power(2, Q(3, 2)) * BigBound.power(5, -2)
    data = b.to_json()
    assert data["factors"] == [["2", 3, 2], ["5", -2, 1]]
    lo, hi = (float(v) for v in data["log10"])
    assert lo <= 1.5 * 0.30102999566 - 2 * 0.69897000433 + 1e-9 and hi >= lo
    assert json.loads(json.dumps(data)) == data
