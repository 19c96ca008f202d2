import random
from fractions import Fraction as Q
from itertools import product
from math import isqrt

import pytest

from hermlat import linalg
from hermlat.bigbound import BigBound
from hermlat.bounds import FieldParams, general_basis_bound
from hermlat.errors import ConjugationUnavailable, DomainError, NonUnimodular, NotPositiveDefinite
from hermlat.field_core import FractionalIdeal, make_field, preset
from hermlat.hermitian import (
    HermitianLattice,
    UnimodularMatrix,
    bounded_basis,
    coefficient_bound_check,
    field_det,
    field_inverse,
    gamma_action,
    is_well_rounded,
    minimal_vectors,
    normalize_minimum,
    phi_enumerate,
    qh_value,
    rank_one_generator,
)
from lattice_corpus import corpus, random_unimodular, well_rounded_corpus

H = Q(1, 2)
QQ, GI, EI = preset("rationals"), preset("gaussian"), preset("eisenstein")


def brute_minimal(L):
    """Minimum and minimisers by box search with the rigorous bound |x_i|^2 <= m (G^-1)_ii, capped at 10."""
    G = L.q_gram
    m = min(G[i][i] for i in range(len(G)))
    inv = linalg.inverse(G)
    box = []
    for i in range(len(G)):
        v = m * inv[i][i]
        box.append(min(10, isqrt(v.numerator // v.denominator) + 1))
    best, arg = None, []
    for x in product(*[range(-b, b + 1) for b in box]):
        if not any(x):
            continue
        v = linalg.quad(G, list(x))
        if best is None or v < best:
            best, arg = v, [x]
        elif v == best:
            arg.append(x)
    return best, sorted(arg)


def test_qh_examples():
    assert qh_value(HermitianLattice(GI, [[H]]), [1]) == 1
    assert qh_value(HermitianLattice(GI, [[H]]), [0]) == 0
    assert qh_value(HermitianLattice(QQ, [[1, 0], [0, 1]]), [3, 4]) == 25


def test_q_gram_entries_are_traces():
    L = HermitianLattice(EI, [[1, [0, H]], [[H, -H], 1]])
    d = 2
    basis = EI.basis()
    from hermlat.field_core import conjugate, trace

    for i, j, k, l in product(range(d), range(2), range(d), range(2)):
        want = trace(basis[i] * L.herm_gram[j][l] * conjugate(basis[k]))
        assert L.q_gram[j * d + i][l * d + k] == want


def test_rejections():
    with pytest.raises(DomainError):
        HermitianLattice(GI, [[1, [0, 1]], [[0, 1], 1]])       # h21 != conj(h12)
    with pytest.raises(NotPositiveDefinite):
        HermitianLattice(QQ, [[1, 2], [2, 1]])
    cube = make_field([-2, 0, 0, 1], [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(ConjugationUnavailable):
        HermitianLattice(cube, [[1]])


def test_minimal_vector_examples():
    M = minimal_vectors(HermitianLattice(GI, [[H]]))
    assert M.minimum == 1 and M.count == 4 and M.count_mod_sign == 2
    M = minimal_vectors(HermitianLattice(QQ, [[1, 0], [0, 1]]))
    assert M.minimum == 1 and sorted(M.flat) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    M = minimal_vectors(HermitianLattice(QQ, [[1, H], [H, 1]]))
    assert M.minimum == 1 and M.count == 6
    assert set(M.flat) == {(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)}
    M = minimal_vectors(HermitianLattice(EI, [[H]]))
    assert M.count == 6            # the six units of Z[omega]


@pytest.mark.parametrize("label,L", corpus(), ids=lambda v: v if isinstance(v, str) else "")
def test_minimal_vectors_match_box_search(label, L):
    M = minimal_vectors(L)
    m, ref = brute_minimal(L)
    assert M.minimum == m
    assert sorted(M.flat) == ref
    assert all(qh_value(L, v) == m for v in M.vectors)
    assert set(M.flat) == {tuple(-c for c in v) for v in M.flat}


def test_well_rounded_examples():
    assert is_well_rounded(HermitianLattice(QQ, [[1, H], [H, 1]]))
    w = is_well_rounded(HermitianLattice(QQ, [[1, 0], [0, 2]]))
    assert not w and "rank 1" in w.reason
    w = is_well_rounded(HermitianLattice(GI, [[1]]))
    assert not w and "minimum is 2" in w.reason


def test_normalize_minimum():
    L = normalize_minimum(HermitianLattice(GI, [[1]]))
    assert L.herm_gram == [[GI([H, 0])]] and minimal_vectors(L).minimum == 1
    L = normalize_minimum(HermitianLattice(QQ, [[4, 0], [0, 4]]))
    assert L.herm_gram == [[QQ([1]), QQ([0])], [QQ([0]), QQ([1])]]
    A = HermitianLattice(QQ, [[3, Q(3, 2)], [Q(3, 2), 3]])
    B = normalize_minimum(A)
    assert minimal_vectors(A).flat == minimal_vectors(B).flat
    for x in ([1, 2], [3, -1], [0, 5]):
        assert qh_value(B, x) == qh_value(A, x) / 3


def test_unimodular_checks():
    with pytest.raises(NonUnimodular):
        UnimodularMatrix(QQ, [[2, 0], [0, 1]])
    with pytest.raises(NonUnimodular):
        UnimodularMatrix(GI, [[[1, 1], 0], [0, 1]])            # det 1+i has norm 2
    with pytest.raises(NonUnimodular):
        UnimodularMatrix(QQ, [[H, 0], [0, 2]])                 # det 1 but entries not integral
    g = UnimodularMatrix(GI, [[[0, 1], 0], [[3, 2], 1]])      # det i
    assert norm_one(g.det)
    assert all(e.is_integral() for r in g.inverse for e in r)


def norm_one(x):
    from hermlat.field_core import norm_abs
    return norm_abs(x) == 1


def test_gamma_action_examples():
    L = HermitianLattice(QQ, [[1, 0], [0, 1]])
    assert gamma_action(UnimodularMatrix.identity(QQ, 2), L).herm_gram == L.herm_gram
    g = UnimodularMatrix(QQ, [[1, 1], [0, 1]])
    L2 = gamma_action(g, L)
    image = {tuple(c for e in g.apply(v) for c in e.coords) for v in minimal_vectors(L).vectors}
    assert set(minimal_vectors(L2).flat) == image


@pytest.mark.parametrize("name", ["rationals", "gaussian", "eisenstein", "real_quad_2"])
def test_gamma_equivariance(name):
    rng = random.Random(name)
    F = preset(name)
    grams = {
        "rationals": [[1, H, 0], [H, 1, 0], [0, 0, 2]],
        "gaussian": [[H, [Q(1, 4), Q(1, 4)]], [[Q(1, 4), Q(-1, 4)], H]],
        "eisenstein": [[H, Q(1, 4)], [Q(1, 4), H]],
        "real_quad_2": [[1, 0], [0, 1]],
    }
    L = HermitianLattice(F, grams[name])
    M = minimal_vectors(L)
    for _ in range(25):
        g = random_unimodular(F, L.rank, rng)
        L2 = gamma_action(g, L)
        M2 = minimal_vectors(L2)
        assert M2.minimum == M.minimum
        assert set(M2.vectors) == {g.apply(v) for v in M.vectors}
        for v in M.vectors[:3]:
            assert qh_value(L2, g.apply(v)) == qh_value(L, v)


def test_field_linear_algebra():
    rng = random.Random(8)
    for _ in range(20):
        g = random_unimodular(GI, 3, rng)
        inv = field_inverse(g.rows)
        prod_ = [[sum((g.rows[i][k] * inv[k][j] for k in range(3)), GI.zero()) for j in range(3)] for i in range(3)]
        assert prod_ == [[GI.one() if i == j else GI.zero() for j in range(3)] for i in range(3)]
        assert norm_one(field_det(g.rows))


def test_rank_one_generator_examples():
    r = rank_one_generator(GI, H)
    assert r.index == 1 and r.index_ok and r.norm_ok
    r = rank_one_generator(QQ, 1)
    assert r.element in (QQ.one(), -QQ.one()) and r.index == 1 and r.norm2 <= 1
    b = FractionalIdeal.principal(GI([1, 1]).inverse())
    r = rank_one_generator(GI, H, b)
    assert r.index <= 16 and r.index_ok and r.norm_ok
    assert b.contains(r.element)
    r = rank_one_generator(preset("cyclotomic_5"), Q(1, 4))
    assert r.index_ok and r.norm_ok
    with pytest.raises(DomainError):
        rank_one_generator(make_field([5, 0, 1], [[1, 0], [0, 1]]), H)     # Q(sqrt -5), class number 2
    with pytest.raises(DomainError):
        rank_one_generator(GI, 1)                       # ||e||^2 = 2 > 1


@pytest.mark.parametrize("name", ["gaussian", "eisenstein", "real_quad_2", "real_quad_5", "cyclotomic_5"])
def test_rank_one_generator_over_ideals(name):
    from hermlat.field_core import ideals_up_to_norm

    F = preset(name)
    for ideal in ideals_up_to_norm(F, 30):
        # b = a^-1 contains 1 and has norm 1/N(a)
        b = _inverse_ideal(F, ideal)
        r = rank_one_generator(F, Q(1, F.degree), b)
        assert r.index_ok and r.norm_ok
        assert b.contains(r.element)


def _inverse_ideal(F, a):
    """a^-1 = {x : x a subset O_F}, via a principal generator (class number one)."""
    from hermlat.ideal_lattice import IdealLattice, shortest_vector

    lat = IdealLattice(F, a)
    g = lat.ideal_element(shortest_vector(lat).coords)
    assert FractionalIdeal.principal(g) == a
    return FractionalIdeal.principal(g.inverse())


def test_bounded_basis_examples():
    b = bounded_basis(HermitianLattice(GI, [[H]]))
    assert b.basis == ((GI.one(),),) and b.max_norm == 1 and b.holds
    b = bounded_basis(HermitianLattice(QQ, [[1, H], [H, 1]]))
    assert b.basis == ((QQ.one(), QQ.zero()), (QQ.zero(), QQ.one())) and b.max_norm == 1
    b = bounded_basis(HermitianLattice(EI, [[H, 0], [0, H]]))
    assert b.holds and BigBound.sqrt(b.max_norm) <= general_basis_bound(FieldParams.of_field(EI), 2)
    with pytest.raises(DomainError):
        bounded_basis(HermitianLattice(QQ, [[1, 0], [0, 2]]))


def test_bounded_basis_rank_five_has_simplified_certificate():
    L = HermitianLattice(GI, [[H if i == j else 0 for j in range(5)] for i in range(5)])
    b = bounded_basis(L)
    assert b.simplified is not None and b.holds
    assert b.certificate <= b.simplified


@pytest.mark.parametrize("label,L", well_rounded_corpus(images=1), ids=lambda v: v if isinstance(v, str) else "")
def test_bounded_basis_and_coefficients_on_corpus(label, L):
    b = bounded_basis(L)
    g = UnimodularMatrix(L.field, [list(v) for v in b.basis])
    assert g.size == L.rank
    assert b.holds
    rep = coefficient_bound_check(L, b)
    assert rep.passed and rep.records


def test_coefficient_examples():
    L = HermitianLattice(GI, [[H]])
    rep = coefficient_bound_check(L, bounded_basis(L))
    assert sorted(s for _, _, s in rep.records) == [2, 2, 2, 2]
    A2 = HermitianLattice(QQ, [[1, H], [H, 1]])
    rep = coefficient_bound_check(A2, bounded_basis(A2))
    assert {s for _, _, s in rep.records} <= {0, 1}


def test_phi_examples():
    p = phi_enumerate(QQ, 1, cap_T=1)
    assert sorted(x.coords[0] for x in p.per_coordinate) == [-1, 0, 1] and p.coordinate_ok
    assert p.coordinate_bound == BigBound.power(16)
    p = phi_enumerate(GI, 1, cap_T=2)
    assert len(p.per_coordinate) == 5 and p.coordinate_bound == BigBound.power(64)
    assert phi_enumerate(GI, 1, cap_T=Q(1, 2)).count == 1
    p = phi_enumerate(EI, 2, cap_T=2)
    assert p.count == 49 and p.coordinate_ok and p.total_ok
    with pytest.raises(DomainError):
        phi_enumerate(GI, 1, cap_T=0)


@pytest.mark.parametrize("name", ["rationals", "gaussian", "eisenstein", "real_quad_2", "cyclotomic_5"])
def test_phi_per_coordinate_bound(name):
    F = preset(name)
    for T in (1, 2, 3, 5, 8, 13):
        p = phi_enumerate(F, 1, cap_T=T)
        assert p.coordinate_ok
