import random
from itertools import combinations, product
from math import gcd

import pytest
from hypothesis import given, strategies as st

from hermlat import linalg
from hermlat.bigbound import BigBound
from hermlat.errors import BoundaryError, DomainError
from hermlat.homology import (
    ChainComplex,
    IntMatrix,
    card_ell,
    cokernel_torsion,
    complex_torsion_bound,
    elementary_divisors,
    gabber_bound,
    homology_torsion,
    smith_normal_form,
)


# -- independent oracles -------------------------------------------------------

def determinantal_divisors(M):
    """d_k = gcd of all k x k minors, k = 1 .. rank."""
    m, n = len(M), len(M[0]) if M else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, int(linalg.det([[M[i][j] for j in cols] for i in rows])))
        if g == 0:
            break
        out.append(g)
    return out


def oracle_divisors(M):
    dd = determinantal_divisors(M)
    return tuple(dd[k] // (dd[k - 1] if k else 1) for k in range(len(dd)))


def oracle_torsion(M):
    """|coker(M)_tors| = last nonzero determinantal divisor."""
    dd = determinantal_divisors(M) if M and M[0] else []
    return dd[-1] if dd else 1


def brute_card_ell(orders, ell):
    """Generate the subgroup spanned by elements of order <= ell by closure."""
    elems = list(product(*[range(d) for d in orders]))

    def order(x):
        k = 1
        y = x
        while any(y):
            y = tuple((a + b) % d for a, b, d in zip(y, x, orders))
            k += 1
        return k

    gens = [x for x in elems if order(x) <= ell]
    zero = tuple(0 for _ in orders)
    sub = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = tuple((a + b) % d for a, b, d in zip(s, g, orders))
                if t not in sub:
                    sub.add(t)
                    nxt.append(t)
        frontier = nxt
    return len(elems) // len(sub)


def rand_matrix(rng, m, n, lo=-6, hi=6):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


# -- Smith normal form ----------------------------------------------------------

def test_snf_examples():
    assert elementary_divisors([[2, 0], [0, 3]]).divisors == (1, 6)
    assert elementary_divisors([[2, 1], [0, 2]]).divisors == (1, 4)
    ed = elementary_divisors([[0, 0], [0, 0]])
    assert ed.divisors == () and ed.free_rank == 2
    assert cokernel_torsion([[2, 4], [6, 8]]) == 8      # divisors (2, 4), |det| = 8


def test_snf_certificate_and_oracle():
    rng = random.Random(0)
    for _ in range(300):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = rand_matrix(rng, m, n)
        s = smith_normal_form(M)
        assert linalg.matmul(linalg.matmul(s.U, M), s.V) == s.D
        assert linalg.matmul(s.U, s.U_inv) == linalg.identity(m)
        assert linalg.matmul(s.V, s.V_inv) == linalg.identity(n)
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert s.D[i][j] == 0
        divs = s.divisors.divisors
        assert all(b % a == 0 for a, b in zip(divs, divs[1:]))
        assert all(d > 0 for d in divs)
        if m <= 4 and n <= 4:
            assert divs == oracle_divisors(M)
            assert cokernel_torsion(M) == oracle_torsion(M)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=4))
def test_gabber_inequality(M):
    g = gabber_bound(M)
    assert g.holds
    assert BigBound.power(g.torsion) <= g.bound
    assert g.torsion == oracle_torsion(M)


def test_gabber_equality_on_scalar_diagonals():
    for a in range(1, 7):
        for n in range(1, 5):
            M = [[a if i == j else 0 for j in range(n)] for i in range(n)]
            g = gabber_bound(M)
            assert g.torsion == a**n
            assert g.bound.compare(g.torsion) == 0


def test_identity_gabber():
    g = gabber_bound([[1, 0], [0, 1]])
    assert g.torsion == 1 and g.bound == BigBound.one() and g.holds


# -- card_ell -----------------------------------------------------------------

def test_card_ell_examples():
    assert card_ell((2, 8), 3) == 4
    assert card_ell((4,), 5) == 1
    assert card_ell((12,), 3) == 2         # lcm{1,2,3} = 6
    assert card_ell((), 4) == 1
    with pytest.raises(DomainError):
        card_ell((4,), 0)


def test_card_ell_matches_brute_force_small():
    for orders in [(2,), (6,), (2, 4), (3, 9), (2, 2, 4), (5, 10), (12,), (4, 8)]:
        for ell in range(1, 8):
            assert card_ell(orders, ell) == brute_card_ell(orders, ell), (orders, ell)


# -- chain complexes ---------------------------------------------------------------

def kernel_basis(M, n):
    """Integer basis of ker M (as columns), from the SNF column transform."""
    if not M:
        return linalg.identity(n)
    s = smith_normal_form(M)
    r = len(s.divisors.divisors)
    return [[s.V[i][j] for j in range(r, n)] for i in range(n)]


def random_complex(rng, dims, size=2):
    """Boundaries d_k with d_k d_{k+1} = 0, built from kernel bases times random integer matrices."""
    maps = []
    prev = None
    for k in range(1, len(dims)):
        lo, hi = dims[k - 1], dims[k]
        if prev is None:
            M = rand_matrix(rng, lo, hi, -size, size)
        else:
            K = kernel_basis(prev, lo)
            kdim = len(K[0]) if K and K[0] else 0
            if kdim == 0:
                M = [[0] * hi for _ in range(lo)]
            else:
                R = rand_matrix(rng, kdim, hi, -size, size)
                M = linalg.matmul(K, R)
        maps.append(M)
        prev = M
    return maps


def test_chain_complex_rejects_nonzero_composite():
    with pytest.raises(BoundaryError):
        ChainComplex([[[1, 0]], [[1], [1]]])


def test_homology_torsion_examples():
    assert homology_torsion(ChainComplex([[[2]]]), 0) == 2
    assert homology_torsion(ChainComplex([[[0]]]), 0) == 1
    # d_2 = [3] hits three times the 1-cycle, so H_1 = Z/3
    cx = ChainComplex([[[0]], [[3]]])
    assert homology_torsion(cx, 1) == 3
    assert homology_torsion(cx, 0) == 1


def test_homology_torsion_matches_cokernel_oracle():
    """Torsion of H_k equals torsion of C_k / im d_{k+1} since C_k / ker d_k is free."""
    rng = random.Random(9)
    for _ in range(60):
        dims = [rng.randint(1, 4) for _ in range(4)]
        cx = ChainComplex(random_complex(rng, dims))
        for k in range(len(dims)):
            d = cx.boundary(k + 1)
            expected = oracle_torsion(d.tolist()) if d.rows and d.cols else 1
            assert homology_torsion(cx, k) == expected


def test_complex_torsion_bound_formula():
    b = complex_torsion_bound([4, 6], 3)
    assert b[0] == BigBound.power(3, 2)      # beta^(min(6, 4)/2)
    assert b[1] == BigBound.one()            # alpha_2 = 0
    with pytest.raises(DomainError):
        complex_torsion_bound([1], 0)


def test_int_matrix_shapes():
    Z = IntMatrix.zero(0, 3)
    assert Z.rows == 0 and Z.cols == 3 and Z.is_zero()
    with pytest.raises(DomainError):
        IntMatrix.of([[1, 2], [3]])
