"""Shared test lattices and random generators."""

import random
from fractions import Fraction as Q

from hermlat.field_core import preset
from hermlat.hermitian import HermitianLattice, UnimodularMatrix, gamma_action, is_well_rounded, normalize_minimum

H = Q(1, 2)

# (field, Hermitian Gram); complex entries are coordinate lists in the power basis
RAW = [
    ("rationals", [[1]]),
    ("rationals", [[Q(3, 2)]]),
    ("rationals", [[1, 0], [0, 1]]),
    ("rationals", [[1, H], [H, 1]]),
    ("rationals", [[1, 0], [0, 2]]),
    ("rationals", [[2, 1], [1, 3]]),
    ("rationals", [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
    ("rationals", [[1, H, H], [H, 1, H], [H, H, 1]]),
    ("rationals", [[1, H, 0], [H, 1, H], [0, H, 1]]),
    ("rationals", [[1, 0, 0], [0, 1, 0], [0, 0, 2]]),
    ("rationals", [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]]),
    ("rationals", [[2, 0, 0, 1], [0, 2, 0, 1], [0, 0, 2, 1], [1, 1, 1, 2]]),
    ("rationals", [[1 if i == j else 0 for j in range(6)] for i in range(6)]),
    ("rationals", [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(6)] for i in range(6)]),
    ("gaussian", [[H]]),
    ("gaussian", [[1]]),
    ("gaussian", [[Q(3, 4)]]),
    ("gaussian", [[H, 0], [0, H]]),
    ("gaussian", [[H, [Q(1, 4), Q(1, 4)]], [[Q(1, 4), Q(-1, 4)], H]]),
    ("gaussian", [[1, [0, H]], [[0, -H], 1]]),
    ("gaussian", [[H, 0], [0, 1]]),
    ("gaussian", [[H, 0, 0], [0, H, 0], [0, 0, H]]),
    ("gaussian", [[1, [Q(1, 4), 0], 0], [[Q(1, 4), 0], 1, [0, Q(1, 4)]], [0, [0, Q(-1, 4)], 1]]),
    ("eisenstein", [[H]]),
    ("eisenstein", [[1]]),
    ("eisenstein", [[H, 0], [0, H]]),
    ("eisenstein", [[H, Q(1, 4)], [Q(1, 4), H]]),
    ("eisenstein", [[1, [0, H]], [[H, -H], 1]]),
    ("eisenstein", [[H, 0, 0], [0, H, 0], [0, 0, H]]),
]

EXTRA_WELL_ROUNDED = [
    ("real_quad_2", [[H]]),
    ("real_quad_2", [[H, 0], [0, H]]),
    ("real_quad_5", [[H]]),
    ("real_quad_5", [[H, 0], [0, H]]),
    ("cyclotomic_5", [[Q(1, 4)]]),
    ("cyclotomic_5", [[Q(1, 4), 0], [0, Q(1, 4)]]),
]


def corpus():
    """Exact-mode test lattices of real rank <= 6 over Q, Q(i), Q(sqrt -3)."""
    return [(f"{name}#{i}", HermitianLattice(preset(name), gram)) for i, (name, gram) in enumerate(RAW)]


def well_rounded_corpus(max_rank=3, images=2, seed=7):
    """Normalised well-rounded lattices with N <= max_rank, plus a few GL_N(O_F) images of each."""
    rng = random.Random(seed)
    out = []
    for label, L in corpus() + [(f"{n}+{i}", HermitianLattice(preset(n), g)) for i, (n, g) in enumerate(EXTRA_WELL_ROUNDED)]:
        if L.rank > max_rank:
            continue
        L = normalize_minimum(L)
        if not is_well_rounded(L):
            continue
        out.append((label, L))
        for k in range(images):
            out.append((f"{label}/g{k}", gamma_action(random_unimodular(L.field, L.rank, rng, steps=3, size=1), L)))
    return out


def units(F):
    if F.name == "gaussian":
        return [F([1, 0]), F([-1, 0]), F([0, 1]), F([0, -1])]
    if F.name == "eisenstein":
        w = F([0, 1])
        return [w**k for k in range(6)]
    return [F.one(), -F.one()]


def random_integer(F, rng, size=2):
    return F([rng.randint(-size, size) for _ in range(F.degree)])


def random_unimodular(F, N, rng, steps=4, size=2):
    """Product of elementary transvections, a permutation and a diagonal unit matrix."""
    M = [[F.one() if i == j else F.zero() for j in range(N)] for i in range(N)]
    for _ in range(steps):
        if N < 2:
            break
        i, j = rng.sample(range(N), 2)
        c = random_integer(F, rng, size)
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    perm = list(range(N))
    rng.shuffle(perm)
    us = units(F)
    row_units = [rng.choice(us) for _ in range(N)]
    M = [[M[perm[i]][j] * row_units[i] for j in range(N)] for i in range(N)]
    return UnimodularMatrix(F, M)
