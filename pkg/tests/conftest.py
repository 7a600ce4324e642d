"""Shared generators and worked structures for the test suite.

Random data is drawn from seeded random.Random instances so every run is
deterministic.  The helpers build sparse polynomials with small rational
coefficients, which keeps the exact arithmetic fast.
"""

import random
from fractions import Fraction

import pytest

from holomult.calculus import Form, Multivector, VectorField, VolumeForm
from holomult.poisson import Bivector
from holomult.poly import CPoly
from holomult.scalars import GaussianRational


def random_gaussian(rng, max_num=4, allow_zero=True):
    while True:
        re = Fraction(rng.randint(-max_num, max_num), rng.choice([1, 1, 2, 3]))
        im = Fraction(rng.randint(-max_num, max_num), rng.choice([1, 1, 2]))
        value = GaussianRational(re, im)
        if allow_zero or value:
            return value


def random_cpoly(rng, nvars, max_degree=3, max_terms=4, allow_zero=True):
    terms = {}
    for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
        degree = rng.randint(0, max_degree)
        mono = [0] * nvars
        for _ in range(degree):
            mono[rng.randrange(nvars)] += 1
        terms[tuple(mono)] = random_gaussian(rng)
    poly = CPoly(nvars, terms)
    if not allow_zero or poly:
        return poly
    return poly


def random_nonzero_cpoly(rng, nvars, max_degree=3, max_terms=4):
    while True:
        poly = random_cpoly(rng, nvars, max_degree, max_terms)
        if poly:
            return poly


def random_field(rng, nvars, max_degree=2, max_terms=3):
    return VectorField(
        nvars, [random_cpoly(rng, nvars, max_degree, max_terms) for _ in range(nvars)]
    )


def random_form(rng, nvars, grade, max_degree=2, max_terms=2):
    from itertools import combinations

    comps = {}
    for key in combinations(range(1, nvars + 1), grade):
        if rng.random() < 0.7:
            comps[key] = random_cpoly(rng, nvars, max_degree, max_terms)
    return Form(nvars, grade, comps)


def random_multivector(rng, nvars, grade, max_degree=2, max_terms=2):
    from itertools import combinations

    comps = {}
    for key in combinations(range(1, nvars + 1), grade):
        if rng.random() < 0.7:
            comps[key] = random_cpoly(rng, nvars, max_degree, max_terms)
    return Multivector(nvars, grade, comps)


def parse3(text):
    from holomult.parser import parse_expr

    return parse_expr(text, 3)


@pytest.fixture
def rng():
    return random.Random(20260810)


def product_structure_bivector():
    """The cyclic quadratic bracket on C^3 whose modular field vanishes."""
    n = 3
    z1, z2, z3 = (CPoly.var(n, k) for k in (1, 2, 3))
    return Bivector(
        n,
        {
            (1, 2): 2 * z3 - z1 * z2,
            (1, 3): z1 * z3 - 2 * z2,
            (2, 3): 2 * z1 - z2 * z3,
        },
    )


def sl2_bivector():
    """Linear bracket with entries 2z2, -2z3, z1 (rank-2 generic orbits)."""
    n = 3
    z1, z2, z3 = (CPoly.var(n, k) for k in (1, 2, 3))
    return Bivector(n, {(1, 2): 2 * z2, (1, 3): -2 * z3, (2, 3): z1})


def sl2_casimir():
    z1, z2, z3 = (CPoly.var(3, k) for k in (1, 2, 3))
    return z1 * z1 + (4 * z2) * z3


def cyclic_invariant():
    z1, z2, z3 = (CPoly.var(3, k) for k in (1, 2, 3))
    return z1 * z1 + z2 * z2 + z3 * z3 - z1 * z2 * z3


def quadratic_system(a):
    """Field with components z^i * sum_j a[i][j] z^j on C^3."""
    n = 3
    zs = [CPoly.var(n, k) for k in (1, 2, 3)]
    comps = []
    for i in range(n):
        acc = CPoly.zero(n)
        for j in range(n):
            if a[i][j]:
                acc = acc + (zs[i] * zs[j]).scale(a[i][j])
        comps.append(acc)
    return VectorField(n, comps)


# the worked integer-exponent instance: column condition sum_i (c_i - 1) a_ij = a_jj
QUAD_A = [[0, 0, 1], [0, 1, 0], [1, 1, -1]]
QUAD_C = (0, 2, 1)


def volume(n, weight=1):
    return VolumeForm(n, weight)
