import random

import pytest

from holomult.linsolve import determinant, invert_matrix, matrix_mult, solve_linear
from holomult.scalars import GaussianRational

from conftest import random_gaussian

i = GaussianRational(0, 1)


def test_identity_system():
    rhs = [GaussianRational(3), GaussianRational(0, 5)]
    solution = solve_linear([[1, 0], [0, 1]], rhs)
    assert solution.is_unique
    assert solution.particular == rhs


def test_rank_one_nullspace():
    solution = solve_linear([[1, i], [-i, 1]], [0, 0])
    assert solution.status == "family"
    assert solution.rank == 1
    assert len(solution.nullspace) == 1
    basis = solution.nullspace[0]
    # the basis vector is proportional to (i, -1)... check A*v == 0 and parallelism
    assert basis[0] * GaussianRational(-1) == basis[1] * i
    for row in ([1, i], [-i, 1]):
        acc = GaussianRational(0)
        for coeff, value in zip(row, basis):
            acc = acc + GaussianRational.coerce(coeff) * value
        assert not acc


def test_inconsistent_tall_system():
    solution = solve_linear([[1], [1]], [1, 2])
    assert solution.status == "inconsistent"


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_linear([[1, 2]], [1, 2])


def test_solutions_satisfy_system_randomized():
    rng = random.Random(7)
    for _ in range(40):
        nrows = rng.randint(1, 4)
        ncols = rng.randint(1, 4)
        matrix = [[random_gaussian(rng) for _ in range(ncols)] for _ in range(nrows)]
        rhs = [random_gaussian(rng) for _ in range(nrows)]
        solution = solve_linear(matrix, rhs)
        if not solution.is_consistent:
            continue
        for row, target in zip(matrix, rhs):
            acc = GaussianRational(0)
            for coeff, value in zip(row, solution.particular):
                acc = acc + coeff * value
            assert acc == target
        for vec in solution.nullspace:
            for row in matrix:
                acc = GaussianRational(0)
                for coeff, value in zip(row, vec):
                    acc = acc + coeff * value
                assert not acc


def test_minimal_support_particular():
    # one pivot, one free column: the free coordinate stays zero
    solution = solve_linear([[1, 1]], [5])
    assert solution.status == "family"
    assert solution.particular == [GaussianRational(5), GaussianRational(0)]


def test_invert_matrix():
    m = [[1, i], [0, 2]]
    inv = invert_matrix(m)
    product = matrix_mult(m, inv)
    assert product[0][0] == 1 and product[1][1] == 1
    assert not product[0][1] and not product[1][0]
    with pytest.raises(ValueError):
        invert_matrix([[1, 1], [1, 1]])


def test_determinant():
    assert determinant([[1, i], [-i, 1]]) == GaussianRational(0)
    assert determinant([[2, 0], [0, 3]]) == GaussianRational(6)
    assert determinant([[0, 1], [1, 0]]) == GaussianRational(-1)
