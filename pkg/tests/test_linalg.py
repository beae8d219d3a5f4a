import random
from fractions import Fraction

import pytest

from higherar.linalg import (ExactMatrix, inverse, is_invertible, kernel_basis,
                             minimal_polynomial, rank, rref, solve,
                             split_spectrum)


def test_rref_identity():
    m = ExactMatrix.identity(2)
    red, piv, rk = rref(m)
    assert red == m and piv == [0, 1] and rk == 2


def test_rref_proportional_rows():
    red, piv, rk = rref(ExactMatrix.from_rows([[1, 2], [2, 4]]))
    assert red.data == [[1, 2], [0, 0]]
    assert piv == [0] and rk == 1


def test_rref_permutation():
    red, piv, rk = rref(ExactMatrix.from_rows([[0, 1], [1, 0]]))
    assert red == ExactMatrix.identity(2) and rk == 2


def test_kernel_identity_and_zero():
    assert kernel_basis(ExactMatrix.identity(3)).cols == 0
    k = kernel_basis(ExactMatrix.zero(2, 3))
    assert k.cols == 3 and k == ExactMatrix.identity(3)


def test_kernel_single_row():
    k = kernel_basis(ExactMatrix.from_rows([[1, 1]]))
    assert k.cols == 1 and k.col(0) == [Fraction(-1), Fraction(1)]


def test_solve_examples():
    assert solve(ExactMatrix.identity(2), [3, 5]) == [3, 5]
    assert solve(ExactMatrix.from_rows([[1, 1]]), [2]) == [2, 0]
    assert solve(ExactMatrix.from_rows([[0]]), [1]) is None


def test_split_spectrum_examples():
    spec = split_spectrum(ExactMatrix.from_rows([[1, 0], [0, 2]]))
    assert [(lam, p.data) for lam, p in spec] == [
        (Fraction(1), [[1, 0], [0, 0]]), (Fraction(2), [[0, 0], [0, 1]])]
    ident = split_spectrum(ExactMatrix.identity(3))
    assert len(ident) == 1 and ident[0][0] == 1
    assert ident[0][1] == ExactMatrix.identity(3)
    assert split_spectrum(ExactMatrix.from_rows([[0, 1], [-1, 0]])) is None


def test_split_spectrum_not_squarefree():
    # nontrivial Jordan block: squarefree test must reject
    assert split_spectrum(ExactMatrix.from_rows([[1, 1], [0, 1]])) is None


def _random_matrix(rng, rows, cols, lo=-4, hi=4):
    return ExactMatrix(rows, cols,
                       [[Fraction(rng.randint(lo, hi)) for _ in range(cols)]
                        for _ in range(rows)])


def test_rank_nullity_and_product_invariants():
    rng = random.Random(11)
    for _ in range(25):
        m = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        red, piv, rk = rref(m)
        ker = kernel_basis(m)
        assert rk + ker.cols == m.cols
        assert (red * ker).is_zero()
        assert (m * ker).is_zero()
        again, piv2, rk2 = rref(red)
        assert again == red and piv2 == piv


def test_spectrum_projector_invariants():
    rng = random.Random(5)
    for _ in range(10):
        # conjugate a split diagonal matrix by a random invertible one
        n = rng.randint(2, 4)
        d = ExactMatrix(n, n)
        eigs = [Fraction(rng.randint(-2, 2)) for _ in range(n)]
        for i in range(n):
            d.data[i][i] = eigs[i]
        while True:
            g = _random_matrix(rng, n, n, -2, 2)
            if is_invertible(g):
                break
        m = g * d * inverse(g)
        spec = split_spectrum(m)
        assert spec is not None
        total = ExactMatrix.zero(n, n)
        for lam, p in spec:
            assert p * p == p
            assert m * p == p.scale(lam)
            total = total + p
        assert total == ExactMatrix.identity(n)
        for i, (_, p) in enumerate(spec):
            for j, (_, q) in enumerate(spec):
                if i != j:
                    assert (p * q).is_zero()


def test_minimal_polynomial_degree():
    m = ExactMatrix.from_rows([[0, 1], [0, 0]])
    # x^2
    assert minimal_polynomial(m) == [Fraction(0), Fraction(0), Fraction(1)]
