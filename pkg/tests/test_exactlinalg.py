"""Exact linear algebra kernel: solve, rank, Smith form, cyclotomics."""

import random

from newtonstrata.exactlinalg import (
    charpoly,
    cyclotomic,
    divisors,
    euler_phi,
    integer_kernel,
    inverse,
    mat_mul,
    mat_vec,
    poly_divmod,
    poly_mul,
    rank,
    smith_normal_form,
    solve,
)
from newtonstrata.rationals import Q


def test_solve_and_inverse():
    m = [[Q(2), Q(1)], [Q(1), Q(3)]]
    x = solve(m, [Q(5), Q(10)])
    assert [sum(m[i][j] * x[j] for j in range(2)) for i in range(2)] == [5, 10]
    inv = inverse(m)
    assert mat_mul(m, inv) == [[1, 0], [0, 1]]


def test_rank():
    assert rank([[Q(1), Q(2)], [Q(2), Q(4)]]) == 1
    assert rank([[Q(1), Q(0)], [Q(0), Q(1)]]) == 2
    assert rank([[Q(0)]]) == 0


def test_charpoly_constant_first():
    # x^2 - 5x + 2 for [[2,1],[2,3]]: det=4, trace=5
    p = charpoly([[2, 1], [2, 3]])
    assert p == [4, -5, 1]


def test_smith_normal_form():
    rng = random.Random(7)
    for _ in range(20):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
        d, u, v = smith_normal_form(m)
        assert mat_mul(mat_mul(u, m), v) == d
        diag = [d[i][i] for i in range(min(rows, cols))]
        for a, b in zip(diag, diag[1:]):
            if a and b:
                assert b % a == 0
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert d[i][j] == 0


def test_integer_kernel():
    # kernel of (1 2 3) is rank 2; every member must be annihilated
    ker = integer_kernel([[1, 2, 3]])
    assert len(ker) == 2
    for v in ker:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0


def test_cyclotomic():
    assert cyclotomic(1) == [-1, 1]
    assert cyclotomic(2) == [1, 1]
    assert cyclotomic(3) == [1, 1, 1]
    assert cyclotomic(4) == [1, 0, 1]
    assert cyclotomic(6) == [1, -1, 1]
    # product over divisors of 12 reproduces x^12 - 1
    prod = [1]
    for d in divisors(12):
        prod = poly_mul(prod, cyclotomic(d))
    assert prod == [-1] + [0] * 11 + [1]


def test_poly_divmod():
    q, r = poly_divmod([-1, 0, 1], [1, 1])  # (x^2-1)/(x+1)
    assert q == [-1, 1] and all(c == 0 for c in r)


def test_euler_phi():
    assert [euler_phi(k) for k in (1, 2, 3, 4, 6, 12)] == [1, 1, 2, 2, 2, 4]


def test_mat_vec():
    assert tuple(mat_vec([[1, 2], [3, 4]], [5, 6])) == (17, 39)
