"""Unit tests for the symmetric-matrix core.

Expected spectra come from closed forms (circulant eigenvalues) and, for
random instances, from numpy's independent eigensolver, never from the
module under test.
"""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from twodist import linalg
from twodist.errors import AmbiguousCase, NotInRange

GOLDEN = (1 + math.sqrt(5)) / 2


def cycle_adjacency(n):
    A = np.zeros((n, n))
    for i in range(n):
        A[i, (i + 1) % n] = 1
        A[(i + 1) % n, i] = 1
    return A


def cycle_eigenvalues(n):
    # closed form for circulant adjacency: 2 cos(2 pi k / n)
    return sorted((2 * math.cos(2 * math.pi * k / n) for k in range(n)),
                  reverse=True)


def random_symmetric(rng, n, scale=2.0):
    A = np.array([[rng.uniform(-scale, scale) for _ in range(n)]
                  for _ in range(n)])
    return (A + A.T) / 2


def test_eigen_c4_matches_closed_form():
    spec = linalg.eigen_decompose(cycle_adjacency(4))
    assert np.allclose(spec.values, [2.0, 0.0, 0.0, -2.0], atol=1e-12)


def test_eigen_c5_matches_closed_form():
    spec = linalg.eigen_decompose(cycle_adjacency(5))
    expected = cycle_eigenvalues(5)
    assert np.allclose(spec.values, expected, atol=1e-12)
    # smallest eigenvalue is -golden ratio
    assert abs(spec.values[-1] + GOLDEN) < 1e-12


def test_eigen_residual_and_orthogonality():
    rng = random.Random(811)
    for _ in range(50):
        n = rng.randint(1, 8)
        M = random_symmetric(rng, n)
        spec = linalg.eigen_decompose(M)
        scale = max(1.0, float(np.max(np.abs(M))))
        for i in range(n):
            resid = M @ spec.vectors[:, i] - spec.values[i] * spec.vectors[:, i]
            assert np.linalg.norm(resid) <= 1e-9 * scale
        assert np.allclose(spec.vectors.T @ spec.vectors, np.eye(n), atol=1e-12)
        assert np.allclose(sorted(spec.values), np.linalg.eigvalsh(M), atol=1e-9)


def test_eigen_values_descending():
    rng = random.Random(23)
    for _ in range(20):
        M = random_symmetric(rng, rng.randint(2, 7))
        vals = linalg.eigen_decompose(M).values
        assert all(vals[i] >= vals[i + 1] for i in range(len(vals) - 1))


def test_inertia_diagonal():
    assert linalg.inertia(np.diag([2.0, -3.0, 0.0])) == (1, 1, 1)


def test_inertia_c4_shifted():
    # eigenvalues of A(C4) + 2I are 4, 2, 2, 0
    M = cycle_adjacency(4) + 2 * np.eye(4)
    assert linalg.inertia(M) == (3, 0, 1)
    assert linalg.rank_sym(M) == 3


def test_rank_all_ones():
    assert linalg.rank_sym(np.ones((3, 3))) == 1


def test_rank_c5_at_golden_shift():
    # -golden is an eigenvalue of C5 with multiplicity 2
    M = cycle_adjacency(5) + GOLDEN * np.eye(5)
    assert linalg.rank_sym(M) == 3


def test_in_range_diagonal():
    M = np.diag([1.0, 0.0])
    assert linalg.in_range(M, np.array([1.0, 0.0]))
    assert not linalg.in_range(M, np.array([0.0, 1.0]))


def test_in_range_c4():
    M = cycle_adjacency(4) + 2 * np.eye(4)
    assert linalg.in_range(M, np.ones(4))
    # (1,-1,1,-1) spans the kernel
    assert not linalg.in_range(M, np.array([1.0, -1.0, 1.0, -1.0]))


def test_solve_in_range_c4():
    M = cycle_adjacency(4) + 2 * np.eye(4)
    x = linalg.solve_in_range(M, np.ones(4))
    assert np.allclose(x, np.full(4, 0.25), atol=1e-12)
    with pytest.raises(NotInRange):
        linalg.solve_in_range(M, np.array([1.0, -1.0, 1.0, -1.0]))


def test_solve_is_minimum_norm():
    rng = random.Random(97)
    for _ in range(25):
        n = rng.randint(2, 7)
        r = rng.randint(1, n - 1)
        B = np.array([[rng.uniform(-1, 1) for _ in range(r)] for _ in range(n)])
        M = B @ B.T  # rank <= r, PSD
        v = M @ np.array([rng.uniform(-1, 1) for _ in range(n)])
        x = linalg.solve_in_range(M, v)
        spec = linalg.eigen_decompose(M)
        cut = linalg.scaled_tol(M)
        null = spec.vectors[:, np.abs(spec.values) <= cut]
        # minimum-norm solution is orthogonal to the kernel
        assert np.allclose(null.T @ x, 0, atol=1e-8)


def test_quadform_independent_of_solution():
    M = cycle_adjacency(4) + 2 * np.eye(4)
    v = np.ones(4)
    q = linalg.quadform_group_inverse(M, v)
    assert abs(q - 1.0) < 1e-12
    # shifting the solution along the kernel leaves v.x unchanged
    x = linalg.solve_in_range(M, v) + 3.7 * np.array([1.0, -1.0, 1.0, -1.0])
    assert abs(float(v @ x) - q) < 1e-9
    # and the materialized group inverse agrees
    q2 = float(v @ linalg.group_inverse(M) @ v)
    assert abs(q2 - q) < 1e-9


def test_group_inverse_identities():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(1, 7)
        r = rng.randint(0, n)
        B = np.array([[rng.uniform(-1, 1) for _ in range(max(r, 1))]
                      for _ in range(n)])
        M = B @ B.T if r else np.zeros((n, n))
        M = M - 0.5 * np.trace(M) / n * np.eye(n)  # make it indefinite
        M = (M + M.T) / 2
        X = linalg.group_inverse(M)
        assert np.allclose(M @ X @ M, M, atol=1e-8)
        assert np.allclose(X @ M @ X, X, atol=1e-8)
        assert np.allclose(M @ X, X @ M, atol=1e-8)
        assert linalg.is_one_inverse(M, X)


def test_group_inverse_diagonal():
    X = linalg.group_inverse(np.diag([2.0, 0.0]))
    assert np.allclose(X, np.diag([0.5, 0.0]), atol=1e-12)


def test_is_one_inverse_rejects():
    M = np.diag([1.0, 0.0])
    assert not linalg.is_one_inverse(M, np.diag([2.0, 0.0]))


def test_rank_one_update_worked_cases():
    # boundary case: unit update of the identity exactly cancels a direction
    res, case = linalg.rank_one_update_inertia(
        np.eye(2), np.array([1.0, 0.0]), -1.0)
    assert case == 4 and res == (1, 0, 1)
    # update outside the column space adds a negative eigenvalue
    res, case = linalg.rank_one_update_inertia(
        np.diag([1.0, 0.0]), np.array([0.0, 1.0]), -2.0)
    assert case == 1 and res == (1, 1, 0)
    # s < -1 swaps a positive eigenvalue for a negative one
    res, case = linalg.rank_one_update_inertia(
        np.diag([1.0, 0.0]), np.array([1.0, 0.0]), -2.0)
    assert case == 3 and res == (0, 1, 1)
    # positive update outside the column space adds a positive eigenvalue
    res, case = linalg.rank_one_update_inertia(
        np.diag([-1.0, 0.0]), np.array([0.0, 1.0]), 2.0)
    assert case == 1 and res == (1, 1, 0)
    # small perturbation leaves the inertia alone
    res, case = linalg.rank_one_update_inertia(
        np.eye(2), np.array([1.0, 0.0]), -0.5)
    assert case == 2 and res == (2, 0, 0)


def test_rank_one_update_random_agrees_with_direct():
    rng = random.Random(440)
    checked = 0
    for _ in range(100):
        n = rng.randint(1, 8)
        if rng.random() < 0.5:
            M = random_symmetric(rng, n)
        else:
            r = rng.randint(0, n)
            B = np.array([[rng.uniform(-1, 1) for _ in range(max(r, 1))]
                          for _ in range(n)])
            M = B @ B.T if r else np.zeros((n, n))
        if rng.random() < 0.5:
            u = M @ np.array([rng.uniform(-1, 1) for _ in range(n)])
        else:
            u = np.array([rng.uniform(-1, 1) for _ in range(n)])
        c = rng.choice([-1, 1]) * rng.uniform(0.1, 3.0)
        try:
            res, case = linalg.rank_one_update_inertia(M, u, c)
        except AmbiguousCase:
            continue
        expected = np.linalg.eigvalsh(M + c * np.outer(u, u))
        cut = linalg.scaled_tol(M + c * np.outer(u, u))
        oracle = (int(np.sum(expected > cut)), int(np.sum(expected < -cut)))
        assert (res.pos, res.neg) == oracle
        checked += 1
    assert checked >= 90


def test_ldl_rational_basic():
    fact = linalg.ldl_rational([[Fraction(2), Fraction(1)],
                                [Fraction(1), Fraction(2)]])
    assert fact.pivots == [Fraction(2), Fraction(3, 2)]
    assert fact.rank == 2 and fact.psd
    assert fact.inertia() == (2, 0, 0)


def test_ldl_rational_c4_shift():
    A = [[Fraction(int(x)) for x in row] for row in cycle_adjacency(4)]
    for i in range(4):
        A[i][i] = Fraction(2)
    fact = linalg.ldl_rational(A)
    assert fact.rank == 3 and fact.psd
    assert fact.inertia() == (3, 0, 1)
    x = fact.solve([Fraction(1)] * 4)
    # a particular solution, not necessarily minimum-norm; the quadratic
    # form j.x is solution-independent and equals 1
    assert all(sum(A[i][j] * x[j] for j in range(4)) == 1 for i in range(4))
    assert sum(x) == 1
    assert not fact.in_range([1, -1, 1, -1])


def test_ldl_rational_zero_diagonal_block():
    fact = linalg.ldl_rational([[0, 1], [1, 0]])
    assert fact.pivots == [1, -1]
    assert not fact.psd
    assert fact.inertia() == (1, 1, 0)


def test_ldl_rational_zero_matrix():
    fact = linalg.ldl_rational([[0, 0], [0, 0]])
    assert fact.rank == 0 and fact.psd
    assert fact.inertia() == (0, 0, 2)


def test_ldl_rational_indefinite():
    fact = linalg.ldl_rational([[1, 0], [0, -1]])
    assert not fact.psd
    assert fact.inertia() == (1, 1, 0)


def test_exact_and_float_inertia_agree():
    rng = random.Random(77)
    for _ in range(60):
        n = rng.randint(1, 6)
        M = [[Fraction(rng.randint(-4, 4), rng.randint(1, 4))
              for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i):
                M[j][i] = M[i][j]
        exact = linalg.ldl_rational(M).inertia()
        approx = linalg.inertia(np.array([[float(x) for x in row]
                                          for row in M]))
        assert exact == approx


def test_solve_rational_inconsistent():
    assert linalg.solve_rational([[1, 0], [0, 0]], [0, 1]) is None


def test_rank_one_update_exact():
    res, case = linalg.rank_one_update_inertia_exact(
        [[1, 0], [0, 1]], [1, 0], Fraction(-1))
    assert case == 4 and res == (1, 0, 1)
    res, case = linalg.rank_one_update_inertia_exact(
        [[1, 0], [0, 0]], [1, 0], -2)
    assert case == 3 and res == (0, 1, 1)
