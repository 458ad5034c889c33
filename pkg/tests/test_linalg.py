"""Modular elimination and integer Smith normal form against oracles."""

import random
from itertools import product

import numpy as np
import pytest

from cechlift.linalg import (
    GfpSpan,
    invariant_factors,
    nullspace_mod_p,
    rank_mod_p,
    rref_mod_p,
    sample_kernel_mod_m,
    smith_normal_form,
    solve_mod_m,
    solve_mod_p,
)
from oracles import bareiss_det, exhaustive_solvable_mod, gf2_rank, int_matmul, naive_rank_mod_p


def _random_matrix(rng, rows, cols, lo, hi):
    return np.array([[rng.randrange(lo, hi) for _ in range(cols)] for _ in range(rows)])


def _bitmask_rows(mat):
    return [int(sum((int(x) % 2) << j for j, x in enumerate(row))) for row in mat]


def test_rref_known_cases():
    rref, pivots = rref_mod_p(np.array([[1, 1], [1, 1]]), 2)
    assert list(pivots) == [0]
    assert rref.tolist() == [[1, 1], [0, 0]]
    rref, pivots = rref_mod_p(np.array([[0, 1], [1, 0]]), 2)
    assert list(pivots) == [0, 1]
    assert rref.tolist() == [[1, 0], [0, 1]]


def test_rank_against_bitmask_oracle():
    rng = random.Random(2)
    for _ in range(200):
        m = _random_matrix(rng, rng.randrange(1, 8), rng.randrange(1, 8), 0, 2)
        assert rank_mod_p(m, 2) == gf2_rank(_bitmask_rows(m))


def test_rank_against_naive_oracle_odd_primes():
    rng = random.Random(3)
    for p in (3, 5, 7):
        for _ in range(60):
            m = _random_matrix(rng, rng.randrange(1, 7), rng.randrange(1, 7), -10, 10)
            assert rank_mod_p(m, p) == naive_rank_mod_p(m.tolist(), p)


def test_solve_mod_p_matches_exhaustive_search():
    rng = random.Random(4)
    for p in (2, 3):
        for _ in range(60):
            rows, cols = rng.randrange(1, 4), rng.randrange(1, 5)
            a = _random_matrix(rng, rows, cols, 0, p)
            b = np.array([rng.randrange(p) for _ in range(rows)])
            x = solve_mod_p(a, b, p)
            solvable = exhaustive_solvable_mod(a.tolist(), b.tolist(), p)
            assert (x is not None) == solvable
            if x is not None:
                assert np.array_equal((a @ x) % p, b % p)


def test_solve_mod_p_solution_checks_for_larger_prime():
    rng = random.Random(5)
    for _ in range(40):
        a = _random_matrix(rng, 4, 6, -20, 20)
        x0 = np.array([rng.randrange(11) for _ in range(6)])
        b = (a @ x0) % 11
        x = solve_mod_p(a, b, 11)
        assert x is not None
        assert np.array_equal((a @ x) % 11, b)


def test_nullspace_mod_p():
    rng = random.Random(6)
    for p in (2, 3, 5):
        for _ in range(40):
            a = _random_matrix(rng, rng.randrange(1, 6), rng.randrange(1, 6), 0, p)
            basis = nullspace_mod_p(a, p)
            assert len(basis) == a.shape[1] - rank_mod_p(a, p)
            for v in basis:
                assert not np.any((a @ v) % p)
            if basis:
                stacked = np.array(basis)
                assert rank_mod_p(stacked, p) == len(basis)


def test_gfp_span_incremental():
    rng = random.Random(7)
    for _ in range(50):
        p = rng.choice((2, 3))
        cols = rng.randrange(1, 7)
        span = GfpSpan(cols, p)
        rows = []
        for _ in range(rng.randrange(1, 9)):
            v = np.array([rng.randrange(p) for _ in range(cols)])
            rows.append(v)
            span.insert(v)
        assert span.rank == rank_mod_p(np.array(rows), p)
        combo = np.zeros(cols, dtype=np.int64)
        for v in rows:
            if rng.random() < 0.5:
                combo = (combo + rng.randrange(1, p + 1) * v) % p
        assert span.contains(combo)


def test_gfp_span_rejects_outside_vector():
    span = GfpSpan(3, 2)
    span.insert(np.array([1, 1, 0]))
    assert span.contains(np.array([1, 1, 0]))
    assert not span.contains(np.array([0, 0, 1]))
    assert not span.contains(np.array([1, 0, 0]))


def test_smith_normal_form_properties():
    rng = random.Random(8)
    for _ in range(100):
        rows, cols = rng.randrange(1, 6), rng.randrange(1, 7)
        a = [[rng.randrange(-9, 10) for _ in range(cols)] for _ in range(rows)]
        snf = smith_normal_form(a)
        assert abs(bareiss_det(snf.u)) == 1
        assert abs(bareiss_det(snf.v)) == 1
        assert int_matmul(int_matmul(snf.u, a), snf.v) == [list(row) for row in snf.s]
        diag = snf.diagonal()
        assert all(d >= 0 for d in diag)
        for i in range(len(diag) - 1):
            if diag[i] != 0:
                assert diag[i + 1] % diag[i] == 0 or diag[i + 1] == 0
            else:
                assert diag[i + 1] == 0
        for i, row in enumerate(snf.s):
            for j, x in enumerate(row):
                if i != j:
                    assert x == 0


def test_smith_normal_form_known_case():
    snf = smith_normal_form([[2, 0], [0, 3]])
    assert snf.diagonal() == [1, 6]
    assert snf.torsion() == [6]
    snf = smith_normal_form([[0, 0], [0, 0]])
    assert snf.diagonal() == [0, 0]
    assert snf.torsion() == []


def test_solve_mod_m_consistent_systems():
    rng = random.Random(9)
    for m in (4, 6, 8, 12):
        for _ in range(30):
            rows, cols = rng.randrange(1, 5), rng.randrange(1, 5)
            a = [[rng.randrange(-9, 10) for _ in range(cols)] for _ in range(rows)]
            snf = smith_normal_form(a)
            x0 = [rng.randrange(m) for _ in range(cols)]
            b = [sum(r * x for r, x in zip(row, x0)) % m for row in a]
            x = solve_mod_m(snf, b, m)
            assert x is not None
            got = [sum(r * xi for r, xi in zip(row, x)) % m for row in a]
            assert got == b


def test_solve_mod_m_detects_inconsistency():
    rng = random.Random(10)
    for m in (4, 6):
        for _ in range(40):
            rows, cols = rng.randrange(1, 4), rng.randrange(1, 4)
            a = [[rng.randrange(-5, 6) for _ in range(cols)] for _ in range(rows)]
            b = [rng.randrange(m) for _ in range(rows)]
            x = solve_mod_m(smith_normal_form(a), b, m)
            solvable = exhaustive_solvable_mod(a, b, m)
            assert (x is not None) == solvable
            if x is not None:
                got = [sum(r * xi for r, xi in zip(row, x)) % m for row in a]
                assert got == [bb % m for bb in b]


def test_sample_kernel_mod_m_lands_in_kernel_and_covers():
    rng = random.Random(11)
    a = [[2]]
    snf = smith_normal_form(a)
    seen = set()
    for _ in range(50):
        x = sample_kernel_mod_m(snf, 4, rng)
        assert (2 * x[0]) % 4 == 0
        seen.add(x[0])
    assert seen == {0, 2}


def test_sample_kernel_mod_m_general():
    rng = random.Random(12)
    a = [[1, 2, 0], [0, 2, 2]]
    snf = smith_normal_form(a)
    kernel = {
        x
        for x in product(range(6), repeat=3)
        if all(sum(r * xi for r, xi in zip(row, x)) % 6 == 0 for row in a)
    }
    seen = set()
    for _ in range(400):
        x = tuple(v % 6 for v in sample_kernel_mod_m(snf, 6, rng))
        assert x in kernel
        seen.add(x)
    assert seen == kernel


def test_invariant_factors():
    assert invariant_factors([]) == ()
    assert invariant_factors([2, 3]) == (6,)
    assert invariant_factors([4, 6]) == (2, 12)
    assert invariant_factors([2, 2]) == (2, 2)
    assert invariant_factors([2, 4, 8]) == (2, 4, 8)
    assert invariant_factors([6, 10]) == (2, 30)
    got = invariant_factors([9, 3, 4, 2])
    assert got == (6, 36)
    for i in range(len(got) - 1):
        assert got[i + 1] % got[i] == 0
