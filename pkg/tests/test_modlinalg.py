import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from doublet.modlinalg import SolverError, prime_powers, solve_mod, valuation


def brute_force(A, b, m):
    n = A.shape[1]
    return {x for x in itertools.product(range(m), repeat=n)
            if not np.any((A @ np.array(x) - b) % m)}


def test_prime_powers_and_valuation():
    assert prime_powers(72) == [(2, 3), (3, 2)]
    assert valuation(12, 2, 5) == 2
    assert valuation(0, 3, 4) == 4


def test_inconsistent_system():
    A = np.array([[2, 0], [0, 2]])
    sol = solve_mod(A, np.array([1, 0]), 4)
    assert sol.particular is None and sol.size == 0


def test_homogeneous_kernel_orders():
    A = np.array([[2, 4]])
    sol = solve_mod(A, None, 8)
    assert sol.size == len(brute_force(A, np.zeros(1, dtype=int), 8))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.integers(1, 3), st.sampled_from([2, 4, 6, 9, 12]), st.data())
def test_against_brute_force(rows, cols, m, data):
    A = np.array(data.draw(st.lists(st.lists(st.integers(0, m - 1), min_size=cols, max_size=cols),
                                     min_size=rows, max_size=rows)))
    b = np.array(data.draw(st.lists(st.integers(0, m - 1), min_size=rows, max_size=rows)))
    want = brute_force(A, b, m)
    sol = solve_mod(A, b, m)
    got = {tuple(int(v) for v in x) for x in sol.elements()}
    assert got == want
    assert sol.size == len(want)


def test_tall_sparse_system_uses_compression():
    rng = np.random.default_rng(1)
    x = rng.integers(0, 27, size=30)
    A = rng.integers(0, 27, size=(400, 30))
    b = (A @ x) % 27
    sol = solve_mod(A, b, 27, seed=3)
    assert not np.any((A @ sol.particular - b) % 27)


def test_large_modulus_uses_integer_path():
    # q^2 * n is past the float64-exact range, so the int64 reduction runs
    m = 2 ** 26
    rng = np.random.default_rng(5)
    A = rng.integers(0, m, size=(6, 5))
    x = rng.integers(0, m, size=5)
    b = (A @ x) % m
    sol = solve_mod(A, b, m)
    assert sol.particular is not None
    assert not np.any((A @ sol.particular - b) % m)
    for v in np.asarray(sol.kernel).T:
        assert not np.any((A @ v) % m)
