import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm, fractional_matrix_power

from mvcs.matrix_core import (
    DimensionMismatch, NonHermitianError, abs_matrix, adjoint, as_matrix, commutator,
    herm_exp, identity, is_hermitian, matrix_power,
)

floats = st.floats(-3, 3, allow_nan=False)


def random_hermitian(rng, n):
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (X + X.conj().T)


def test_as_matrix_rejects_bad_shapes():
    with pytest.raises(DimensionMismatch):
        as_matrix(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        as_matrix([[np.nan, 0], [0, 1]])


def test_commutator_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        commutator(identity(2), identity(3))


@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_herm_exp_matches_expm(rng, n):
    T = random_hermitian(rng, n)
    U = herm_exp(T, 0.7)
    assert np.allclose(U, expm(1j * 0.7 * T), atol=1e-12)
    assert np.allclose(U @ adjoint(U), identity(n), atol=1e-12)


def test_herm_exp_rejects_non_hermitian():
    with pytest.raises(NonHermitianError):
        herm_exp(np.array([[0, 1], [0, 0]]), 1.0)


@settings(max_examples=50, deadline=None)
@given(t=floats, s=floats)
def test_herm_exp_group_law(t, s):
    T = np.array([[1.0, 0.3 - 0.2j], [0.3 + 0.2j, -2.0]])
    assert np.allclose(herm_exp(T, t) @ herm_exp(T, s), herm_exp(T, t + s), atol=1e-12)


def test_abs_matrix_squares_back(rng):
    A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    P = abs_matrix(A)
    assert is_hermitian(P)
    assert np.allclose(P @ P, A @ adjoint(A), atol=1e-12)


@pytest.mark.parametrize("p", [0, 1, 3, 0.5, 1.5, 2.25])
def test_matrix_power_normal(rng, p):
    T = random_hermitian(rng, 3)
    A = herm_exp(T, 0.4) * 1.7  # normal, nonsingular
    ref = fractional_matrix_power(A, p) if not float(p).is_integer() else np.linalg.matrix_power(A, int(p))
    assert np.allclose(matrix_power(A, p), ref, atol=1e-10)


def test_matrix_power_rejects_negative_and_non_normal():
    with pytest.raises(ValueError):
        matrix_power(identity(2), -1)
    with pytest.raises(ValueError):
        matrix_power(np.array([[1.0, 1.0], [0.0, 1.0]]), 0.5)
