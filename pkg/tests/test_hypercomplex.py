import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mvcs import hypercomplex as hc
from mvcs.matrix_core import herm_exp, identity

comp = st.floats(-5, 5, allow_nan=False)
vec4 = st.tuples(comp, comp, comp, comp)
vec8 = st.lists(comp, min_size=8, max_size=8)


@settings(max_examples=100, deadline=None)
@given(a=vec4, b=vec4)
def test_complex_rep_is_multiplicative(a, b):
    qa, qb = hc.Quaternion(*a), hc.Quaternion(*b)
    lhs = hc.quat_complex_rep(qa) @ hc.quat_complex_rep(qb)
    assert np.allclose(lhs, hc.quat_complex_rep(qa * qb), atol=1e-9)


def test_hamilton_units():
    i, j, k = hc.Quaternion(0, 1), hc.Quaternion(0, 0, 1), hc.Quaternion(0, 0, 0, 1)
    assert i * j == k
    assert (i * i).as_array().tolist() == [-1, 0, 0, 0]
    assert (i * j * k).as_array().tolist() == [-1, 0, 0, 0]


@settings(max_examples=100, deadline=None)
@given(a=vec4)
def test_polar_round_trip(a):
    pol = hc.quat_polar_decompose(a)
    rec = pol.r * herm_exp(hc.sigma_n(pol.phi, pol.psi), pol.theta)
    assert np.allclose(rec, hc.quat_complex_rep(a), atol=1e-9)
    assert pol.r == pytest.approx(math.sqrt(sum(x * x for x in a)))


@pytest.mark.parametrize("phi,psi", [(0, 0), (0.3, 1.2), (math.pi / 2, 4.0), (math.pi, 0.1)])
def test_sigma_n_squares_to_identity(phi, psi):
    s = hc.sigma_n(phi, psi)
    assert np.allclose(s @ s, identity(2), atol=1e-14)
    assert np.allclose(s, s.conj().T)


def test_sigma_n_matches_sigma_dot():
    # sigma_n puts e^{i psi} above the diagonal, i.e. azimuth -psi in n . sigma
    phi, psi = 0.8, 2.1
    assert np.allclose(hc.sigma_n(phi, psi), hc.sigma_dot(hc.unit_vector(phi, -psi)), atol=1e-14)


@settings(max_examples=100, deadline=None)
@given(a=vec4)
def test_real_rep_clifford(a):
    M = hc.quat_real_rep(a)
    n2 = sum(x * x for x in a)
    assert np.allclose(M @ M.conj().T, n2 * np.eye(4), atol=1e-9)
    assert hc.clifford_scalar(M) == pytest.approx(n2, abs=1e-9)


@pytest.mark.parametrize("rep", [hc.oct_left_rep, hc.oct_right_rep])
@settings(max_examples=60, deadline=None)
@given(a=vec8)
def test_octonion_reps_clifford(rep, a):
    M = rep(a)
    n2 = float(np.dot(a, a))
    assert np.allclose(M @ M.T, n2 * np.eye(8), atol=1e-9)
    assert np.allclose(M.T @ M, n2 * np.eye(8), atol=1e-9)


def test_oct_left_first_column_is_a():
    a = np.arange(1.0, 9.0)
    assert np.allclose(hc.oct_left_rep(a)[:, 0], a)
    assert np.allclose(hc.oct_right_rep(a)[:, 0], a)


def test_not_clifford_raises():
    with pytest.raises(hc.NotCliffordType):
        hc.clifford_scalar(np.array([[1.0, 0.0], [0.0, 2.0]]))


def test_wrong_component_count():
    with pytest.raises(ValueError):
        hc.quat_real_rep([1, 2, 3])


@pytest.mark.parametrize("r,s", [(0.0, 0.0), (1.0, 0.0), (0.3, 0.4), (2.0, 1.5)])
def test_extension_radial_clifford(r, s):
    assert hc.clifford_scalar(hc.extension_radial(r, s)) == pytest.approx(r * r + s * s, abs=1e-14)


def test_extension_phase_squares_to_identity_iff_perpendicular():
    n1 = hc.unit_vector(0.7, 1.1)
    n2 = hc.perpendicular_unit(n1, 0.4)
    T = hc.extension_phase(n1, n2, 0.9)
    assert np.allclose(T @ T, np.eye(4), atol=1e-13)
    bad = hc.extension_phase(n1, n1, 0.9)
    assert not np.allclose(bad @ bad, np.eye(4), atol=1e-3)
