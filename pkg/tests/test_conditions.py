import numpy as np
import pytest

from mvcs import conditions as cond
from mvcs import hypercomplex as hc
from mvcs.matrix_core import NonHermitianError


def test_quaternion_pair_conditions_hold():
    f1 = cond.quaternion_complex_family("q1", "r")
    f2 = cond.quaternion_complex_family("q2", "s")
    rep = cond.check_pair_conditions(f1, f2, samples=64, seed=0)
    assert rep.ok, rep.residuals
    assert max(rep.residuals.values()) < 1e-12
    assert rep.values["implication_ok"]


def test_pair_conditions_detect_noncommuting_radials():
    bad = cond.PolarMatrixFamily(
        name="bad", dim=2,
        radial=lambda p: np.array([[1.0, p["x"]], [0.0, 1.0]], dtype=complex),
        phase=lambda p: np.diag([1.0, -1.0]).astype(complex),
        sample=lambda rng: {"x": rng.uniform(0.5, 1.0), "zeta": 0.0},
    )
    rep = cond.check_pair_conditions(bad, bad, samples=8, seed=1)
    assert not rep.ok
    assert rep.failures()


def test_dimension_mismatch():
    with pytest.raises(cond.DimensionMismatch):
        cond.check_pair_conditions(cond.quaternion_complex_family(), cond.real_quaternion_family())


@pytest.mark.parametrize("fam", [cond.real_quaternion_family(), cond.octonion_family(side="left"),
                                 cond.octonion_family(side="right"), cond.extension_family()])
def test_clifford_alternative(fam):
    rep = cond.check_clifford_alternative(fam, 32, seed=3)
    assert rep.ok
    assert all(f >= 0 for f in rep.values["f"])


def test_clifford_alternative_raises_for_diagonal():
    with pytest.raises(hc.NotCliffordType):
        cond.check_clifford_alternative(cond.diagonal_family(dim=2), 8, seed=0)


@pytest.mark.parametrize("theta,ok,reason", [
    (np.diag([1.0, -1.0]), True, ""),
    (np.diag([2.0, 3.0]), True, ""),
    (np.diag([0.5, 1.0]), False, "non-integer eigenvalue"),
    (np.diag([0.0, 1.0]), False, "zero eigenvalue"),
])
def test_integer_spectrum(theta, ok, reason):
    rep = cond.integer_spectrum_check(theta)
    assert rep.passed is ok
    assert rep.reason == reason


def test_integer_spectrum_non_hermitian():
    with pytest.raises(NonHermitianError):
        cond.integer_spectrum_check(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_family_matrix_is_radial_times_phase(rng):
    fam = cond.quaternion_complex_family()
    p = fam.sample(rng)
    M = fam.matrix(p)
    # q = r exp(i zeta sigma(n)) is r times a unitary
    assert np.allclose(M @ M.conj().T, p["r"] ** 2 * np.eye(2), atol=1e-12)
