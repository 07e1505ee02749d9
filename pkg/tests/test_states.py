import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as hst

from mvcs import conditions as cond
from mvcs import states as st


def qc_setup(r=0.5, s=0.7, M=40):
    fams = [cond.quaternion_complex_family("q1", "r"), cond.quaternion_complex_family("q2", "s")]
    params = [{"r": r, "phi": 0.3, "psi": 1.1, "zeta": 0.4},
              {"s": s, "phi": 2.0, "psi": 0.2, "zeta": 2.5}]
    w = st.factorial_weights()
    return fams, [w, w], params, st.TruncationSpec(2, (M, M))


def test_truncation_spec_layout():
    t = st.TruncationSpec(2, (3, 4))
    assert t.shape == (2, 4, 5)
    assert t.size == 40
    assert t.strides == (5, 1)
    # C order: j major, then m_1, then m_2
    assert t.flat_index(1, (2, 3)) == 20 + 2 * 5 + 3
    assert t.flat_index(1, (2, 3)) == np.ravel_multi_index((1, 2, 3), t.shape)


@pytest.mark.parametrize("bad", [dict(spinor_dim=0, cutoffs=(2,)), dict(spinor_dim=2, cutoffs=(0,))])
def test_truncation_spec_rejects(bad):
    with pytest.raises(ValueError):
        st.TruncationSpec(**bad)


def test_memory_cap():
    with pytest.raises(MemoryError):
        st.TruncationSpec(8, (200, 200, 200))


@pytest.mark.parametrize("r,s", [(0.0, 0.0), (0.5, 0.7), (1.0, 1.0), (0.25, 0.0)])
def test_quaternion_complex_norm_closed_form(r, s):
    fams, w, params, trunc = qc_setup(r, s)
    N = st.normalization_factor(fams, w, params, trunc).value
    assert N == pytest.approx(2 * math.exp(r * r + s * s), rel=1e-12)


def test_norm_sum_is_one():
    states = st.build_all(*qc_setup())
    nc = st.norm_check(states)
    assert abs(nc.total - 1.0) < 1e-12
    assert not nc.flagged


def test_coefficient_matches_definition():
    fams, w, params, trunc = qc_setup(M=40)
    states = st.build_all(fams, w, params, trunc)
    A1, A2 = fams[0].matrix(params[0]), fams[1].matrix(params[1])
    N = states[0].norm
    m1, m2, i, j = 3, 2, 1, 0
    ref = (np.linalg.matrix_power(A1, m1) @ np.linalg.matrix_power(A2, m2))[i, j]
    ref /= math.sqrt(N * math.factorial(m1) * math.factorial(m2))
    assert states[j].coeffs[i, m1, m2] == pytest.approx(ref, abs=1e-15)
    assert states[j].flat()[trunc.flat_index(i, (m1, m2))] == states[j].coeffs[i, m1, m2]


def test_undertruncation_raises_and_flags():
    fams, w, params, _ = qc_setup(1.0, 1.0)
    trunc = st.TruncationSpec(2, (2, 2))
    with pytest.raises(st.TruncationError):
        st.build_all(fams, w, params, trunc)
    states = st.build_all(fams, w, params, trunc, strict=False)
    nc = st.norm_check(states)
    assert nc.flagged
    assert nc.residual > 0.1


def test_divergent_series():
    fam = cond.constant_family(np.array([[1.5]]))
    w = st.scalar_weights(lambda m: 1.0)
    with pytest.raises(st.DivergenceError):
        st.normalization_factor([fam], [w], [{"zeta": 0.0}], st.TruncationSpec(1, (10,)))


def test_tail_bound_is_an_upper_bound():
    fams, w, params, _ = qc_setup(1.0, 1.0)
    small = st.normalization_factor(fams, w, params, st.TruncationSpec(2, (8, 8)))
    exact = 2 * math.exp(2.0)
    assert small.partial < exact <= small.value


def test_norm_override_and_mismatch():
    fams, w, params, trunc = qc_setup()
    a = st.build_all(fams, w, params, trunc)
    b = st.build_all(fams, w, params, trunc, norm=2 * math.exp(0.5 ** 2 + 0.7 ** 2))
    assert np.allclose(a[0].coeffs, b[0].coeffs, atol=1e-15)
    with pytest.raises(ValueError):
        st.norm_check([a[0], st.build_all(fams, w, params, trunc, norm=3.0)[1]])


def test_weights_validate():
    with pytest.raises(ValueError):
        st.scalar_weights(lambda m: -1.0).rho(0)
    with pytest.raises(ValueError):
        st.factorial_weights(0.0)
    with pytest.raises(ValueError):
        st.diagonal_weights([lambda m: 1.0, lambda m: 0.0]).factor(0, 2)


@pytest.mark.parametrize("scale", [0.5, 1.0, 3.0])
@pytest.mark.parametrize("m", [0, 1, 7, 40])
def test_factorial_weights_against_mpmath(scale, m):
    ref = float(mpmath.mpf(scale) ** m * mpmath.factorial(m))
    assert st.factorial_weights(scale).rho(m) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("x", [0.0, 0.3, 1.1])
def test_rotation_weight_clifford(x):
    w = st.rotation_weight(x)
    for m in range(6):
        assert w.clifford_f(m, 4) == pytest.approx(1 / math.factorial(m), rel=1e-12)


def test_matrix_weight_states_norm():
    fam = cond.real_quaternion_family()
    rng = np.random.default_rng(2)
    params = [{"a": 0.6 * v / np.linalg.norm(v), "zeta": 0.2} for v in rng.normal(size=(2, 4))]
    w = [st.rotation_weight(0.3), st.rotation_weight(1.1)]
    states = st.build_matrix_weight_mvcs([fam, fam], w, params, st.TruncationSpec(4, (40, 40)))
    assert st.normalization_factor([fam, fam], w, params, states[0].trunc).value == pytest.approx(
        4 * math.exp(0.72), rel=1e-12)
    assert abs(st.norm_check(states).total - 1) < 1e-12
    with pytest.raises(TypeError):
        st.build_matrix_weight_mvcs([fam, fam], [st.factorial_weights()] * 2, params,
                                    st.TruncationSpec(4, (5, 5)))


def test_state_record_round_trip():
    states = st.build_all(*qc_setup(M=6), strict=False)
    rec = st.state_record(states[1])
    back = st.state_from_record(rec)
    assert np.array_equal(back.coeffs, states[1].coeffs)
    assert back.trunc == states[1].trunc
    assert back.j == 1


@settings(max_examples=40, deadline=None)
@given(s=hst.floats(0, 0.9), m=hst.integers(0, 8))
def test_negative_binomial(s, m):
    assert st.negative_binomial_partial(s, m, 600) == pytest.approx(
        st.negative_binomial_norm(s, m), rel=1e-9)


def test_negative_binomial_domain():
    with pytest.raises(ValueError):
        st.negative_binomial_norm(1.0, 2)


def test_dependent_states_norm():
    fa = cond.quaternion_complex_family("q", "r")
    fb = cond.quaternion_complex_family("p", "s")
    r, s = 0.8, 0.3
    pa = {"r": r, "phi": 0.4, "psi": 1.0, "zeta": 0.3}
    pb = {"s": s, "phi": 2.0, "psi": 0.5, "zeta": 1.2}
    args = (fa, fb, lambda m: m / 2, lambda l: l / 2, lambda m: math.factorial(m),
            lambda m, l: 1 / math.comb(m + l, l), pa, pb)
    inner = lambda m: st.negative_binomial_norm(s, m)
    # with rho_2 = 1/C(m+l, l) the inner sum cancels N_2 exactly, leaving 2 e^r
    assert st.dependent_norm_series(*args, inner, (60, 200)) == pytest.approx(2 * math.exp(r),
                                                                             rel=1e-10)
    states = st.build_dependent_mvcs(*args, st.TruncationSpec(2, (40, 40)), inner)
    assert abs(st.norm_check(states).total - 1) < 1e-10


@pytest.mark.parametrize("z", [0.0, 0.5, 1 + 1j])
def test_canonical_cs(z):
    c = st.canonical_cs(z, 60)
    ref = np.array([complex(mpmath.exp(-abs(z) ** 2 / 2) * z ** m / mpmath.sqrt(mpmath.factorial(m)))
                    for m in range(61)])
    assert np.allclose(c, ref, atol=1e-14)
