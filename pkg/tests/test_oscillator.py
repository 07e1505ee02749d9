import numpy as np
import pytest

from mvcs import conditions as cond
from mvcs import oscillator as osc
from mvcs import states as st


def test_x_sequence_factorial():
    xs = osc.x_sequence(st.factorial_weights(), 10)
    assert xs.values[0] == 0
    assert np.allclose(xs.values[:11], np.arange(11))
    assert xs.constant and xs.c == pytest.approx(1.0)


def test_x_sequence_scaled():
    xs = osc.x_sequence(st.factorial_weights(2.0), 6)
    assert np.allclose(xs.values[1:7], 2.0 * np.arange(1, 7))
    assert xs.c == pytest.approx(2.0)


def test_x_sequence_nonconstant():
    xs = osc.x_sequence(st.scalar_weights(lambda m: float(np.prod(np.arange(1, m + 1) ** 2))), 6)
    assert not xs.constant
    assert xs.c is None


@pytest.mark.parametrize("cutoffs", [(6,), (5, 4), (3, 3, 3)])
def test_first_factor_commutators(cutoffs):
    xs = [osc.x_sequence(st.factorial_weights(), c) for c in cutoffs]
    L = osc.build_ladders("first_factor", 2, cutoffs, xs)
    rep = osc.commutator_report(L, 1.0, 1)
    assert max(rep.values()) < 1e-12
    assert np.allclose(L.N_op, L.A_dagger @ L.A, atol=1e-12)


def test_truncation_breaks_commutator_at_top_rung():
    xs = [osc.x_sequence(st.factorial_weights(), 6)]
    L = osc.build_ladders("first_factor", 1, (6,), xs)
    assert osc.commutator_report(L, 1.0, 0)["[A,A+]-cI"] == pytest.approx(7.0)


def test_diagonal_commutators_fail():
    xs = [osc.x_sequence(st.factorial_weights(), 4)] * 2
    L = osc.build_ladders("diagonal", 1, (4, 4), xs)
    assert max(osc.commutator_report(L, 1.0, 1).values()) > 0.5


def test_ladder_validation():
    with pytest.raises(ValueError):
        osc.build_ladders("other", 1, (3,), [np.arange(4)])
    with pytest.raises(ValueError):
        osc.build_ladders("diagonal", 1, (5,), [np.arange(3)])


@pytest.mark.parametrize("z", [0.5, 0.3 + 0.4j, -1.0])
def test_scalar_eigenrelation(z):
    M = 40
    fam = cond.constant_family(np.array([[z]]))
    w = st.factorial_weights()
    state = st.build_all([fam], [w], [{"zeta": 0.0}], st.TruncationSpec(1, (M,)))[0]
    L = osc.build_ladders("first_factor", 1, (M,), [osc.x_sequence(w, M)])
    assert osc.eigen_check(state, [[z]], L) < 1e-8


def test_quaternion_eigenrelation():
    rng = np.random.default_rng(5)
    fam = cond.real_quaternion_family()
    w = st.factorial_weights()
    M = 30
    params = [{"a": 0.5 * v / np.linalg.norm(v), "zeta": 0.3} for v in rng.normal(size=(2, 4))]
    states = st.build_all([fam, fam], [w, w], params, st.TruncationSpec(4, (M, M)))
    L = osc.build_ladders("first_factor", 4, (M, M), [osc.x_sequence(w, M)] * 2)
    A1 = fam.matrix(params[0])
    for s in states:
        assert osc.eigen_check(s, A1, L) < 1e-8
    with pytest.raises(ValueError):
        osc.eigen_check(states[0], A1, osc.build_ladders("first_factor", 4, (5, 5),
                                                          [osc.x_sequence(w, 5)] * 2))


def test_diagonal_witness():
    from mvcs.presets import diagonal_witness
    assert diagonal_witness() > 1e-3
