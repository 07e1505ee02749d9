import math

import mpmath
import numpy as np
import pytest
from scipy import integrate

from mvcs import resolution as res

QUAD = res.QuadratureSpec()


@pytest.mark.parametrize("beta,a,k", [(1.0, 0.0, 3), (2.5, 0.0, 7), (1.3, 0.5, 4), (0.7, 2.2, 2)])
def test_half_line_rule_against_quad(beta, a, k):
    # g(r) = r^(2a+1) u^k e^{-u}, u = r^2/beta, exact for the rule
    g = lambda r: r ** (2 * a + 1) * (r * r / beta) ** k * np.exp(-r * r / beta)
    rule = res.half_line_rule(40, beta, a)
    ref, _ = integrate.quad(g, 0, np.inf, epsabs=0, epsrel=1e-13)
    assert rule.integrate(g(rule.nodes)) == pytest.approx(ref, rel=1e-11)


@pytest.mark.parametrize("m", [0, 1, 5, 10])
def test_gaussian_radial_rule_gamma(m):
    rule = res.gaussian_radial_rule(32, 2.0)
    # int r^{2m} r e^{-r^2/2} dr = 2^m m!
    assert rule.integrate(rule.nodes ** (2 * m)) == pytest.approx(2 ** m * math.factorial(m), rel=1e-12)


def test_rules_reject_tiny_n():
    for f in (res.half_line_rule, res.gaussian_radial_rule, res.periodic_rule):
        with pytest.raises(ValueError):
            f(1)


def test_sphere_rule_area_and_moments():
    rule = res.sphere_rule(8)
    assert rule.weights.sum() == pytest.approx(4 * np.pi, rel=1e-14)
    z = np.cos(rule.nodes[:, 0])
    assert rule.integrate(z * z) == pytest.approx(4 * np.pi / 3, rel=1e-13)


def test_quadrature_spec_angular_floor():
    assert QUAD.angular(5) == 12
    assert res.QuadratureSpec(angular_nodes=50).angular(5) == 50
    with pytest.raises(ValueError):
        res.QuadratureSpec(radial_nodes=1)


def test_phase_average_orthogonality():
    T = np.diag([1.0, -1.0])
    assert np.allclose(res.phase_average(T, 3, 3), 2 * np.pi * np.eye(2), atol=1e-13)
    assert np.allclose(res.phase_average(T, 3, 1), 0, atol=1e-13)
    with pytest.raises(ValueError):
        res.phase_average(np.diag([0.5, 1.0]), 1, 0)


@pytest.mark.parametrize("problem", [res.quaternion_complex_moments(10),
                                     res.quaternion_real_moments(10),
                                     res.matrix_weight_moments(10, 2)],
                         ids=["quaternion-complex", "quaternion-real", "matrix-weight"])
def test_moment_grids(problem):
    recs = res.moment_residuals(problem, QUAD)
    assert len(recs) == 121
    assert res.max_residual(recs) < 1e-8


def test_quaternion_complex_moment_against_dblquad():
    # (2/pi^2) e^{-(r^2+s^2)} r^(2m+1) s^(2l+1) over the quarter plane, times the angular 16 pi^2/... = m! l!
    prob = res.quaternion_complex_moments(3)
    m, l = 2, 3
    val = prob.evaluate((m, l), 64)
    f = lambda s, r: prob.integrand((m, l), np.array(r), np.array(s)) * prob.prefactor
    ref, _ = integrate.dblquad(f, 0, 12, 0, 12, epsabs=0, epsrel=1e-12)
    assert val == pytest.approx(ref, rel=1e-9)
    assert val == pytest.approx(math.factorial(m) * math.factorial(l), rel=1e-12)


@pytest.mark.parametrize("m,target", [(0, 1.0), (1, 1.0), (5, 120.0)])
def test_extension_moments(m, target):
    assert res.extension_moment_value(m) == pytest.approx(target, rel=1e-10)


def test_extension_m0_polar_oracle():
    # polar form: 16/(r^2+s^2) e^{-(r^2+s^2)} r s over the quarter plane / 4 = 1
    f = lambda th, rho: 16 * math.exp(-rho * rho) * math.cos(th) * math.sin(th) * rho / 4
    ref, _ = integrate.dblquad(f, 0, np.inf, 0, np.pi / 2)
    assert ref == pytest.approx(1.0, rel=1e-10)
    assert res.extension_moment_value(0) == pytest.approx(ref, rel=1e-10)


def test_extension_product_grid():
    assert res.max_residual(res.extension_product_grid(10, QUAD)) < 1e-8


@pytest.mark.parametrize("m,l", [(1, 1), (2, 3), (4, 2)])
def test_extension_joint_integral_carries_factor_four(m, l):
    assert res.extension_joint_moment(m, l) == pytest.approx(
        4 * math.factorial(m) * math.factorial(l), rel=1e-10)


@pytest.mark.parametrize("m,l", [(1, 0), (3, 4), (6, 6), (1, 11), (12, 0)])
def test_beta_identity(m, l):
    rec = res.beta_moment_check(m, l, QUAD)
    ref = float(m * mpmath.beta(l + 1, m))
    assert rec.computed == pytest.approx(ref, rel=1e-12)
    assert rec.residual < 1e-10


def test_beta_identity_domain():
    with pytest.raises(ValueError):
        res.beta_moment_check(0, 1)


@pytest.mark.parametrize("m,l", [(1, 0), (2, 3), (5, 5)])
def test_dependent_composite(m, l):
    good = res.dependent_composite_check(m, l, "corrected", QUAD)
    assert good.passed(1e-8)
    bad = res.dependent_composite_check(m, l, "printed", QUAD)
    assert not bad.converged
    assert not bad.passed(1e-8)


@pytest.mark.parametrize("name", sorted(res.MEASURE_PRESETS))
def test_identity_assembly(name):
    preset = res.MEASURE_PRESETS[name]()
    out = res.assemble_identity(preset, (4,) * len(preset.factors), QUAD)
    assert out.deviation < 1e-10
    assert out.operator.shape == (preset.dim * 5 ** len(preset.factors),) * 2


@pytest.mark.parametrize("name", ["quaternion-complex", "quaternion-real", "matrix-weight"])
def test_identity_recursion_matches_bruteforce(name):
    preset = res.MEASURE_PRESETS[name]()
    quad = res.QuadratureSpec(radial_nodes=8, sphere_nodes=3)
    cut = (2,) * len(preset.factors)
    a = res.assemble_identity(preset, cut, quad)
    b = res.assemble_identity_bruteforce(preset, cut, quad)
    assert np.allclose(a.operator, b.operator, atol=1e-12)


def test_identity_without_measure_constant_fails():
    preset = res.quaternion_complex_measure()
    assert res.assemble_identity(preset, (3, 3), QUAD, zero_weights=True).deviation == pytest.approx(1.0)


def test_identity_cutoff_count():
    with pytest.raises(ValueError):
        res.assemble_identity(res.quaternion_complex_measure(), (3,), QUAD)


@pytest.mark.parametrize("beta", [1.0, 2.0, 3.0])
def test_jc_radial_moments(beta):
    for m in range(11):
        assert res.jc_radial_moment_check(beta, m, QUAD).residual < 1e-10


def test_moments_csv_layout():
    recs = [res.MomentRecord((1, 2), 2.0, 2.0000001, 5e-8), res.MomentRecord((3,), 6.0, 6.0, 0.0)]
    lines = res.moments_csv(recs).splitlines()
    assert lines[0] == "m,l,target,computed,relative_residual"
    assert lines[1] == "1,2,2.0,2.0000001,5.000000000000e-08"
    assert lines[2] == "3,,6.0,6.0,0.0"


def test_nonconverged_quadrature_raises():
    prob = res.MomentProblem("wild", lambda idx, r: np.cos(40 * r) * r, lambda idx: 1.0, ((0,),))
    with pytest.raises(res.QuadratureError):
        res.moment_residuals(prob, res.QuadratureSpec(radial_nodes=4))
