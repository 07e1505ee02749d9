"""Resolution-of-identity checks: phase averages, radial moment problems and
full assembly of ``sum_j |state_j><state_j|`` on a truncated basis.

Half-line integrals use Gauss-Laguerre rules after the substitution
``u = r**2 / beta``, so Gaussian-type radial moments become Gamma integrals
that the rule integrates exactly.
"""

from dataclasses import dataclass
import csv
import io
import itertools
import math
from typing import Callable, Optional

import numpy as np
from scipy import special

from . import hypercomplex as hc
from .conditions import integer_spectrum_check
from .matrix_core import as_matrix
from .states import WeightSequence, factorial_weights, rotation_weight

DEFAULT_RADIAL_NODES = 64
DEFAULT_SPHERE_NODES = 8
DEFAULT_INTERVAL_NODES = 128
MOMENT_TOL = 1e-8


class QuadratureError(RuntimeError):
    pass


# --------------------------------------------------------------------------
# one-dimensional rules


@dataclass(frozen=True)
class Rule:
    """Nodes and weights with ``integral(g) ~ sum(weights * g(nodes))``."""

    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values):
        return np.tensordot(self.weights, values, axes=(0, 0))


def half_line_rule(n, beta=1.0, a=0.0):
    """Rule for plain ``int_0^inf g(r) dr``.

    Exact when ``g(r) * exp(r**2/beta) / r`` is ``u**a`` times a polynomial of
    degree < 2n in ``u = r**2/beta``.  Weights that underflow contribute 0.
    """
    if n < 2:
        raise ValueError("need at least 2 nodes")
    u, wu = special.roots_genlaguerre(n, a)
    r = np.sqrt(beta * u)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        logw = np.log(wu) + u - a * np.log(u) + math.log(beta / 2.0) - np.log(r)
        w = np.where(wu > 0, np.exp(logw), 0.0)
    return Rule(r, w)


def gaussian_radial_rule(n, beta=1.0):
    """Rule for ``int_0^inf g(r) r exp(-r**2/beta) dr`` (density built in)."""
    if n < 2:
        raise ValueError("need at least 2 nodes")
    u, wu = special.roots_laguerre(n)
    return Rule(np.sqrt(beta * u), 0.5 * beta * wu)


def interval_rule(n, lo=0.0, hi=1.0):
    """Gauss-Legendre on ``[lo, hi]``."""
    x, w = special.roots_legendre(n)
    half = 0.5 * (hi - lo)
    return Rule(lo + half * (x + 1.0), half * w)


def periodic_rule(n):
    """Trapezoid rule on ``[0, 2 pi)``; exact for trigonometric degree < n."""
    if n < 2:
        raise ValueError("need at least 2 nodes")
    return Rule(2 * np.pi * np.arange(n) / n, np.full(n, 2 * np.pi / n))


def sphere_rule(n_polar, n_azimuth=None):
    """Nodes ``(phi, psi)`` with weights for ``sin(phi) dphi dpsi`` (total ``4 pi``)."""
    n_azimuth = n_azimuth or 2 * n_polar
    c = interval_rule(n_polar, -1.0, 1.0)
    az = periodic_rule(n_azimuth)
    phi = np.arccos(c.nodes)
    P, S = np.meshgrid(phi, az.nodes, indexing="ij")
    W = np.outer(c.weights, az.weights)
    return Rule(np.stack([P.ravel(), S.ravel()], axis=1), W.ravel())


@dataclass(frozen=True)
class QuadratureSpec:
    radial_nodes: int = DEFAULT_RADIAL_NODES
    angular_nodes: Optional[int] = None
    sphere_nodes: int = DEFAULT_SPHERE_NODES
    interval_nodes: int = DEFAULT_INTERVAL_NODES

    def __post_init__(self):
        for k in ("radial_nodes", "sphere_nodes", "interval_nodes"):
            if getattr(self, k) < 2:
                raise ValueError(f"{k} must be >= 2")
        if self.angular_nodes is not None and self.angular_nodes < 2:
            raise ValueError("angular_nodes must be >= 2")

    def angular(self, max_cutoff):
        # trapezoid is exact below the node count; never go under 2M + 2
        floor = 2 * max_cutoff + 2
        return max(self.angular_nodes or floor, floor)

    def doubled(self):
        return QuadratureSpec(2 * self.radial_nodes,
                              None if self.angular_nodes is None else 2 * self.angular_nodes,
                              2 * self.sphere_nodes, 2 * self.interval_nodes)


# --------------------------------------------------------------------------
# phase averages


def phase_average(theta, m, nu, nodes=64):
    """``int_0^{2pi} exp(i (m - nu) zeta Theta) dzeta`` by the trapezoid rule."""
    theta = as_matrix(theta)
    rep = integer_spectrum_check(theta)
    if not rep.passed:
        raise ValueError(f"phase generator fails the integer spectrum check: {rep.reason}")
    lam, V = np.linalg.eigh(0.5 * (theta + theta.conj().T))
    rule = periodic_rule(nodes)
    d = (rule.weights[:, None] * np.exp(1j * (m - nu) * np.outer(rule.nodes, lam))).sum(0)
    return (V * d) @ V.conj().T


# --------------------------------------------------------------------------
# moment problems


@dataclass(frozen=True)
class MomentRecord:
    index: tuple
    target: float
    computed: float
    residual: float
    converged: bool = True

    def passed(self, tol):
        return self.converged and self.residual <= tol


@dataclass(frozen=True)
class MomentProblem:
    """Separable-grid moment problem over ``len(betas)`` half-line variables.

    ``integrand(index, *r)`` is the full integrand (density, normalization and
    moment factor) evaluated on broadcast grids; ``target(index)`` is the
    expected value.  ``betas`` and ``powers`` select the per-variable Laguerre
    scaling ``u = r**2/beta`` and exponent ``u**a``.
    """

    name: str
    integrand: Callable
    target: Callable
    indices: tuple
    betas: tuple = (1.0,)
    powers: tuple = ()
    prefactor: float = 1.0

    def evaluate(self, index, n):
        powers = self.powers or (0.0,) * len(self.betas)
        rules = [half_line_rule(n, b, a) for b, a in zip(self.betas, powers)]
        grids = np.meshgrid(*[r.nodes for r in rules], indexing="ij")
        W = rules[0].weights
        for r in rules[1:]:
            W = np.multiply.outer(W, r.weights)
        vals = self.integrand(index, *grids)
        return self.prefactor * float(np.sum(W * vals))


def _relative(computed, target):
    return abs(computed - target) / abs(target)


def moment_residuals(problem, quad=None, tol=MOMENT_TOL, check_convergence=True):
    """Relative residual per index; node doubling certifies each value."""
    quad = quad or QuadratureSpec()
    n = quad.radial_nodes
    out = []
    for idx in problem.indices:
        target = float(problem.target(idx))
        if not target > 0:
            raise ValueError(f"target at {idx} must be positive")
        c1 = problem.evaluate(idx, n)
        if check_convergence:
            c2 = problem.evaluate(idx, 2 * n)
            if _relative(c1, c2) > 10 * tol:
                raise QuadratureError(
                    f"{problem.name}{idx}: {n} and {2 * n} nodes disagree "
                    f"({c1:.6g} vs {c2:.6g})")
        out.append(MomentRecord(tuple(idx), target, c1, _relative(c1, target)))
    return out


def max_residual(records):
    return max(r.residual for r in records) if records else 0.0


def grid_indices(max_m, max_l=None):
    if max_l is None:
        return tuple((m,) for m in range(max_m + 1))
    return tuple((m, l) for m in range(max_m + 1) for l in range(max_l + 1))


def quaternion_complex_moments(max_index=10):
    """``4 pi^2 int int W r^{2m+1} s^{2l+1} / N = m! l!`` with ``W = 2/pi^2``, ``N = 2 e^{r^2+s^2}``."""
    W = 2 / np.pi ** 2

    def integrand(idx, r, s):
        m, l = idx
        return W * r ** (2 * m + 1) * s ** (2 * l + 1) * np.exp(-(r * r + s * s)) / 2

    return MomentProblem("quaternion-complex", integrand,
                         lambda idx: math.factorial(idx[0]) * math.factorial(idx[1]),
                         grid_indices(max_index, max_index), (1.0, 1.0), (), 4 * np.pi ** 2)


def quaternion_real_moments(max_index=10):
    """Same pattern with ``W = 4/pi^2`` and ``N = 4 e^{t^2+s^2}``."""
    W = 4 / np.pi ** 2

    def integrand(idx, t, s):
        m, l = idx
        return W * t ** (2 * m + 1) * s ** (2 * l + 1) * np.exp(-(t * t + s * s)) / 4

    return MomentProblem("quaternion-real", integrand,
                         lambda idx: math.factorial(idx[0]) * math.factorial(idx[1]),
                         grid_indices(max_index, max_index), (1.0, 1.0), (), 4 * np.pi ** 2)


def matrix_weight_moments(max_index=10, tau=2):
    """``d mu = (4/pi^tau) prod |q_k| d|q_k| dtheta_k`` against ``N = 4 e^{sum |q|^2}``."""

    def integrand(idx, *q):
        val = (4 / np.pi ** tau) / 4.0
        for m, x in zip(idx, q):
            val = val * x ** (2 * m + 1) * np.exp(-x * x)
        return val

    idx = tuple(itertools.product(range(max_index + 1), repeat=tau))
    return MomentProblem("matrix-weight", integrand,
                         lambda i: float(np.prod([math.factorial(m) for m in i])),
                         idx, (1.0,) * tau, (), (2 * np.pi) ** tau)


def extension_moment_value(m, n=DEFAULT_RADIAL_NODES, n_angle=32):
    """``int int w (r^2+s^2)^m / N  r s dr ds`` with ``w = 16/(r^2+s^2)``, ``N = 4 e^{r^2+s^2}``.

    Evaluated in polar coordinates ``r = p cos a, s = p sin a`` where the
    integrand becomes ``4 p^{2m+1} e^{-p^2} cos a sin a``.
    """
    rad = half_line_rule(n, 1.0)
    ang = interval_rule(n_angle, 0.0, np.pi / 2)
    p = rad.nodes
    radial = np.sum(rad.weights * 4.0 * p ** (2 * m + 1) * np.exp(-p * p))
    angular = np.sum(ang.weights * np.cos(ang.nodes) * np.sin(ang.nodes))
    return float(radial * angular)


def extension_moment_check(m, quad=None, tol=MOMENT_TOL):
    quad = quad or QuadratureSpec()
    c1 = extension_moment_value(m, quad.radial_nodes)
    c2 = extension_moment_value(m, 2 * quad.radial_nodes)
    target = float(math.factorial(m))
    if _relative(c1, c2) > 10 * tol:
        raise QuadratureError(f"extension moment {m} not converged")
    return MomentRecord((m,), target, c1, _relative(c1, target))


def extension_product_grid(max_index=10, quad=None, tol=MOMENT_TOL):
    """Product of the two per-factor extension integrals against ``m! l!``."""
    single = {m: extension_moment_check(m, quad, tol) for m in range(max_index + 1)}
    out = []
    for m in range(max_index + 1):
        for l in range(max_index + 1):
            c = single[m].computed * single[l].computed
            t = float(math.factorial(m) * math.factorial(l))
            out.append(MomentRecord((m, l), t, c, _relative(c, t)))
    return out


def extension_joint_moment(m, l, n=24):
    """The four-variable integral with the single normalization ``4 e^{sum}`` and ``W = W_1 W_2``.

    Cartesian Laguerre grid; exact for ``m, l >= 1``.
    """
    rule = half_line_rule(n, 1.0)
    r, s = np.meshgrid(rule.nodes, rule.nodes, indexing="ij")
    w2 = np.outer(rule.weights, rule.weights)
    p1 = r * r + s * s

    def part(k):
        return np.sum(w2 * 16.0 * p1 ** (k - 1) * r * s * np.exp(-p1))

    # N = 4 e^{sum} couples both pairs, so one factor of 4 is shared
    return float(part(m) * part(l) / 4.0)


# --------------------------------------------------------------------------
# summations depending on one another


def beta_moment_check(m, l, quad=None):
    """``|m int_0^1 s^l (1-s)^{m-1} ds - 1/C(m+l, l)|``."""
    if m < 1 or l < 0:
        raise ValueError("need m >= 1 and l >= 0")
    quad = quad or QuadratureSpec()
    rule = interval_rule(quad.interval_nodes)
    s = rule.nodes
    val = m * float(np.sum(rule.weights * s ** l * (1 - s) ** (m - 1)))
    target = 1.0 / math.comb(m + l, l)
    return MomentRecord((m, l), target, val, abs(val - target))


def dependent_composite_value(m, l, variant="printed", n_r=64, n_s=128):
    """``4 pi^2 int_0^inf int_0^1 r^m s^l (1-s)^m e^{-r(1-s)} lambda_1 lambda_2 dr ds``.

    ``lambda_1 = 1/(2 pi)``; ``lambda_2 = m e^{+-rs} / (2 pi (1-s))`` with the
    printed sign ``+`` or the corrected sign ``-``.
    """
    sign = {"printed": 1.0, "corrected": -1.0}[variant]
    x, wx = special.roots_laguerre(n_r)  # weight e^{-r}
    srule = interval_rule(n_s)
    s = srule.nodes[:, None]
    r = x[None, :]
    # e^{-r(1-s)} e^{sign r s} = e^{-r} e^{(1+sign) r s}
    with np.errstate(over="ignore", invalid="ignore"):
        h = r ** m * s ** l * (1 - s) ** (m - 1) * m * np.exp((1.0 + sign) * r * s)
        return float(np.sum(srule.weights[:, None] * wx[None, :] * h))


def dependent_composite_check(m, l, variant="printed", quad=None, tol=MOMENT_TOL):
    quad = quad or QuadratureSpec()
    target = math.factorial(m) / math.comb(m + l, l)
    c1 = dependent_composite_value(m, l, variant, quad.radial_nodes, quad.interval_nodes)
    c2 = dependent_composite_value(m, l, variant, 2 * quad.radial_nodes, quad.interval_nodes)
    conv = bool(np.isfinite(c1) and np.isfinite(c2) and _relative(c1, c2) <= 10 * tol)
    res = _relative(c1, target) if np.isfinite(c1) else math.inf
    return MomentRecord((m, l), target, c1, res, conv)


# --------------------------------------------------------------------------
# identity assembly


@dataclass(frozen=True)
class FactorMeasure:
    """One factor of a product measure for the assembly.

    ``radial(nodes)`` maps radial nodes ``(K, d)`` to matrices ``(K, n, n)``;
    ``radial_rule`` carries those nodes with weights that already include
    the radial density.  ``phase_rule(q)`` returns ``(generators, angles,
    weights)`` for ``q`` angular nodes; ``U**m = exp(i m angle G)``.
    """

    name: str
    dim: int
    radial: Callable[[np.ndarray], np.ndarray]
    radial_rule: Callable[[int], Rule]
    phase_rule: Callable[[int, int], tuple]
    weights: WeightSequence


@dataclass(frozen=True)
class MeasurePreset:
    name: str
    factors: tuple
    constant: float
    note: str = ""

    @property
    def dim(self):
        return self.factors[0].dim


def _tensor_rule(rules):
    grids = np.meshgrid(*[r.nodes for r in rules], indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=1)
    W = rules[0].weights
    for r in rules[1:]:
        W = np.multiply.outer(W, r.weights)
    return Rule(nodes, W.ravel())


def _phase_powers(G, angle, M):
    """``U[p, m] = exp(i m angle_p G_p)`` for ``m = 0..M`` (shape ``(P, M+1, n, n)``)."""
    lam, V = np.linalg.eigh(G)
    m = np.arange(M + 1)
    ph = np.exp(1j * m[None, :, None] * (angle[:, None, None] * lam[:, None, :]))
    return np.einsum("pab,pmb,pcb->pmac", V, ph, V.conj())


def _radial_powers(A, M):
    P = np.empty((A.shape[0], M + 1) + A.shape[1:], dtype=np.complex128)
    P[:, 0] = np.eye(A.shape[1])
    for m in range(1, M + 1):
        P[:, m] = P[:, m - 1] @ A
    return P


def _sandwich(U, w, X, chunk=256):
    """``Y[m, v, x, y] = sum_p w_p U[p, m] X[x, y] U[p, v]^dagger``."""
    P, M1, n, _ = U.shape
    D = X.shape[0]
    Y = np.zeros((M1, M1, D, D, n, n), dtype=np.complex128)
    for s in range(0, P, chunk):
        Uc = U[s:s + chunk]
        T = np.einsum("pmab,xybc->pmxyac", Uc, X, optimize=True)
        Y += np.einsum("p,pmxyac,pvdc->mvxyad", w[s:s + chunk], T, Uc.conj(), optimize=True)
    return Y


def _factor_step(fm, M, X, quad):
    n = fm.dim
    G, angle, pw = fm.phase_rule(quad.angular(M), quad.sphere_nodes)
    Y = _sandwich(_phase_powers(G, angle, M), pw, X)
    rr = fm.radial_rule(quad.radial_nodes)
    Ar = _radial_powers(fm.radial(rr.nodes), M)
    Mi = np.arange(M + 1)
    Z = np.zeros_like(Y)
    # radial stage acts block-wise on each (m, v) pair
    for a in Mi:
        for b in Mi:
            Z[a, b] = np.einsum("k,kij,xyjl,kml->xyim", rr.weights, Ar[:, a], Y[a, b],
                                Ar[:, b].conj(), optimize=True)
    Wm = np.stack([fm.weights.factor(m, n) for m in Mi])
    Z = np.einsum("mij,mvxyjk,vlk->mvxyil", Wm, Z, Wm.conj(), optimize=True)
    D = X.shape[0]
    # new index (m, x) with m slower
    return Z.transpose(0, 2, 1, 3, 4, 5).reshape((M + 1) * D, (M + 1) * D, n, n)


@dataclass
class IdentityResult:
    operator: np.ndarray
    deviation: float
    preset: str
    cutoffs: tuple


def _to_flat(X, n):
    D = X.shape[0]
    return X.transpose(2, 0, 3, 1).reshape(n * D, n * D)


def assemble_identity(preset, cutoffs, quad=None, zero_weights=False):
    """``sum_j int |state_j><state_j| d mu`` on the truncated basis.

    Factors are integrated innermost first: for factor ``k`` the phase
    average, then the radial integral, then the matrix weights are applied
    around the already integrated inner block.  This needs the radial part
    to commute with the phase, which every preset satisfies.
    """
    quad = quad or QuadratureSpec()
    cutoffs = tuple(int(c) for c in cutoffs)
    if len(cutoffs) != len(preset.factors):
        raise ValueError("one cutoff per factor")
    n = preset.dim
    X = np.eye(n, dtype=np.complex128)[None, None]
    for fm, M in zip(reversed(preset.factors), reversed(cutoffs)):
        X = _factor_step(fm, M, X, quad)
    c = 0.0 if zero_weights else preset.constant
    O = c * _to_flat(X, n)
    dev = float(np.max(np.abs(O - np.eye(O.shape[0]))))
    return IdentityResult(O, dev, preset.name, cutoffs)


def assemble_identity_bruteforce(preset, cutoffs, quad=None, chunk=2048):
    """Reference assembly on the full tensor grid of all parameters."""
    quad = quad or QuadratureSpec()
    n = preset.dim
    tables, weights = [], []
    for fm, M in zip(preset.factors, cutoffs):
        G, angle, pw = fm.phase_rule(quad.angular(M), quad.sphere_nodes)
        U = _phase_powers(G, angle, M)
        rr = fm.radial_rule(quad.radial_nodes)
        Ar = _radial_powers(fm.radial(rr.nodes), M)
        Wm = np.stack([fm.weights.factor(m, n) for m in range(M + 1)])
        # F[k, p, m] = W(m) A_k^m U_p^m
        F = np.einsum("mij,kmjl,pmlq->kpmiq", Wm, Ar, U, optimize=True)
        K, P = F.shape[:2]
        tables.append(F.reshape(K * P, M + 1, n, n))
        weights.append(np.multiply.outer(rr.weights, pw).ravel())
    sizes = [t.shape[0] for t in tables]
    D = int(np.prod([c + 1 for c in cutoffs]))
    acc = np.zeros((n * D, n * D), dtype=np.complex128)
    flat = np.array(list(itertools.product(*[range(s) for s in sizes])))
    for s in range(0, len(flat), chunk):
        idx = flat[s:s + chunk]
        w = np.ones(len(idx))
        P = None
        for k, t in enumerate(tables):
            w = w * weights[k][idx[:, k]]
            Fk = t[idx[:, k]]  # (B, M+1, n, n)
            if P is None:
                P = Fk
            else:
                B = P.shape[0]
                P = np.einsum("bxij,bmjk->bxmik", P, Fk).reshape(B, -1, n, n)
        C = P.transpose(0, 2, 1, 3).reshape(len(idx), n * D, n)  # rows (i, m...), cols j
        acc += np.einsum("b,bxj,byj->xy", w, C, C.conj(), optimize=True)
    O = preset.constant * acc
    return IdentityResult(O, float(np.max(np.abs(O - np.eye(n * D)))), preset.name,
                          tuple(cutoffs))


# --------------------------------------------------------------------------
# measure presets


def _scalar_radial(n):
    def radial(nodes):
        return nodes[:, 0][:, None, None] * np.eye(n)[None]
    return radial


def _fixed_direction_radial(rep, direction):
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    M = as_matrix(rep(d))

    def radial(nodes):
        return nodes[:, 0][:, None, None] * M[None]
    return radial


def _circle_phase(n):
    def rule(q, _sphere):
        c = periodic_rule(q)
        G = np.broadcast_to(np.eye(n, dtype=np.complex128), (q, n, n)).copy()
        return G, c.nodes, c.weights
    return rule


def _sphere_circle_phase(q, sphere_nodes):
    sph = sphere_rule(sphere_nodes)
    c = periodic_rule(q)
    G = np.stack([hc.sigma_n(phi, psi) for phi, psi in sph.nodes])
    S = len(sph.weights)
    Gs = np.repeat(G, q, axis=0)
    angle = np.tile(c.nodes, S)
    w = np.outer(sph.weights, c.weights).ravel()
    return Gs, angle, w


def _torus_phase(dim):
    def rule(q, _sphere):
        c = periodic_rule(q)
        grids = np.meshgrid(*([c.nodes] * dim), indexing="ij")
        th = np.stack([g.ravel() for g in grids], axis=1)
        G = np.zeros((len(th), dim, dim), dtype=np.complex128)
        G[:, np.arange(dim), np.arange(dim)] = th
        w = np.full(len(th), (2 * np.pi / q) ** dim)
        return G, np.ones(len(th)), w
    return rule


def _radial_rule_1d(beta=1.0):
    def rule(n):
        r = gaussian_radial_rule(n, beta)
        return Rule(r.nodes[:, None], r.weights)
    return rule


def _radial_rule_diag(betas):
    def rule(n):
        return _tensor_rule([gaussian_radial_rule(n, b) for b in betas])
    return rule


def quaternion_complex_measure():
    """Two complex-rep quaternion factors, ``W = 2/pi^2`` and ``N = 2 e^{r^2+s^2}``.

    ``d mu = W/(16 pi^2) r dr s ds sin(phi) dphi dpsi dtheta`` per factor, so the
    constant in front of ``r e^{-r^2} s e^{-s^2}`` is ``1/(16 pi^4)``.
    """
    w = factorial_weights()
    f = [FactorMeasure(name, 2, _scalar_radial(2), _radial_rule_1d(), _sphere_circle_phase, w)
         for name in ("q1", "q2")]
    return MeasurePreset("quaternion-complex", tuple(f), 1.0 / (16 * np.pi ** 4),
                         "sphere measure sin(phi) dphi dpsi, trapezoid in theta")


def quaternion_real_measure(directions=((1, 2, 3, 4), (4, -1, 2, 0.5))):
    """Real-rep quaternion factors ``t Q e^{i theta}`` with fixed unit directions ``Q``;
    ``W = 4/pi^2`` and ``N = 4 e^{t^2+s^2}`` give the constant ``1/pi^2``."""
    w = factorial_weights()
    f = [FactorMeasure(f"q{k + 1}", 4, _fixed_direction_radial(hc.quat_real_rep, d),
                       _radial_rule_1d(), _circle_phase(4), w)
         for k, d in enumerate(directions)]
    return MeasurePreset("quaternion-real", tuple(f), 1.0 / np.pi ** 2,
                         "directions held fixed; only |q| and theta are integrated")


def matrix_weight_measure(tau=1, xs=None, directions=None):
    """``R(m) = rot(x)/sqrt(m!)`` with ``Z = q e^{i theta}``; ``d mu = (4/pi^tau) prod |q| d|q| dtheta``
    against ``N = 4 e^{sum |q|^2}``."""
    xs = xs or [0.3 + 0.4 * k for k in range(tau)]
    directions = directions or [(1, 2, 3, 4), (4, -1, 2, 0.5), (0, 1, -1, 2)][:tau]
    f = [FactorMeasure(f"Z{k + 1}", 4, _fixed_direction_radial(hc.quat_real_rep, d),
                       _radial_rule_1d(), _circle_phase(4), rotation_weight(x))
         for k, (x, d) in enumerate(zip(xs, directions))]
    return MeasurePreset("matrix-weight", tuple(f), (4 / np.pi ** tau) / 4.0)


def _diag_radial(nodes):
    K, d = nodes.shape
    out = np.zeros((K, d, d), dtype=np.complex128)
    out[:, np.arange(d), np.arange(d)] = nodes
    return out


def tensored_jc_measure(params=None):
    """Diagonal labels ``diag(r_1 e^{i th_1}, r_2 e^{i th_2})`` for both factors.

    The measure is the printed ``1/(w+ w- w^2 pi^4) prod r dr dtheta`` divided by
    the printed exponential normalization.
    """
    from .jaynes_cummings import JCParams, jc_weights
    p = params or JCParams()
    wp, wm, w = p.omega_plus, p.omega_minus, p.omega
    w1, w2 = jc_weights(p)
    f = [FactorMeasure("Z1", 2, _diag_radial, _radial_rule_diag((wp, wm)), _torus_phase(2), w1),
         FactorMeasure("Z2", 2, _diag_radial, _radial_rule_diag((w, w)), _torus_phase(2), w2)]
    return MeasurePreset("tensored-jc", tuple(f), 1.0 / (wp * wm * w * w * np.pi ** 4))


def shifted_two_mode_measure(params=None):
    """Shifted two-mode labels with scalar weights ``n! w1^n`` and ``m! w2^m``.

    Built like the tensored JC measure: ``prod r dr dtheta / (beta pi)`` per
    radius with the exponential normalization divided out.
    """
    from .jaynes_cummings import TwoModeParams
    p = params or TwoModeParams(1.3, 0.7)
    w1, w2 = p.omega1, p.omega2
    f = [FactorMeasure("Z", 2, _diag_radial, _radial_rule_diag((w1, w1)), _torus_phase(2),
                       factorial_weights(w1)),
         FactorMeasure("frakZ", 2, _diag_radial, _radial_rule_diag((w2, w2)), _torus_phase(2),
                       factorial_weights(w2))]
    return MeasurePreset("two-mode-shifted", tuple(f), 1.0 / (w1 * w1 * w2 * w2 * np.pi ** 4))


MEASURE_PRESETS = {
    "quaternion-complex": quaternion_complex_measure,
    "quaternion-real": quaternion_real_measure,
    "matrix-weight": matrix_weight_measure,
    "tensored-jc": tensored_jc_measure,
    "two-mode-shifted": shifted_two_mode_measure,
}


def jc_radial_moment_check(beta, m, quad=None, tol=MOMENT_TOL):
    """``int (2 pi/(beta pi)) r^{2m+1} e^{-r^2/beta} dr / (beta^m m!) = 1``."""
    quad = quad or QuadratureSpec()

    def val(n):
        rule = half_line_rule(n, beta)
        r = rule.nodes
        g = (2 * np.pi / (beta * np.pi)) * r ** (2 * m + 1) * np.exp(-r * r / beta)
        return float(np.sum(rule.weights * g)) / (beta ** m * math.factorial(m))

    c1, c2 = val(quad.radial_nodes), val(2 * quad.radial_nodes)
    if abs(c1 - c2) > 10 * tol:
        raise QuadratureError("radial moment not converged")
    return MomentRecord((m,), 1.0, c1, abs(c1 - 1.0))


# --------------------------------------------------------------------------
# export


def moments_csv(records, fmt=None):
    from .report import format_float
    fmt = fmt or format_float
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "l", "target", "computed", "relative_residual"])
    for r in records:
        m = r.index[0]
        l = r.index[1] if len(r.index) > 1 else ""
        w.writerow([m, l, fmt(r.target), fmt(r.computed), fmt(r.residual)])
    return buf.getvalue()
