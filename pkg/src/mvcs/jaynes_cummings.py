"""Jaynes-Cummings spectra, weights, densities and coherent-state families.

Two models are covered: the tensor product of a weak-coupling JC system with
a resonant zero-coupling one, and a two-level atom in a two-mode field with
zero coupling.  Energies use hbar = 1.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy import special

from .conditions import diagonal_family
from .resolution import MomentRecord, half_line_rule, DEFAULT_RADIAL_NODES
from .states import (
    TruncationSpec,
    build_all,
    build_dependent_mvcs,
    diagonal_weights,
    factorial_weights,
    normalization_factor,
)

HYP_RTOL = 1e-16
HYP_MAX_TERMS = 100000


@dataclass(frozen=True)
class JCParams:
    omega: float = 3.0
    omega0: float = 1.0
    kappa: float = 1.0

    @property
    def detuning(self):
        return self.omega - self.omega0

    @property
    def delta(self):
        if self.kappa == 0:
            return math.inf
        return (self.detuning / (2 * self.kappa)) ** 2

    @property
    def omega_plus(self):
        self._require_detuned()
        return (self.omega - self.kappa ** 2) / self.detuning

    @property
    def omega_minus(self):
        self._require_detuned()
        return (self.omega + self.kappa ** 2) / self.detuning

    def _require_detuned(self):
        if not self.detuning > 0:
            raise ValueError(f"detuning must be positive, got {self.detuning}")

    def in_window(self):
        """``0 <= kappa/omega <= 2 sqrt(delta + 1)``."""
        if self.kappa == 0:
            return True
        return 0 <= self.kappa / self.omega <= 2 * math.sqrt(self.delta + 1)


@dataclass(frozen=True)
class TwoModeParams:
    omega1: float = 1.0
    omega2: float = 1.0
    g: float = 0.0

    def __post_init__(self):
        if not (self.omega1 > 0 and self.omega2 > 0):
            raise ValueError("mode frequencies must be positive")

    @property
    def omega0(self):
        return self.omega1 + self.omega2


# --------------------------------------------------------------------------
# spectra


def jc_exact_energies(p, n):
    """``(eps_n^+, eps_n^-)`` of the detuned JC Hamiltonian.

    ``kappa r(n)`` is written as ``sqrt(Delta^2/4 + kappa^2 n)`` so that
    ``kappa = 0`` is allowed.
    """
    root = lambda k: math.sqrt(p.detuning ** 2 / 4 + p.kappa ** 2 * k)
    return p.omega * (n + 1) - root(n + 1), p.omega * n + root(n)


def jc_weak_spectrum(p, n):
    """Linearised shifted energies ``(E_n^+, E_n^-) = (omega_+ n, omega_- n)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return p.omega_plus * n, p.omega_minus * n


def jc_resonance_spectrum(omega, n):
    if not omega > 0:
        raise ValueError("omega must be positive")
    return omega * n


def resonance_rho(omega, n):
    """``omega^n n!``."""
    return omega ** n * math.factorial(n)


def weak_rho(p, n):
    """``(rho_+(n), rho_-(n)) = (omega_+^n n!, omega_-^n n!)``."""
    f = math.factorial(n)
    return p.omega_plus ** n * f, p.omega_minus ** n * f


def monotonicity_scan(p, n_max=200):
    """Whether both exact branches are strictly increasing for ``n <= n_max``."""
    e = np.array([jc_exact_energies(p, n) for n in range(n_max + 1)])
    plus_inc = bool(np.all(np.diff(e[:, 0]) > 0))
    minus_inc = bool(np.all(np.diff(e[:, 1]) > 0))
    return {"in_window": p.in_window(), "plus_increasing": plus_inc,
            "minus_increasing": minus_inc}


def two_mode_spectrum(p, n, m):
    """``E_pm = w1 (n+1) + w2 (m+1) +- g (n+1)(m+1)``."""
    if n < 0 or m < 0:
        raise ValueError("n, m must be non-negative")
    base = p.omega1 * (n + 1) + p.omega2 * (m + 1)
    c = p.g * (n + 1) * (m + 1)
    return base + c, base - c


def degeneracy_scan(p, max_sum=30, rtol=1e-12):
    """Pairs of distinct ``(n, m)`` with equal energy on the same branch, ``n + m <= max_sum``."""
    levels = [(n, s - n) for s in range(max_sum + 1) for n in range(s + 1)]
    E = np.array([two_mode_spectrum(p, n, m) for n, m in levels])
    hits = []
    for b, branch in enumerate(("+", "-")):
        order = np.argsort(E[:, b], kind="stable")
        vals = E[order, b]
        for i in range(len(vals) - 1):
            j = i + 1
            while j < len(vals) and abs(vals[j] - vals[i]) <= rtol * max(abs(vals[i]), 1.0):
                hits.append((levels[order[i]], levels[order[j]], branch))
                j += 1
    return hits


def spectrum_table(p, max_n=10, max_m=10):
    return [(n, m) + two_mode_spectrum(p, n, m)
            for n in range(max_n + 1) for m in range(max_m + 1)]


# --------------------------------------------------------------------------
# special functions


def pochhammer(a, m):
    """Rising factorial ``(a)_m``."""
    return float(special.poch(a, m))


def hyp1f1(a, b, x, rtol=HYP_RTOL):
    """``1F1(a; b; x)`` by forward summation for ``x >= 0`` and ``b > 0``.

    Stops once a term drops below ``rtol`` times the running sum.
    """
    if x < 0:
        raise ValueError("forward series used for x >= 0 only")
    if b <= 0:
        raise ValueError("b must be positive")
    term, total = 1.0, 1.0
    for k in range(HYP_MAX_TERMS):
        term *= (a + k) * x / ((b + k) * (k + 1))
        total += term
        if abs(term) <= rtol * abs(total):
            return total
        if not math.isfinite(total):
            break
    raise OverflowError(f"1F1 series did not converge at x={x}")


def two_mode_alpha(p, n):
    """``alpha = 1 + [w1 (n+1) + w2] / w2``."""
    return 1.0 + (p.omega1 * (n + 1) + p.omega2) / p.omega2


# --------------------------------------------------------------------------
# tensored JC coherent states


def jc_weights(p):
    wp, wm, w = p.omega_plus, p.omega_minus, p.omega
    w1 = diagonal_weights([lambda m: wp ** m * math.factorial(m),
                           lambda m: wm ** m * math.factorial(m)], "weak")
    w2 = diagonal_weights([lambda m: w ** m * math.factorial(m)] * 2, "resonant")
    return w1, w2


def _polar(z):
    z = np.asarray(z, dtype=complex)
    return {"r": np.abs(z), "theta": np.angle(z)}


def printed_jc_norm(p, Z1, Z2):
    """``exp(|z^1_1|^2/w+ + |z^1_2|^2/w- + |z^2_1|^2/w + |z^2_2|^2/w)``."""
    a = np.abs(np.asarray(Z1)) ** 2
    b = np.abs(np.asarray(Z2)) ** 2
    return float(np.exp(a[0] / p.omega_plus + a[1] / p.omega_minus + (b[0] + b[1]) / p.omega))


def series_jc_norm(p, Z1, Z2):
    """Closed form of the trace series: ``sum_k exp(|z^1_k|^2/w_k + |z^2_k|^2/w)``."""
    a = np.abs(np.asarray(Z1)) ** 2
    b = np.abs(np.asarray(Z2)) ** 2
    return float(np.exp(a[0] / p.omega_plus + b[0] / p.omega)
                 + np.exp(a[1] / p.omega_minus + b[1] / p.omega))


def build_tensored_jc_cs(p, Z1, Z2, cutoffs=(40, 40), norm=None, strict=True):
    """Both spinor states ``|Z1, Z2, k>`` with diagonal labels and weights.

    ``norm`` defaults to the trace series; ``printed_jc_norm`` is available
    for comparison.
    """
    fams = [diagonal_family("Z1"), diagonal_family("Z2")]
    params = [_polar(Z1), _polar(Z2)]
    w1, w2 = jc_weights(p)
    trunc = TruncationSpec(2, cutoffs)
    return build_all(fams, [w1, w2], params, trunc, norm=norm, strict=strict)


def tensored_jc_normalization(p, Z1, Z2, cutoffs=(40, 40)):
    fams = [diagonal_family("Z1"), diagonal_family("Z2")]
    w1, w2 = jc_weights(p)
    return normalization_factor(fams, [w1, w2], [_polar(Z1), _polar(Z2)],
                                TruncationSpec(2, cutoffs))


# --------------------------------------------------------------------------
# two-mode coherent states (g = 0)


def two_mode_rho1(p):
    return lambda n: math.gamma(n + 2) * p.omega1 ** n


def two_mode_rho2(p):
    return lambda n, m: p.omega2 ** m * pochhammer(two_mode_alpha(p, n), m)


def two_mode_inner_norm(p, s):
    """``N(frak Z, n) = 1F1(1; alpha_n; s^2/w2)`` as a function of ``n``."""
    return lambda n: hyp1f1(1.0, two_mode_alpha(p, n), s * s / p.omega2)


def two_mode_outer_norm(p, r1, r2):
    """``sum_k (w1/r_k^2)(e^{r_k^2/w1} - 1)``; each term tends to 1 as ``r_k -> 0``."""
    def part(r):
        x = r * r / p.omega1
        return 1.0 if x == 0 else math.expm1(x) / x
    return part(r1) + part(r2)


def two_mode_printed_bound(p, r1, r2):
    """The bound ``(w1/r1^2) e^{r1^2/w1} + (w1/r2^2) e^{r2^2/w1}`` (needs positive radii)."""
    return sum(p.omega1 / (r * r) * math.exp(r * r / p.omega1) for r in (r1, r2))


def build_two_mode_cs(p, z, v, cutoffs=(40, 40), outer_norm=None):
    """States ``|Z, frak Z, k>`` with ``Z = diag(z1, z2)`` and ``frak Z = diag(v, conj v)``.

    The inner sum runs over ``frak Z^m``.
    """
    if p.g != 0:
        raise ValueError("coherent states are built for g = 0 only")
    z = np.asarray(z, dtype=complex)
    s = abs(v)
    famZ, famV = diagonal_family("Z"), diagonal_family("frakZ")
    pz = _polar(z)
    pv = _polar([v, np.conj(v)])
    if outer_norm is None:
        outer_norm = two_mode_outer_norm(p, abs(z[0]), abs(z[1]))
    trunc = TruncationSpec(2, cutoffs)
    return build_dependent_mvcs(famZ, famV, lambda n: n, lambda m: m, two_mode_rho1(p),
                                two_mode_rho2(p), pz, pv, trunc,
                                two_mode_inner_norm(p, s), outer_norm)


def build_shifted_two_mode_cs(p, z, v, cutoffs=(40, 40), norm=None, strict=True):
    """Shifted-spectrum variant: independent sums with ``R(n) = n! w1^n``, ``R(n,m) = m! w2^m``."""
    fams = [diagonal_family("Z"), diagonal_family("frakZ")]
    params = [_polar(z), _polar(v)]
    w = [factorial_weights(p.omega1), factorial_weights(p.omega2)]
    return build_all(fams, w, params, TruncationSpec(2, cutoffs), norm=norm, strict=strict)


def shifted_two_mode_norm(p, z, v):
    a = np.abs(np.asarray(z)) ** 2 / p.omega1
    b = np.abs(np.asarray(v)) ** 2 / p.omega2
    return float(np.sum(np.exp(a + b)))


# --------------------------------------------------------------------------
# densities


def lambda_printed(p):
    w1 = p.omega1
    return lambda r: 2 * r * r / w1 ** 2 * np.exp(-r * r / w1 ** 2)


def lambda_corrected(p):
    w1 = p.omega1
    return lambda r: 2 * r ** 3 / w1 ** 2 * np.exp(-r * r / w1)


def lambda_hat(p, n):
    a = two_mode_alpha(p, n)
    w2 = p.omega2
    logc = math.log(2.0) - a * math.log(w2) - math.lgamma(a)
    return lambda s: np.exp(logc + (2 * a - 1) * np.log(s) - s * s / w2)


def _moment(fn, k, beta, a, nodes):
    rule = half_line_rule(nodes, beta, a)
    return float(np.sum(rule.weights * rule.nodes ** (2 * k) * fn(rule.nodes)))


def two_mode_density_check(p=None, max_index=8, nodes=DEFAULT_RADIAL_NODES):
    """Moment residuals for the printed radial density, the corrected one, and ``lambda_hat``.

    Returns a dict of record lists keyed ``"printed"``, ``"corrected"`` and
    ``"hat"`` plus the composite ``n = m = 0`` normalizations.
    """
    p = p or TwoModeParams()
    w1, w2 = p.omega1, p.omega2
    out = {"printed": [], "corrected": [], "hat": []}
    for n in range(max_index + 1):
        t = w1 ** n * math.gamma(n + 2)
        c = _moment(lambda_printed(p), n, w1 ** 2, 0.5, nodes)
        out["printed"].append(MomentRecord((n,), t, c, abs(c - t) / t))
        c = _moment(lambda_corrected(p), n, w1, 0.0, nodes)
        out["corrected"].append(MomentRecord((n,), t, c, abs(c - t) / t))
    for n in range(max_index + 1):
        a = two_mode_alpha(p, n)
        for m in range(max_index + 1):
            t = w2 ** m * pochhammer(a, m)
            c = _moment(lambda_hat(p, n), m, w2, a - 1.0, nodes)
            out["hat"].append(MomentRecord((n, m), t, c, abs(c - t) / t))
    # (2 pi)^-4 int lambda(r1) lambda(r2) lambda_hat^2 over four (radius, angle) pairs
    hat0 = _moment(lambda_hat(p, 0), 0, w2, two_mode_alpha(p, 0) - 1.0, nodes)
    for key, fn, beta, a in (("printed", lambda_printed(p), w1 ** 2, 0.5),
                             ("corrected", lambda_corrected(p), w1, 0.0)):
        lam0 = _moment(fn, 0, beta, a, nodes)
        val = (2 * np.pi) ** 4 * lam0 ** 2 * hat0 ** 2 / (2 * np.pi) ** 4
        out[f"composite_{key}"] = MomentRecord((0, 0), 1.0, val, abs(val - 1.0))
    return out
