"""Named verification presets and the run configuration they consume.

A preset is a set of suites; each suite returns checks plus optional
moment-grid and spectrum rows.  Every check carries a provenance tag:
``closed-form`` (a closed-form value of the construction), ``derived-oracle``
(an independent numerical oracle) or ``trivial``.
"""

from dataclasses import dataclass, field
import math
from typing import Callable, Optional

import numpy as np

from . import conditions as cond
from . import hypercomplex as hc
from . import jaynes_cummings as jc
from . import oscillator as osc
from . import resolution as res
from . import states as st
from .matrix_core import herm_exp, identity
from .report import Check, check

SCHEMA_VERSION = 1
SUITES = ("algebra", "conditions", "norms", "moments", "identity", "oscillator", "jc")

DEFAULT_TOL = {
    "algebra": 1e-12,
    "conditions": 1e-12,
    "closed_form": 1e-9,
    "norm_sum": 1e-10,
    "moments": 1e-8,
    "identity": 1e-6,
    "oscillator": 1e-12,
    "eigen": 1e-8,
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    preset: Optional[str] = None
    cutoff: int = 40
    nodes: int = res.DEFAULT_RADIAL_NODES
    tol: Optional[float] = None
    seed: int = 0
    identity_cutoff: int = 5
    suites: Optional[list] = None
    params: dict = field(default_factory=dict)
    families: Optional[list] = None
    schema_version: int = SCHEMA_VERSION

    def validate(self):
        if self.schema_version != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema_version {self.schema_version}")
        if (self.preset is None) == (self.families is None):
            raise ConfigError("give exactly one of 'preset' or 'families'")
        if self.preset is not None and self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}")
        if self.cutoff < 1 or self.identity_cutoff < 1:
            raise ConfigError("cutoffs must be >= 1")
        if self.nodes < 2:
            raise ConfigError("nodes must be >= 2")
        if self.tol is not None and not self.tol > 0:
            raise ConfigError("tol must be positive")
        if self.suites is not None:
            bad = [s for s in self.suites if s not in SUITES]
            if bad:
                raise ConfigError(f"unknown suites {bad}")
        if self.families is not None:
            if not isinstance(self.families, list) or not self.families:
                raise ConfigError("'families' must be a non-empty list")
            _inline_parts(self)
        return self

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys {sorted(extra)}")
        try:
            cfg = cls(**d)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None
        return cfg.validate()

    def to_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    def tolerance(self, key):
        return self.tol if self.tol is not None else DEFAULT_TOL[key]

    @property
    def quad(self):
        return res.QuadratureSpec(radial_nodes=self.nodes)


@dataclass
class SuiteOutput:
    checks: list = field(default_factory=list)
    moments: list = field(default_factory=list)  # (grid name, MomentRecord)
    spectrum: list = field(default_factory=list)  # (n, m, E_plus, E_minus)


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    suites: dict
    states: Optional[Callable] = None


# --------------------------------------------------------------------------
# shared helpers

RADII = (0.0, 0.25, 0.5, 0.75, 1.0)


def _radii(cfg):
    return tuple(cfg.params.get("radii", RADII))


def _rng(cfg):
    return np.random.default_rng(cfg.seed)


def _sample_q(rng, key, r):
    phi = math.acos(rng.uniform(-1, 1))
    return {key: r, "phi": phi, "psi": rng.uniform(0, 2 * np.pi),
            "zeta": rng.uniform(0, 2 * np.pi)}


def _direction(rng, size):
    a = rng.normal(size=size)
    return a / np.linalg.norm(a)


def _norm_checks(name, fams, weights, params, trunc, closed, cfg, prov="closed-form",
                 norm=None):
    """Series normalization against ``closed`` and the unit norm sum."""
    nres = st.normalization_factor(fams, weights, params, trunc)
    out = [check(f"{name}: series N vs closed form", closed, nres.value,
                 cfg.tolerance("closed_form"), prov)]
    states = st.build_all(fams, weights, params, trunc, norm=norm)
    nc = st.norm_check(states)
    out.append(check(f"{name}: sum_j <state_j|state_j>", 1.0, nc.total,
                     cfg.tolerance("norm_sum"), "derived-oracle", relative=False))
    return out


def _moment_checks(grid, records, tol):
    worst = max(records, key=lambda r: r.residual)
    c = Check(f"{grid}: max relative moment residual over {len(records)} indices",
              worst.target, worst.computed, worst.residual if worst.converged else math.inf,
              tol, "closed-form", detail=f"worst index {list(worst.index)}")
    return [c], [(grid, r) for r in records]


def _identity_check(preset_name, cutoffs, cfg):
    preset = res.MEASURE_PRESETS[preset_name]()
    out = res.assemble_identity(preset, cutoffs, cfg.quad)
    return Check(f"{preset_name}: resolution of identity, cutoffs {list(cutoffs)}", 0.0,
                 out.deviation, out.deviation, cfg.tolerance("identity"), "derived-oracle",
                 detail=f"basis size {out.operator.shape[0]}")


def _suite(**fns):
    return {k: v for k, v in fns.items()}


# --------------------------------------------------------------------------
# quaternion, complex representation


def _qc_families():
    return [cond.quaternion_complex_family("q1", "r"), cond.quaternion_complex_family("q2", "s")]


def qc_algebra(cfg):
    rng = _rng(cfg)
    tol = cfg.tolerance("algebra")
    out = SuiteOutput()
    worst_mult = worst_rt = worst_sq = 0.0
    for _ in range(200):
        a, b = rng.normal(size=4), rng.normal(size=4)
        qa, qb = hc.Quaternion.from_array(a), hc.Quaternion.from_array(b)
        lhs = hc.quat_complex_rep(qa) @ hc.quat_complex_rep(qb)
        worst_mult = max(worst_mult, float(np.abs(lhs - hc.quat_complex_rep(qa * qb)).max()))
        pol = hc.quat_polar_decompose(qa)
        rec = pol.r * herm_exp(hc.sigma_n(pol.phi, pol.psi), pol.theta)
        worst_rt = max(worst_rt, float(np.abs(rec - hc.quat_complex_rep(qa)).max()))
        s = hc.sigma_n(pol.phi, pol.psi)
        worst_sq = max(worst_sq, float(np.abs(s @ s - identity(2)).max()))
    out.checks += [
        check("complex rep is multiplicative (200 pairs)", 0, worst_mult, tol, "derived-oracle",
              relative=False),
        check("polar round trip r exp(i theta sigma(n)) (200 draws)", 0, worst_rt, tol,
              "derived-oracle", relative=False),
        check("sigma(n)^2 = I (200 draws)", 0, worst_sq, tol, "closed-form", relative=False),
    ]
    return out


def qc_conditions(cfg):
    f1, f2 = _qc_families()
    rep = cond.check_pair_conditions(f1, f2, samples=64, seed=cfg.seed,
                                     tol=cfg.tolerance("conditions"))
    out = SuiteOutput()
    for k, v in rep.residuals.items():
        out.checks.append(check(f"pair condition {k} (64 draws)", 0, v, rep.tol, "closed-form",
                                relative=False))
    out.checks.append(Check("adjoint conditions follow from the cross conditions", 1.0,
                            float(rep.values["implication_ok"]),
                            0.0 if rep.values["implication_ok"] else 1.0, 0.5, "derived-oracle"))
    return out


def qc_norms(cfg):
    rng = _rng(cfg)
    fams = _qc_families()
    w = st.factorial_weights()
    trunc = st.TruncationSpec(2, (cfg.cutoff, cfg.cutoff))
    out = SuiteOutput()
    for r in _radii(cfg):
        for s in _radii(cfg):
            params = [_sample_q(rng, "r", r), _sample_q(rng, "s", s)]
            out.checks += _norm_checks(f"quaternion-complex r={r} s={s}", fams, [w, w], params,
                                       trunc, 2 * math.exp(r * r + s * s), cfg)
    return out


def qc_moments(cfg):
    recs = res.moment_residuals(res.quaternion_complex_moments(10), cfg.quad)
    c, rows = _moment_checks("quaternion-complex W=2/pi^2", recs, cfg.tolerance("moments"))
    return SuiteOutput(c, rows)


def qc_identity(cfg):
    k = cfg.identity_cutoff
    return SuiteOutput([_identity_check("quaternion-complex", (k, k), cfg)])


def qc_states(cfg, params):
    fams = _qc_families()
    w = st.factorial_weights()
    p = [dict({"r": 0.5, "phi": 0.3, "psi": 0.2, "zeta": 0.1}, **params.get("q1", {})),
         dict({"s": 0.5, "phi": 1.3, "psi": 2.2, "zeta": 0.4}, **params.get("q2", {}))]
    return st.build_all(fams, [w, w], p, st.TruncationSpec(2, (cfg.cutoff, cfg.cutoff)))


# --------------------------------------------------------------------------
# block extension


def ext_algebra(cfg):
    rng = _rng(cfg)
    fam = cond.extension_family()
    out = SuiteOutput()
    worst_f = worst_h = worst_c = 0.0
    for _ in range(64):
        p = fam.sample(rng)
        A = fam.radial_matrix(p)
        f = hc.clifford_scalar(A)
        worst_f = max(worst_f, abs(f - (p["r"] ** 2 + p["s"] ** 2)))
        G = fam.phase_generator(p)
        worst_h = max(worst_h, float(np.abs(G - G.conj().T).max()))
        worst_c = max(worst_c, float(np.abs(A @ G - G @ A).max()))
    tol = cfg.tolerance("algebra")
    out.checks += [
        check("block radial part is Clifford with f = r^2 + s^2 (64 draws)", 0, worst_f, tol,
              "closed-form", relative=False),
        check("block phase generator Hermitian (64 draws)", 0, worst_h, tol, "closed-form",
              relative=False),
        check("[A(r,s), Theta] = 0 (64 draws)", 0, worst_c, tol, "closed-form", relative=False),
    ]
    return out


def ext_norms(cfg):
    rng = _rng(cfg)
    fams = [cond.extension_family("B1"), cond.extension_family("B2")]
    w = st.factorial_weights()
    trunc = st.TruncationSpec(4, (cfg.cutoff, cfg.cutoff))
    out = SuiteOutput()
    for rad in [(0.0, 0.0, 0.0, 0.0), (0.5 ** 0.5,) * 4, (0.3, 0.4, 0.6, 0.2), (1.0, 0.0, 0.0, 1.0)]:
        params = []
        for k in range(2):
            p = fams[k].sample(rng)
            p["r"], p["s"] = rad[2 * k], rad[2 * k + 1]
            params.append(p)
        closed = 4 * math.exp(sum(x * x for x in rad))
        out.checks += _norm_checks(f"quaternion-extension radii={list(rad)}", fams, [w, w],
                                   params, trunc, closed, cfg)
    return out


def ext_moments(cfg):
    tol = cfg.tolerance("moments")
    recs = res.extension_product_grid(10, cfg.quad)
    c, rows = _moment_checks("quaternion-extension W=16/(r^2+s^2) per factor", recs, tol)
    joint = res.extension_joint_moment(2, 3)
    c.append(check("joint integral with one shared 4 e^{sum} equals 4 m! l! (m=2, l=3)",
                   4 * 2 * 6, joint, tol, "derived-oracle",
                   detail="the product of per-factor integrals is what equals m! l!"))
    return SuiteOutput(c, rows)


# --------------------------------------------------------------------------
# quaternion, real representation


def qr_algebra(cfg):
    rng = _rng(cfg)
    worst = 0.0
    for _ in range(1000):
        a = rng.normal(size=4)
        M = hc.quat_real_rep(a) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        worst = max(worst, float(np.abs(M @ M.conj().T - np.dot(a, a) * np.eye(4)).max()))
    c = check("real quaternion rep: M M^dagger = |q|^2 I (1000 draws)", 0, worst,
              cfg.tolerance("algebra"), "closed-form", relative=False)
    rep = cond.check_clifford_alternative(cond.real_quaternion_family(), 64, cfg.seed)
    c2 = Check("Clifford alternative, real rep family (64 draws)", 0.0,
               rep.residuals["clifford_relative"], rep.residuals["clifford_relative"], 1.0,
               "closed-form", detail="residual relative to the Clifford tolerance")
    return SuiteOutput([c, c2])


def _qr_params(rng, t, s):
    return [{"a": t * _direction(rng, 4), "zeta": rng.uniform(0, 2 * np.pi)},
            {"a": s * _direction(rng, 4), "zeta": rng.uniform(0, 2 * np.pi)}]


def qr_norms(cfg):
    rng = _rng(cfg)
    fam = cond.real_quaternion_family()
    w = st.factorial_weights()
    trunc = st.TruncationSpec(4, (cfg.cutoff, cfg.cutoff))
    out = SuiteOutput()
    for t in _radii(cfg):
        for s in _radii(cfg):
            out.checks += _norm_checks(f"quaternion-real t={t} s={s}", [fam, fam], [w, w],
                                       _qr_params(rng, t, s), trunc,
                                       4 * math.exp(t * t + s * s), cfg)
    return out


def qr_moments(cfg):
    tol = cfg.tolerance("moments")
    recs = res.moment_residuals(res.quaternion_real_moments(10), cfg.quad)
    c, rows = _moment_checks("quaternion-real W=4/pi^2", recs, tol)
    return SuiteOutput(c, rows)


def qr_identity(cfg):
    k = cfg.identity_cutoff
    return SuiteOutput([_identity_check("quaternion-real", (k, k), cfg)])


def qr_oscillator(cfg):
    rng = np.random.default_rng(cfg.seed)
    fam = cond.real_quaternion_family()
    w = st.factorial_weights()
    M = cfg.cutoff
    params = [{"a": 0.5 * _direction(rng, 4), "zeta": 0.7},
              {"a": 0.5 * _direction(rng, 4), "zeta": 1.9}]
    trunc = st.TruncationSpec(4, (M, M))
    states = st.build_all([fam, fam], [w, w], params, trunc)
    xs = osc.x_sequence(w, M)
    L = osc.build_ladders("first_factor", 4, (M, M), [xs, xs])
    A1 = fam.matrix(params[0])
    worst = max(osc.eigen_check(s, A1, L) for s in states)
    return SuiteOutput([check("A|q1,q2,j> = q1|q1,q2,j>, |q1| = 0.5", 0, worst,
                              cfg.tolerance("eigen"), "derived-oracle", relative=False)])


def qr_states(cfg, params):
    rng = _rng(cfg)
    fam = cond.real_quaternion_family()
    w = st.factorial_weights()
    p = _qr_params(rng, 0.5, 0.5)
    for k, key in enumerate(("q1", "q2")):
        if key in params:
            p[k] = {"a": np.asarray(params[key]["a"], float),
                    "zeta": params[key].get("zeta", 0.0)}
    return st.build_all([fam, fam], [w, w], p, st.TruncationSpec(4, (cfg.cutoff, cfg.cutoff)))


# --------------------------------------------------------------------------
# octonions


def oct_algebra(cfg):
    rng = _rng(cfg)
    wl = wr = 0.0
    for _ in range(1000):
        a = rng.normal(size=8)
        n2 = float(np.dot(a, a))
        L, R = hc.oct_left_rep(a), hc.oct_right_rep(a)
        for M, which in ((L, "l"), (R, "r")):
            r = max(float(np.abs(M @ M.T - n2 * np.eye(8)).max()),
                    float(np.abs(M.T @ M - n2 * np.eye(8)).max()))
            if which == "l":
                wl = max(wl, r)
            else:
                wr = max(wr, r)
    tol = cfg.tolerance("algebra")
    return SuiteOutput([
        check("left octonion rep: w(a) w(a)^T = |a|^2 I (1000 draws)", 0, wl, tol,
              "closed-form", relative=False),
        check("right octonion rep: v(a) v(a)^T = |a|^2 I (1000 draws)", 0, wr, tol,
              "closed-form", relative=False),
    ])


def oct_norms(cfg):
    rng = _rng(cfg)
    fams = [cond.octonion_family("w", "left"), cond.octonion_family("v", "right")]
    w = st.factorial_weights()
    trunc = st.TruncationSpec(8, (cfg.cutoff, cfg.cutoff))
    out = SuiteOutput()
    for r in (0.0, 0.5, 1.0):
        for s in (0.0, 0.5, 1.0):
            params = [{"a": r * _direction(rng, 8), "zeta": rng.uniform(0, 2 * np.pi)},
                      {"a": s * _direction(rng, 8), "zeta": rng.uniform(0, 2 * np.pi)}]
            out.checks += _norm_checks(f"octonion left/right |a|={r} |b|={s}", fams, [w, w],
                                       params, trunc, 8 * math.exp(r * r + s * s), cfg,
                                       prov="derived-oracle")
    return out


# --------------------------------------------------------------------------
# matrix weights


def _mw_setup(rng, radii, xs=(0.3, 1.1)):
    fam = cond.real_quaternion_family()
    weights = [st.rotation_weight(x) for x in xs[: len(radii)]]
    params = [{"a": q * _direction(rng, 4), "zeta": rng.uniform(0, 2 * np.pi)} for q in radii]
    return [fam] * len(radii), weights, params


def mw_algebra(cfg):
    worst = 0.0
    for x in (0.0, 0.3, 1.1, 2.5):
        w = st.rotation_weight(x)
        for m in range(12):
            worst = max(worst, abs(w.clifford_f(m, 4) - 1 / math.factorial(m)))
    return SuiteOutput([check("R(m) R(m)^dagger = I/m! for rotation blocks", 0, worst,
                              cfg.tolerance("algebra"), "closed-form", relative=False)])


def mw_norms(cfg):
    rng = _rng(cfg)
    trunc = st.TruncationSpec(4, (cfg.cutoff, cfg.cutoff))
    out = SuiteOutput()
    for q1 in _radii(cfg):
        for q2 in _radii(cfg):
            fams, w, params = _mw_setup(rng, (q1, q2))
            out.checks += _norm_checks(f"matrix-weight |q1|={q1} |q2|={q2}", fams, w, params,
                                       trunc, 4 * math.exp(q1 * q1 + q2 * q2), cfg)
    return out


def mw_moments(cfg):
    tol = cfg.tolerance("moments")
    recs = res.moment_residuals(res.matrix_weight_moments(10, 2), cfg.quad)
    c, rows = _moment_checks("matrix-weight d mu = (4/pi^2) |q1||q2|", recs, tol)
    return SuiteOutput(c, rows)


def mw_identity(cfg):
    k = cfg.identity_cutoff
    preset = res.matrix_weight_measure(2)
    out = res.assemble_identity(preset, (k, k), cfg.quad)
    return SuiteOutput([Check(f"matrix-weight: resolution of identity, cutoffs {[k, k]}", 0.0,
                              out.deviation, out.deviation, cfg.tolerance("identity"),
                              "derived-oracle", detail=f"basis size {out.operator.shape[0]}")])


def mw_states(cfg, params):
    rng = _rng(cfg)
    radii = tuple(params.get("radii", (0.5, 0.5)))
    fams, w, p = _mw_setup(rng, radii)
    return st.build_matrix_weight_mvcs(fams, w, p, st.TruncationSpec(4, (cfg.cutoff,) * len(radii)))


# --------------------------------------------------------------------------
# summations depending on one another


def _dep_inner(s):
    return lambda m: st.negative_binomial_norm(s, m)


def dep_outer_closed(r, s):
    """``2 sum_m (1-s)^{m+1} r^m / m! = 2 (1-s) e^{r(1-s)}``."""
    return 2 * (1 - s) * math.exp(r * (1 - s))


def dep_outer_true(r, s):
    """The trace series with the binomial weights summed exactly: ``2 e^r``."""
    return 2 * math.exp(r)


def _dep_build(cfg, r, s, outer=None):
    fa = cond.quaternion_complex_family("q", "r")
    fb = cond.quaternion_complex_family("p", "s")
    pa = {"r": r, "phi": 0.4, "psi": 1.0, "zeta": 0.3}
    pb = {"s": s, "phi": 2.0, "psi": 0.5, "zeta": 1.2}
    trunc = st.TruncationSpec(2, (cfg.cutoff, cfg.cutoff))
    rho1 = lambda m: float(math.factorial(m))
    rho2 = lambda m, l: 1.0 / math.comb(m + l, l)
    return fa, fb, pa, pb, trunc, rho1, rho2


def dep_norms(cfg):
    out = SuiteOutput()
    tol = cfg.tolerance("closed_form")
    for s in (0.0, 0.5):
        for m in (0, 1, 2, 5):
            closed = st.negative_binomial_norm(s, m)
            part = st.negative_binomial_partial(s, m, 200)
            out.checks.append(check(f"inner N2(s={s}, m={m}) partial sum vs (1-s)^-(m+1)",
                                    closed, part, tol, "closed-form"))
    for r in (0.0, 0.5, 1.0):
        for s in (0.0, 0.25, 0.5):
            series = 2 * sum((1 - s) ** (m + 1) * r ** m / math.factorial(m) for m in range(80))
            out.checks.append(check(f"outer series identity r={r} s={s}",
                                    dep_outer_closed(r, s), series, tol, "derived-oracle"))
            fa, fb, pa, pb, trunc, rho1, rho2 = _dep_build(cfg, r, s)
            n1 = st.dependent_norm_series(fa, fb, lambda m: m / 2, lambda l: l / 2, rho1, rho2,
                                          pa, pb, _dep_inner(s), (60, 200))
            out.checks.append(check(f"trace-series N1 r={r} s={s} vs 2 e^r", dep_outer_true(r, s),
                                    n1, tol, "derived-oracle"))
    # norm sum with the trace-series N1, on states truncated at the cutoff
    for r, s in ((0.5, 0.2), (1.0, 0.1)):
        fa, fb, pa, pb, trunc, rho1, rho2 = _dep_build(cfg, r, s)
        states = st.build_dependent_mvcs(fa, fb, lambda m: m / 2, lambda l: l / 2, rho1, rho2,
                                         pa, pb, trunc, _dep_inner(s), dep_outer_true(r, s))
        nc = st.norm_check(states)
        out.checks.append(check(f"dependent-sum norm sum r={r} s={s}", 1.0, nc.total,
                                cfg.tolerance("norm_sum"), "derived-oracle", relative=False))
    return out


def dep_moments(cfg):
    out = SuiteOutput()
    tol = 1e-10 if cfg.tol is None else cfg.tol
    recs = [res.beta_moment_check(m, l, cfg.quad)
            for m in range(1, 13) for l in range(0, 13 - m)]
    worst = max(recs, key=lambda r: r.residual)
    out.checks.append(Check("beta identity m int s^l (1-s)^{m-1} = 1/C(m+l,l), m+l <= 12",
                            worst.target, worst.computed, worst.residual, tol, "closed-form",
                            detail=f"worst index {list(worst.index)}"))
    out.moments += [("beta identity", r) for r in recs]
    comp = [res.dependent_composite_check(m, l, "corrected", cfg.quad)
            for m in range(1, 7) for l in range(0, 7)]
    c, rows = _moment_checks("composite with lambda_2 = m e^{-rs}/(2 pi (1-s))", comp,
                             cfg.tolerance("moments"))
    out.checks += c
    out.moments += rows
    return out


def dep_printed_norms(cfg):
    out = SuiteOutput()
    for r, s in ((0.5, 0.2), (1.0, 0.5)):
        out.checks.append(check(f"printed N1 = (1-s) e^(r(1-s)) vs trace series, r={r} s={s}",
                                (1 - s) * math.exp(r * (1 - s)), dep_outer_true(r, s),
                                cfg.tolerance("closed_form"), "closed-form"))
        fa, fb, pa, pb, trunc, rho1, rho2 = _dep_build(cfg, r, s)
        states = st.build_dependent_mvcs(fa, fb, lambda m: m / 2, lambda l: l / 2, rho1, rho2,
                                         pa, pb, trunc, _dep_inner(s),
                                         (1 - s) * math.exp(r * (1 - s)))
        nc = st.norm_check(states)
        out.checks.append(check(f"norm sum with the printed N1, r={r} s={s}", 1.0, nc.total,
                                cfg.tolerance("norm_sum"), "closed-form", relative=False))
    return out


def dep_printed_moments(cfg):
    comp = [res.dependent_composite_check(m, l, "printed", cfg.quad)
            for m in range(1, 7) for l in range(0, 7)]
    c, rows = _moment_checks("composite with lambda_2 = m e^{+rs}/(2 pi (1-s))", comp,
                             cfg.tolerance("moments"))
    return SuiteOutput(c, rows)


def dep_states(cfg, params):
    r, s = float(params.get("r", 0.5)), float(params.get("s", 0.2))
    if not 0 <= s < 1:
        raise ConfigError("s must lie in [0, 1)")
    fa, fb, pa, pb, trunc, rho1, rho2 = _dep_build(cfg, r, s)
    return st.build_dependent_mvcs(fa, fb, lambda m: m / 2, lambda l: l / 2, rho1, rho2, pa, pb,
                                   trunc, _dep_inner(s), dep_outer_true(r, s))


# --------------------------------------------------------------------------
# oscillator algebra


def osc_suite(cfg):
    out = SuiteOutput()
    tol = cfg.tolerance("oscillator")
    w = st.factorial_weights()
    xs = osc.x_sequence(w, 8)
    out.checks.append(check("x_m = m for rho(m) = m!", 0,
                            float(np.abs(xs.values[:9] - np.arange(9)).max()), tol, "trivial",
                            relative=False))
    L = osc.build_ladders("first_factor", 2, (8, 8), [xs, xs])
    for k, v in osc.commutator_report(L, 1.0, 1).items():
        out.checks.append(check(f"first-factor {k} on interior states", 0, v, tol,
                                "closed-form", relative=False))
    out.checks.append(check("first-factor N = A^dagger A", 0,
                            float(np.abs(L.N_op - L.A_dagger @ L.A).max()), tol,
                            "derived-oracle", relative=False))
    M = cfg.cutoff
    fam = cond.constant_family(np.array([[0.5]]))
    state = st.build_all([fam], [w], [{"zeta": 0.0}], st.TruncationSpec(1, (M,)))[0]
    L1 = osc.build_ladders("first_factor", 1, (M,), [osc.x_sequence(w, M)])
    out.checks.append(check("scalar eigen relation a|z> = z|z>, z = 0.5", 0,
                            osc.eigen_check(state, [[0.5]], L1), cfg.tolerance("eigen"),
                            "derived-oracle", relative=False))
    out.checks += qr_oscillator(cfg).checks
    wit = diagonal_witness(cfg)
    out.checks.append(Check("diagonal variant is not an eigen-operator (witness > 1e-3)",
                            1e-3, wit, 0.0 if wit > 1e-3 else 1.0, 0.5, "derived-oracle",
                            detail="quaternions 0.5 i and 0.5 j, cutoff 12"))
    return out


def diagonal_witness(cfg=None, M=12):
    fam = cond.real_quaternion_family()
    w = st.factorial_weights()
    p1 = {"a": np.array([0, 0.5, 0, 0]), "zeta": 0.0}
    p2 = {"a": np.array([0, 0, 0.5, 0]), "zeta": 0.0}
    states = st.build_all([fam, fam], [w, w], [p1, p2], st.TruncationSpec(4, (M, M)))
    xs = osc.x_sequence(w, M)
    L = osc.build_ladders("diagonal", 4, (M, M), [xs, xs])
    labels = [fam.matrix(p1), fam.matrix(p2)]
    return max(osc.diagonal_witness(s, labels, L) for s in states)


# --------------------------------------------------------------------------
# tensored JC


def _jc_params(cfg):
    d = cfg.params.get("jc", {})
    return jc.JCParams(**d) if d else jc.JCParams()


def _jc_labels(rng, radii):
    ph = rng.uniform(0, 2 * np.pi, size=4)
    Z1 = [radii[0] * np.exp(1j * ph[0]), radii[1] * np.exp(1j * ph[1])]
    Z2 = [radii[2] * np.exp(1j * ph[2]), radii[3] * np.exp(1j * ph[3])]
    return Z1, Z2


def tjc_spectrum(cfg):
    out = SuiteOutput()
    tol = cfg.tolerance("algebra")
    p = jc.JCParams(3.0, 1.0, 1.0)
    ep, em = jc.jc_weak_spectrum(p, 1)
    out.checks += [check("E_1^+ at w=3, w0=1, k=1", 1.0, ep, tol, "derived-oracle"),
                   check("E_1^- at w=3, w0=1, k=1", 2.0, em, tol, "derived-oracle"),
                   check("E_3 at k=0, w=2, Delta=1", 6.0, jc.jc_weak_spectrum(
                       jc.JCParams(2.0, 1.0, 0.0), 3)[0], tol, "derived-oracle"),
                   check("resonant rho(3) at w=2", 48.0, jc.resonance_rho(2.0, 3), tol,
                         "derived-oracle")]
    bad = 0
    tested = 0
    for w in (1.0, 2.0, 3.0, 5.0):
        for frac in (0.1, 0.5, 0.9):
            for k in (0.05, 0.3, 1.0, 2.0):
                q = jc.JCParams(w, w * (1 - frac), k)
                if not q.in_window():
                    continue
                tested += 1
                sc = jc.monotonicity_scan(q, 200)
                bad += not (sc["plus_increasing"] and sc["minus_increasing"])
    out.checks.append(Check(f"exact JC energies strictly increasing in the window, n <= 200 "
                            f"({tested} parameter points)", 0.0, float(bad), float(bad), 0.5,
                            "closed-form"))
    return out


def tjc_norms(cfg):
    rng = _rng(cfg)
    p = _jc_params(cfg)
    out = SuiteOutput()
    for radii in [(0, 0, 0, 0), (0.5, 0.5, 0.5, 0.5), (1, 1, 1, 1), (0.2, 0.9, 0.7, 0.3)]:
        Z1, Z2 = _jc_labels(rng, radii)
        nres = jc.tensored_jc_normalization(p, Z1, Z2, (cfg.cutoff, cfg.cutoff))
        out.checks.append(check(f"tensored JC series N vs sum_k exp(...) radii={list(radii)}",
                                jc.series_jc_norm(p, Z1, Z2), nres.value,
                                cfg.tolerance("closed_form"), "derived-oracle"))
        states = jc.build_tensored_jc_cs(p, Z1, Z2, (cfg.cutoff, cfg.cutoff))
        out.checks.append(check(f"tensored JC norm sum radii={list(radii)}", 1.0,
                                st.norm_check(states).total, cfg.tolerance("norm_sum"),
                                "derived-oracle", relative=False))
    return out


def tjc_moments(cfg):
    p = _jc_params(cfg)
    recs = []
    for beta in (p.omega_plus, p.omega_minus, p.omega):
        recs += [res.jc_radial_moment_check(beta, m, cfg.quad) for m in range(11)]
    c, rows = _moment_checks("tensored JC radial weights r e^{-r^2/w} (w = w+, w-, w)", recs,
                             cfg.tolerance("moments"))
    return SuiteOutput(c, rows)


def tjc_identity(cfg):
    k = cfg.identity_cutoff
    return SuiteOutput([_identity_check("tensored-jc", (k, k), cfg)])


def tjc_printed(cfg):
    p = jc.JCParams(2.0, 1.0, 0.0)  # w+ = w- = 2 at zero coupling, unit detuning
    out = SuiteOutput()
    q = jc.JCParams(3.0, 2.0, 0.0)  # w+ = w- = w = 3 at unit detuning
    for par in (p, q):
        for rad in (0.5, 1.0):
            Z = [rad, rad]
            nres = jc.tensored_jc_normalization(par, Z, Z, (cfg.cutoff, cfg.cutoff))
            out.checks.append(check(f"printed N = exp(sum of four) vs trace series, "
                                    f"w={par.omega} radii={rad}", jc.printed_jc_norm(par, Z, Z),
                                    nres.value, cfg.tolerance("closed_form"), "closed-form"))
    return out


def tjc_states(cfg, params):
    p = _jc_params(cfg)
    Z1 = [complex(*z) if isinstance(z, (list, tuple)) else complex(z)
          for z in params.get("Z1", [0.5, 0.5j])]
    Z2 = [complex(*z) if isinstance(z, (list, tuple)) else complex(z)
          for z in params.get("Z2", [0.3, -0.4])]
    return jc.build_tensored_jc_cs(p, Z1, Z2, (cfg.cutoff, cfg.cutoff))


# --------------------------------------------------------------------------
# two-mode model


def _tm_params(cfg):
    d = cfg.params.get("two_mode", {})
    return jc.TwoModeParams(**d) if d else jc.TwoModeParams(1.3, 0.7)


def tm_spectrum(cfg):
    out = SuiteOutput()
    tol = cfg.tolerance("algebra")
    p = jc.TwoModeParams(1.0, 2.0, 0.0)
    out.checks.append(check("E^{0,0} at w1=1, w2=2, g=0", 3.0, jc.two_mode_spectrum(p, 0, 0)[0],
                            tol, "closed-form"))
    e = jc.two_mode_spectrum(jc.TwoModeParams(1.0, 2.0, 1.0), 1, 1)
    out.checks += [check("E_+^{1,1} at g=1", 10.0, e[0], tol, "derived-oracle"),
                   check("E_-^{1,1} at g=1", 2.0, e[1], tol, "derived-oracle")]
    hits_eq = jc.degeneracy_scan(jc.TwoModeParams(1.0, 1.0), 30)
    hits_irr = jc.degeneracy_scan(jc.TwoModeParams(1.0, math.sqrt(2.0)), 30)
    out.checks.append(Check("w1 = w2: degeneracy found, n + m <= 30", 1.0, float(len(hits_eq)),
                            0.0 if hits_eq else 1.0, 0.5, "derived-oracle",
                            detail=f"first collision {hits_eq[0][:2] if hits_eq else None}"))
    out.checks.append(Check("w1 = 1, w2 = sqrt 2: no degeneracy, n + m <= 30", 0.0,
                            float(len(hits_irr)), float(len(hits_irr)), 0.5, "closed-form"))
    tp = _tm_params(cfg)
    out.spectrum = jc.spectrum_table(tp, 10, 10)
    g0 = max(abs(a - (tp.omega1 * (n + 1) + tp.omega2 * (m + 1)))
             for n, m, a, b in out.spectrum)
    out.checks.append(check("g = 0 spectrum is e_n + e_m", 0, g0, tol, "closed-form",
                            relative=False))
    return out


def tm_special(cfg):
    out = SuiteOutput()
    tol = cfg.tolerance("algebra")
    p = jc.TwoModeParams(1.0, 1.0)
    out.checks += [
        check("alpha at w1 = w2 = 1, n = 0", 3.0, jc.two_mode_alpha(p, 0), tol, "closed-form"),
        check("1F1(1; alpha; 0) = 1", 1.0, jc.hyp1f1(1, 3.7, 0.0), tol, "trivial"),
        check("1F1(1; 3; 1) vs 60-term partial sum",
              sum(2.0 / math.factorial(k + 2) for k in range(60)), jc.hyp1f1(1, 3, 1.0), tol,
              "derived-oracle"),
        check("(3)_2 = 12", 12.0, jc.pochhammer(3, 2), tol, "derived-oracle"),
    ]
    rng = _rng(cfg)
    low = min(jc.hyp1f1(1, a, x) for a, x in zip(rng.uniform(0.1, 20, 200),
                                                 rng.uniform(0, 30, 200)))
    out.checks.append(Check("1F1(1; alpha; x) >= 1 on 200 draws (x >= 0)", 1.0, low,
                            0.0 if low >= 1.0 else 1.0 - low, 0.0, "closed-form"))
    return out


def tm_norms(cfg):
    rng = _rng(cfg)
    p = _tm_params(cfg)
    out = SuiteOutput()
    for r1, r2, s in ((0.5, 0.8, 0.6), (1.0, 1.0, 1.0), (0.2, 0.0, 0.9)):
        z = [r1 * np.exp(1j * rng.uniform(0, 6.28)), r2 * np.exp(1j * rng.uniform(0, 6.28))]
        v = s * np.exp(1j * rng.uniform(0, 6.28))
        states = jc.build_two_mode_cs(p, z, v, (cfg.cutoff, cfg.cutoff))
        out.checks.append(check(f"two-mode norm sum r=({r1},{r2}) s={s}", 1.0,
                                st.norm_check(states).total, cfg.tolerance("norm_sum"),
                                "derived-oracle", relative=False))
        series = sum((r1 ** (2 * n) + r2 ** (2 * n)) / (p.omega1 ** n * math.gamma(n + 2))
                     for n in range(120))
        out.checks.append(check(f"two-mode outer N closed form r=({r1},{r2})", series,
                                jc.two_mode_outer_norm(p, r1, r2), cfg.tolerance("closed_form"),
                                "derived-oracle"))
        if r1 > 0 and r2 > 0:
            bound = jc.two_mode_printed_bound(p, r1, r2)
            n_out = jc.two_mode_outer_norm(p, r1, r2)
            out.checks.append(Check(f"two-mode N below the printed bound r=({r1},{r2})",
                                    bound, n_out, 0.0 if n_out <= bound else n_out - bound, 0.0,
                                    "closed-form"))
    return out


def tm_density(cfg):
    p = _tm_params(cfg)
    d = jc.two_mode_density_check(p, 8, cfg.nodes)
    tol = cfg.tolerance("moments")
    out = SuiteOutput()
    for key, grid in (("corrected", "radial density (2 r^3/w1^2) e^{-r^2/w1}"),
                      ("hat", "density lambda_hat(s, n)")):
        c, rows = _moment_checks(grid, d[key], tol)
        out.checks += c
        out.moments += rows
    comp = d["composite_corrected"]
    out.checks.append(check("composite normalization with the corrected radial density", 1.0,
                            comp.computed, tol, "derived-oracle"))
    return out


def tm_printed_density(cfg):
    p = _tm_params(cfg)
    d = jc.two_mode_density_check(p, 8, cfg.nodes)
    tol = cfg.tolerance("moments")
    out = SuiteOutput()
    for rec in d["printed"]:
        out.checks.append(check(f"printed radial density (2 r^2/w1^2) e^{{-r^2/w1^2}}: "
                                f"moment n={rec.index[0]}", rec.target, rec.computed, tol,
                                "closed-form"))
        out.moments.append(("printed radial density", rec))
    comp = d["composite_printed"]
    out.checks.append(check("composite normalization with the printed radial density", 1.0,
                            comp.computed, tol, "closed-form",
                            detail=f"expected pi w1^2/4 = {np.pi * p.omega1 ** 2 / 4:.6f}"))
    return out


def tm_states(cfg, params):
    p = _tm_params(cfg)
    z = [complex(*x) if isinstance(x, (list, tuple)) else complex(x)
         for x in params.get("z", [0.5, 0.3j])]
    v = params.get("v", 0.6)
    v = complex(*v) if isinstance(v, (list, tuple)) else complex(v)
    return jc.build_two_mode_cs(p, z, v, (cfg.cutoff, cfg.cutoff))


def sh_norms(cfg):
    rng = _rng(cfg)
    p = _tm_params(cfg)
    out = SuiteOutput()
    for rad in [(0, 0, 0, 0), (0.5, 0.8, 0.6, 0.1), (1, 1, 1, 1)]:
        ph = np.exp(1j * rng.uniform(0, 2 * np.pi, 4))
        z, v = [rad[0] * ph[0], rad[1] * ph[1]], [rad[2] * ph[2], rad[3] * ph[3]]
        states = jc.build_shifted_two_mode_cs(p, z, v, (cfg.cutoff, cfg.cutoff))
        out.checks.append(check(f"shifted two-mode series N radii={list(rad)}",
                                jc.shifted_two_mode_norm(p, z, v), states[0].norm,
                                cfg.tolerance("closed_form"), "derived-oracle"))
        out.checks.append(check(f"shifted two-mode norm sum radii={list(rad)}", 1.0,
                                st.norm_check(states).total, cfg.tolerance("norm_sum"),
                                "derived-oracle", relative=False))
    return out


def sh_identity(cfg):
    k = cfg.identity_cutoff
    return SuiteOutput([_identity_check("two-mode-shifted", (k, k), cfg)])


def sh_states(cfg, params):
    p = _tm_params(cfg)
    z = [complex(x) for x in params.get("z", [0.5, 0.3])]
    v = [complex(x) for x in params.get("v", [0.6, 0.2])]
    return jc.build_shifted_two_mode_cs(p, z, v, (cfg.cutoff, cfg.cutoff))


# --------------------------------------------------------------------------
# inline family configurations


FAMILY_BUILDERS = {
    "quaternion-complex": lambda k: cond.quaternion_complex_family(f"f{k}", "r"),
    "quaternion-real": lambda k: cond.real_quaternion_family(f"f{k}"),
    "octonion-left": lambda k: cond.octonion_family(f"f{k}", "left"),
    "octonion-right": lambda k: cond.octonion_family(f"f{k}", "right"),
    "extension": lambda k: cond.extension_family(f"f{k}"),
}


def _inline_parts(cfg):
    fams, weights, params = [], [], []
    for k, spec in enumerate(cfg.families):
        kind = spec.get("type")
        if kind not in FAMILY_BUILDERS:
            raise ConfigError(f"unknown family type {kind!r}")
        fams.append(FAMILY_BUILDERS[kind](k))
        wspec = spec.get("weight", {"kind": "factorial"})
        if wspec.get("kind") != "factorial":
            raise ConfigError("inline weights support kind 'factorial' only")
        weights.append(st.factorial_weights(wspec.get("scale", 1.0)))
        p = {key: (np.asarray(v, float) if isinstance(v, list) else v)
             for key, v in spec.get("params", {}).items()}
        params.append(p)
    dims = {f.dim for f in fams}
    if len(dims) != 1:
        raise ConfigError("all inline families must share one dimension")
    return fams, weights, params, dims.pop()


def inline_suites(cfg):
    def norms(c):
        fams, w, p, n = _inline_parts(c)
        trunc = st.TruncationSpec(n, (c.cutoff,) * len(fams))
        states = st.build_all(fams, w, p, trunc)
        nc = st.norm_check(states)
        return SuiteOutput([check("inline families: sum_j <state_j|state_j>", 1.0, nc.total,
                                  c.tolerance("norm_sum"), "derived-oracle", relative=False)])

    def conditions(c):
        fams, _, _, _ = _inline_parts(c)
        out = SuiteOutput()
        for f in fams:
            try:
                rep = cond.check_clifford_alternative(f, 64, c.seed)
                r = rep.residuals["clifford_relative"]
                out.checks.append(Check(f"{f.name}: Clifford alternative (64 draws)", 0.0, r, r,
                                        1.0, "closed-form",
                                        detail="residual relative to the Clifford tolerance"))
            except hc.NotCliffordType:
                rep = cond.check_pair_conditions(f, f, 64, c.seed, c.tolerance("conditions"))
                worst = max(rep.residuals.values())
                out.checks.append(check(f"{f.name}: admissibility conditions (64 draws)", 0,
                                        worst, rep.tol, "closed-form", relative=False))
        return out

    return {"conditions": conditions, "norms": norms}


# --------------------------------------------------------------------------
# registry


PRESETS = {
    "quaternion-complex": Preset(
        "quaternion-complex",
        "two complex-rep quaternions with factorial weights and W = 2/pi^2",
        _suite(algebra=qc_algebra, conditions=qc_conditions, norms=qc_norms,
               moments=qc_moments, identity=qc_identity),
        qc_states),
    "quaternion-extension": Preset(
        "quaternion-extension",
        "4x4 block extension A(r,s) exp(i zeta Theta) with W = 16/(r^2+s^2) per factor",
        _suite(algebra=ext_algebra, norms=ext_norms, moments=ext_moments)),
    "quaternion-real": Preset(
        "quaternion-real",
        "real 4x4 quaternion reps with factorial weights and W = 4/pi^2",
        _suite(algebra=qr_algebra, norms=qr_norms, moments=qr_moments, identity=qr_identity,
               oscillator=qr_oscillator),
        qr_states),
    "octonion": Preset(
        "octonion",
        "left and right 8x8 octonion reps mixed in one state",
        _suite(algebra=oct_algebra, norms=oct_norms)),
    "matrix-weight": Preset(
        "matrix-weight",
        "matrix weights R(m) = rot(x)/sqrt(m!) with real quaternion labels",
        _suite(algebra=mw_algebra, norms=mw_norms, moments=mw_moments, identity=mw_identity),
        mw_states),
    "dependent-sum": Preset(
        "dependent-sum",
        "inner sum depending on the outer index; binomial weights, s in [0, 1)",
        _suite(norms=dep_norms, moments=dep_moments),
        dep_states),
    "dependent-sum-printed": Preset(
        "dependent-sum-printed",
        "the printed outer normalization and composite density of the dependent sum (fail)",
        _suite(norms=dep_printed_norms, moments=dep_printed_moments)),
    "oscillator": Preset(
        "oscillator",
        "ladder operators: commutators, eigen relation, diagonal-variant witness",
        _suite(oscillator=osc_suite)),
    "tensored-jc": Preset(
        "tensored-jc",
        "weak-coupling JC tensored with resonant JC: spectra, norms, identity",
        _suite(jc=tjc_spectrum, norms=tjc_norms, moments=tjc_moments, identity=tjc_identity),
        tjc_states),
    "tensored-jc-printed-norm": Preset(
        "tensored-jc-printed-norm",
        "the printed exponential normalization of the tensored JC states (fail)",
        _suite(norms=tjc_printed)),
    "two-mode": Preset(
        "two-mode",
        "two-level atom in a two-mode field, g = 0: spectrum, 1F1, norms, densities",
        _suite(jc=tm_spectrum, algebra=tm_special, norms=tm_norms, moments=tm_density),
        tm_states),
    "two-mode-printed-density": Preset(
        "two-mode-printed-density",
        "the printed radial density of the two-mode states (fail)",
        _suite(moments=tm_printed_density)),
    "two-mode-shifted": Preset(
        "two-mode-shifted",
        "shifted two-mode spectrum with independent sums",
        _suite(norms=sh_norms, identity=sh_identity),
        sh_states),
}


def suites_for(cfg):
    """Ordered ``(name, fn)`` pairs selected by the config."""
    table = inline_suites(cfg) if cfg.families is not None else PRESETS[cfg.preset].suites
    wanted = cfg.suites or list(SUITES)
    return [(s, table[s]) for s in SUITES if s in table and s in wanted]
