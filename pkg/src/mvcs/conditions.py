"""Admissibility checks for polar matrix families ``A(r) exp(i zeta Theta(k))``.

The checks are sampling based: each family knows how to draw a parameter
record from a seeded generator, and the reports carry the worst residual
seen over all draws.
"""

from dataclasses import dataclass, field
import math
from typing import Callable, Optional

import numpy as np

from . import hypercomplex as hc
from .matrix_core import (
    DimensionMismatch,
    NonHermitianError,
    adjoint,
    as_matrix,
    commutator,
    herm_exp,
    hermiticity_residual,
    identity,
    is_hermitian,
)

DEFAULT_SAMPLES = 64
TOL_INT = 1e-9


@dataclass(frozen=True)
class PolarMatrixFamily:
    """A matrix-valued label ``radial(p) @ exp(i p[angle] phase(p))``.

    ``angle_key=None`` means the phase generator already carries its angles
    (the exponent is ``i * phase(p)``).
    """

    name: str
    dim: int
    radial: Callable[[dict], np.ndarray]
    phase: Callable[[dict], np.ndarray]
    sample: Callable[[np.random.Generator], dict]
    angle_key: Optional[str] = "zeta"
    radial_domain: str = "[0, inf) with r dr"
    phase_domain: str = ""
    radial_keys: tuple = ("r",)

    def radial_matrix(self, p):
        return as_matrix(self.radial(p))

    def phase_generator(self, p):
        return as_matrix(self.phase(p))

    def phase_unitary(self, p, power=1.0):
        angle = 1.0 if self.angle_key is None else p[self.angle_key]
        return herm_exp(self.phase_generator(p), power * angle)

    def matrix(self, p):
        return self.radial_matrix(p) @ self.phase_unitary(p)


@dataclass
class ConditionsReport:
    residuals: dict
    tol: float
    samples: int
    values: dict = field(default_factory=dict)

    @property
    def passed(self):
        return {k: v <= self.tol for k, v in self.residuals.items()}

    @property
    def ok(self):
        return all(self.passed.values())

    def failures(self):
        return [k for k, ok in self.passed.items() if not ok]


def _sphere_angles(rng):
    phi = math.acos(rng.uniform(-1.0, 1.0))
    psi = rng.uniform(0.0, 2 * math.pi)
    return phi, psi


def quaternion_complex_family(name="quaternion", radial_key="r", rmax=2.0):
    """``q = r exp(i zeta sigma(n))`` with ``A(r) = r I_2``.

    Phase measure: uniform on the sphere for ``n`` (``sin(phi) dphi dpsi / 4 pi``),
    uniform on ``[0, 2 pi)`` for ``zeta``.
    """

    def sample(rng):
        phi, psi = _sphere_angles(rng)
        return {radial_key: rng.uniform(0.0, rmax), "phi": phi, "psi": psi,
                "zeta": rng.uniform(0.0, 2 * math.pi)}

    return PolarMatrixFamily(
        name=name,
        dim=2,
        radial=lambda p: p[radial_key] * identity(2),
        phase=lambda p: hc.sigma_n(p["phi"], p["psi"]),
        sample=sample,
        phase_domain="sphere(phi, psi): sin(phi) dphi dpsi / 4pi",
        radial_keys=(radial_key,),
    )


def extension_family(name="extension", rmax=2.0):
    """Block family ``A(r, s) exp(i zeta Theta(n1, n2, theta))`` with ``n1 _|_ n2``."""

    def sample(rng):
        phi, psi = _sphere_angles(rng)
        return {"r": rng.uniform(0.0, rmax), "s": rng.uniform(0.0, rmax),
                "phi": phi, "psi": psi, "alpha": rng.uniform(0.0, 2 * math.pi),
                "theta": rng.uniform(0.0, 2 * math.pi),
                "zeta": rng.uniform(0.0, 2 * math.pi)}

    def phase(p):
        n1 = hc.unit_vector(p["phi"], p["psi"])
        n2 = hc.perpendicular_unit(n1, p["alpha"])
        return hc.extension_phase(n1, n2, p["theta"])

    return PolarMatrixFamily(
        name=name,
        dim=4,
        radial=lambda p: hc.extension_radial(p["r"], p["s"]),
        phase=phase,
        sample=sample,
        radial_domain="[0, inf)^2 with r s dr ds",
        phase_domain="sphere(n1) x circle(n2 _|_ n1) x [0, 2pi)",
        radial_keys=("r", "s"),
    )


def real_quaternion_family(name="real-quaternion", rmax=2.0):
    """``e^{i theta} q'(a)`` with ``q'`` the real 4x4 quaternion representation."""

    def sample(rng):
        a = rng.normal(size=4)
        a *= rng.uniform(0.0, rmax) / np.linalg.norm(a)
        return {"a": a, "zeta": rng.uniform(0.0, 2 * math.pi)}

    return PolarMatrixFamily(
        name=name,
        dim=4,
        radial=lambda p: hc.quat_real_rep(p["a"]),
        phase=lambda p: identity(4),
        sample=sample,
        radial_domain="R^4 (norm t with t dt)",
        phase_domain="circle",
        radial_keys=("a",),
    )


def octonion_family(name="octonion", side="left", rmax=2.0):
    rep = hc.oct_left_rep if side == "left" else hc.oct_right_rep

    def sample(rng):
        a = rng.normal(size=8)
        a *= rng.uniform(0.0, rmax) / np.linalg.norm(a)
        return {"a": a, "zeta": rng.uniform(0.0, 2 * math.pi)}

    return PolarMatrixFamily(
        name=name,
        dim=8,
        radial=lambda p: rep(p["a"]),
        phase=lambda p: identity(8),
        sample=sample,
        radial_domain="R^8",
        phase_domain="circle",
        radial_keys=("a",),
    )


def diagonal_family(name="diagonal", dim=2, rmax=2.0):
    """``diag(r_k e^{i theta_k})``; parameters ``r`` and ``theta`` are arrays."""

    def sample(rng):
        return {"r": rng.uniform(0.0, rmax, size=dim),
                "theta": rng.uniform(0.0, 2 * math.pi, size=dim)}

    return PolarMatrixFamily(
        name=name,
        dim=dim,
        radial=lambda p: np.diag(np.asarray(p["r"], dtype=float)).astype(np.complex128),
        phase=lambda p: np.diag(np.asarray(p["theta"], dtype=float)).astype(np.complex128),
        sample=sample,
        angle_key=None,
        radial_domain=f"[0, inf)^{dim}",
        phase_domain=f"torus^{dim}",
        radial_keys=("r",),
    )


def constant_family(M, name="constant"):
    """A family whose radial part is the fixed matrix ``M`` and whose phase is scalar."""
    M = as_matrix(M)
    n = M.shape[0]

    return PolarMatrixFamily(
        name=name,
        dim=n,
        radial=lambda p: M,
        phase=lambda p: identity(n),
        sample=lambda rng: {"zeta": rng.uniform(0.0, 2 * math.pi)},
    )


PAIR_CONDITIONS = (
    "Theta_hermitian", "[A,A+]", "[A,Theta]",
    "Lambda_hermitian", "[B,B+]", "[B,Lambda]",
    "[B,A]", "[Lambda,A]", "[B,A+]", "[Theta,B]",
)
IMPLIED_CONDITIONS = ("[B+,A+]", "[Lambda,A+]", "[B+,A]", "[Theta,B+]")


def _pair_residuals(A, Th, B, La):
    nrm = np.linalg.norm
    Ad, Bd = adjoint(A), adjoint(B)
    base = {
        "Theta_hermitian": hermiticity_residual(Th),
        "[A,A+]": nrm(commutator(A, Ad)),
        "[A,Theta]": nrm(commutator(A, Th)),
        "Lambda_hermitian": hermiticity_residual(La),
        "[B,B+]": nrm(commutator(B, Bd)),
        "[B,Lambda]": nrm(commutator(B, La)),
        "[B,A]": nrm(commutator(B, A)),
        "[Lambda,A]": nrm(commutator(La, A)),
        "[B,A+]": nrm(commutator(B, Ad)),
        "[Theta,B]": nrm(commutator(Th, B)),
    }
    implied = {
        "[B+,A+]": nrm(commutator(Bd, Ad)),
        "[Lambda,A+]": nrm(commutator(La, Ad)),
        "[B+,A]": nrm(commutator(Bd, A)),
        "[Theta,B+]": nrm(commutator(Th, Bd)),
    }
    return base, implied


def check_pair_conditions(famA, famB, samples=DEFAULT_SAMPLES, seed=0, tol=1e-12):
    """Worst-case residuals of the ten pair conditions plus their adjoint consequences.

    ``report.values["implication_ok"]`` is False if some draw satisfied the
    four cross conditions but violated one of the implied adjoint ones.
    """
    if famA.dim != famB.dim:
        raise DimensionMismatch(f"family dims {famA.dim} and {famB.dim} differ")
    rng = np.random.default_rng(seed)
    worst = dict.fromkeys(PAIR_CONDITIONS + IMPLIED_CONDITIONS, 0.0)
    implication_ok = True
    same = famA is famB
    for _ in range(samples):
        pa = famA.sample(rng)
        pb = pa if same else famB.sample(rng)
        base, implied = _pair_residuals(
            famA.radial_matrix(pa), famA.phase_generator(pa),
            famB.radial_matrix(pb), famB.phase_generator(pb),
        )
        cross = max(base[k] for k in PAIR_CONDITIONS[6:])
        if cross <= tol and max(implied.values()) > tol:
            implication_ok = False
        for k, v in {**base, **implied}.items():
            worst[k] = max(worst[k], float(v))
    return ConditionsReport(worst, tol, samples, {"implication_ok": implication_ok})


def check_clifford_alternative(fam, samples=DEFAULT_SAMPLES, seed=0):
    """Require ``A A^dagger = A^dagger A = f I`` at every draw; record ``f``.

    Raises :class:`~mvcs.hypercomplex.NotCliffordType` on the first failure.
    """
    rng = np.random.default_rng(seed)
    fvals, params, worst = [], [], 0.0
    for _ in range(samples):
        p = fam.sample(rng)
        M = fam.matrix(p)
        f = hc.clifford_scalar(M)
        _, res = hc.clifford_residual(M)
        worst = max(worst, res / max(hc.clifford_tolerance(M), 1e-300))
        fvals.append(f)
        params.append(p)
    return ConditionsReport({"clifford_relative": worst}, 1.0, samples,
                            {"f": fvals, "params": params})


@dataclass
class SpectrumReport:
    eigenvalues: np.ndarray
    passed: bool
    reason: str = ""


def integer_spectrum_check(theta, tol=TOL_INT):
    theta = as_matrix(theta)
    if not is_hermitian(theta):
        raise NonHermitianError("integer spectrum check needs a Hermitian matrix")
    w = np.linalg.eigvalsh(0.5 * (theta + adjoint(theta)))
    nearest = np.rint(w)
    if np.any(np.abs(w - nearest) > tol):
        return SpectrumReport(w, False, "non-integer eigenvalue")
    if np.any(nearest == 0):
        return SpectrumReport(w, False, "zero eigenvalue")
    return SpectrumReport(w, True)
