"""Quaternion and octonion matrix representations.

Conventions
-----------
Complex 2x2 quaternion rep::

    q = [[x0 + i x3, -x2 + i x1],
         [x2 + i x1,  x0 - i x3]]

Polar coordinates ``x0 = r cos(theta)``, ``x1 = r sin(theta) sin(phi) cos(psi)``,
``x2 = r sin(theta) sin(phi) sin(psi)``, ``x3 = r sin(theta) cos(phi)`` give
``q = r exp(i theta sigma(n))``.  The decomposition returned by
:func:`quat_polar_decompose` uses ``theta in [0, pi]`` (so ``sin(theta) >= 0``),
``phi = atan2(hypot(x1, x2), x3) in [0, pi]`` and
``psi = atan2(x2, x1) mod 2 pi``.  Degenerate directions fall back to zeros.
"""

from dataclasses import dataclass
import math

import numpy as np

from .matrix_core import adjoint, as_matrix, identity

PAULI_0 = identity(2)
PAULI_1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_2 = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_3 = np.array([[1, 0], [0, -1]], dtype=np.complex128)


class NotCliffordType(ValueError):
    """Raised when ``M M^dagger`` is not a scalar multiple of the identity."""


@dataclass(frozen=True)
class Quaternion:
    a0: float
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0

    @classmethod
    def from_array(cls, a):
        a = np.asarray(a, dtype=float)
        return cls(*a[:4])

    def as_array(self):
        return np.array([self.a0, self.a1, self.a2, self.a3])

    def norm2(self):
        return float(np.dot(self.as_array(), self.as_array()))

    def __mul__(self, other):
        # Hamilton product, i^2 = j^2 = k^2 = ijk = -1.
        w0, x0, y0, z0 = self.as_array()
        w1, x1, y1, z1 = other.as_array()
        return Quaternion(
            w0 * w1 - x0 * x1 - y0 * y1 - z0 * z1,
            w0 * x1 + x0 * w1 + y0 * z1 - z0 * y1,
            w0 * y1 - x0 * z1 + y0 * w1 + z0 * x1,
            w0 * z1 + x0 * y1 - y0 * x1 + z0 * w1,
        )


@dataclass(frozen=True)
class QuaternionPolar:
    r: float
    theta: float
    phi: float
    psi: float

    def to_quaternion(self):
        r, th, ph, ps = self.r, self.theta, self.phi, self.psi
        return Quaternion(
            r * math.cos(th),
            r * math.sin(th) * math.sin(ph) * math.cos(ps),
            r * math.sin(th) * math.sin(ph) * math.sin(ps),
            r * math.sin(th) * math.cos(ph),
        )


@dataclass(frozen=True)
class Octonion:
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != 8:
            raise ValueError("an octonion has exactly 8 real components")

    def norm2(self):
        a = np.asarray(self.coeffs, dtype=float)
        return float(np.dot(a, a))


def _components(q, size):
    if isinstance(q, Quaternion):
        return q.as_array()
    if isinstance(q, Octonion):
        return np.asarray(q.coeffs, dtype=float)
    a = np.asarray(q, dtype=float)
    if a.shape != (size,):
        raise ValueError(f"expected {size} real components, got shape {a.shape}")
    return a


def quat_complex_rep(q):
    x0, x1, x2, x3 = _components(q, 4)
    return np.array(
        [[x0 + 1j * x3, -x2 + 1j * x1],
         [x2 + 1j * x1, x0 - 1j * x3]],
        dtype=np.complex128,
    )


def sigma_n(phi, psi):
    """Hermitian unit-direction Pauli matrix with ``sigma_n(phi, psi)**2 = I``."""
    c, s = math.cos(phi), math.sin(phi)
    e = complex(math.cos(psi), math.sin(psi))
    return np.array([[c, s * e], [s * e.conjugate(), -c]], dtype=np.complex128)


def sigma_dot(n):
    """``n . (sigma_1, sigma_2, sigma_3)`` for a real 3-vector ``n``."""
    n1, n2, n3 = np.asarray(n, dtype=float)
    return n1 * PAULI_1 + n2 * PAULI_2 + n3 * PAULI_3


def quat_polar_decompose(q):
    x0, x1, x2, x3 = _components(q, 4)
    r = math.sqrt(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3)
    if r == 0.0:
        return QuaternionPolar(0.0, 0.0, 0.0, 0.0)
    b = math.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
    theta = math.atan2(b, x0)
    if b == 0.0:
        return QuaternionPolar(r, theta, 0.0, 0.0)
    phi = math.atan2(math.hypot(x1, x2), x3)
    psi = math.atan2(x2, x1) % (2 * math.pi)
    return QuaternionPolar(r, theta, phi, psi)


def quat_real_rep(q):
    a0, a1, a2, a3 = _components(q, 4)
    return np.array(
        [[a0, -a1, -a2, -a3],
         [a1, a0, -a3, a2],
         [a2, a3, a0, -a1],
         [a3, -a2, a1, a0]],
        dtype=np.complex128,
    )


# Sign/index tables for the 8x8 representations, copied row by row from the
# printed matrices: entry (i, j) = SIGN[i][j] * a[INDEX[i][j]].
OCT_INDEX = (
    (0, 1, 2, 3, 4, 5, 6, 7),
    (1, 0, 3, 2, 5, 4, 7, 6),
    (2, 3, 0, 1, 6, 7, 4, 5),
    (3, 2, 1, 0, 7, 6, 5, 4),
    (4, 5, 6, 7, 0, 1, 2, 3),
    (5, 4, 7, 6, 1, 0, 3, 2),
    (6, 7, 4, 5, 2, 3, 0, 1),
    (7, 6, 5, 4, 3, 2, 1, 0),
)
OCT_LEFT_SIGN = (
    (+1, -1, -1, -1, -1, -1, -1, -1),
    (+1, +1, -1, +1, -1, +1, +1, -1),
    (+1, +1, +1, -1, -1, -1, +1, +1),
    (+1, -1, +1, +1, -1, +1, -1, +1),
    (+1, +1, +1, +1, +1, -1, -1, -1),
    (+1, -1, +1, -1, +1, +1, +1, -1),
    (+1, -1, -1, +1, +1, -1, +1, +1),
    (+1, +1, -1, -1, +1, +1, -1, +1),
)
OCT_RIGHT_SIGN = (
    (+1, -1, -1, -1, -1, -1, -1, -1),
    (+1, +1, +1, -1, +1, -1, -1, +1),
    (+1, -1, +1, +1, +1, +1, -1, -1),
    (+1, +1, -1, +1, +1, -1, +1, -1),
    (+1, -1, -1, -1, +1, +1, +1, +1),
    (+1, +1, -1, +1, -1, +1, -1, +1),
    (+1, +1, +1, -1, -1, +1, +1, -1),
    (+1, -1, +1, +1, -1, -1, +1, +1),
)


def _oct_rep(a, signs):
    a = _components(a, 8)
    idx = np.array(OCT_INDEX)
    return (np.array(signs, dtype=float) * a[idx]).astype(np.complex128)


def oct_left_rep(a):
    return _oct_rep(a, OCT_LEFT_SIGN)


def oct_right_rep(a):
    return _oct_rep(a, OCT_RIGHT_SIGN)


def clifford_tolerance(M):
    M = np.asarray(M)
    return 1e-10 * M.shape[0] * float(np.max(np.abs(M)) ** 2)


def clifford_residual(M):
    """Return ``(f, residual)`` with ``f = Tr(M M^dagger)/n``."""
    M = as_matrix(M)
    n = M.shape[0]
    MMd = M @ adjoint(M)
    MdM = adjoint(M) @ M
    f = float(np.real(np.trace(MMd))) / n
    eye = identity(n)
    res = max(np.linalg.norm(MMd - f * eye), np.linalg.norm(MdM - f * eye))
    return f, float(res)


def clifford_scalar(M, tol=None):
    """Scalar ``f`` with ``M M^dagger = M^dagger M = f I``, or raise."""
    f, res = clifford_residual(M)
    tol = clifford_tolerance(M) if tol is None else tol
    if res > tol:
        raise NotCliffordType(f"residual {res:.3e} exceeds {tol:.3e}")
    return f


def extension_radial(r, s):
    """Block matrix ``[[r I, -s I], [s I, r I]]``."""
    I2 = identity(2)
    Z = np.zeros((2, 2), dtype=np.complex128)
    return np.block([[r * I2 + Z, -s * I2], [s * I2, r * I2]])


def extension_phase(n1, n2, theta):
    """Hermitian block generator built from two unit vectors ``n1``, ``n2``.

    ``n1`` and ``n2`` must be perpendicular for the generator to square to
    the identity; that is not enforced here so the condition checks can
    detect violations.
    """
    s1 = sigma_dot(n1)
    s2 = sigma_dot(n2)
    st, ct = math.sin(theta), math.cos(theta)
    return np.block([[st * s1, 1j * ct * s2], [-1j * ct * s2, st * s1]])


def unit_vector(phi, psi):
    return np.array([
        math.sin(phi) * math.cos(psi),
        math.sin(phi) * math.sin(psi),
        math.cos(phi),
    ])


def perpendicular_unit(n, alpha):
    """Unit vector perpendicular to ``n``, rotated by ``alpha`` about it."""
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n)
    trial = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = trial - np.dot(trial, n) * n
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    return math.cos(alpha) * e1 + math.sin(alpha) * e2
