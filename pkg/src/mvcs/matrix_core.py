"""Dense complex matrix primitives shared by every other module.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; the helpers here
only validate shape and Hermiticity where the maths requires it.
"""

import numpy as np

TOL_HERM = 1e-10


class DimensionMismatch(ValueError):
    pass


class NonHermitianError(ValueError):
    pass


def as_matrix(M):
    """Coerce ``M`` to a square, finite complex matrix."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def identity(n):
    return np.eye(n, dtype=np.complex128)


def adjoint(M):
    return np.conj(np.asarray(M)).T


def commutator(M, N):
    M = np.asarray(M)
    N = np.asarray(N)
    if M.shape != N.shape:
        raise DimensionMismatch(f"commutator of {M.shape} and {N.shape}")
    return M @ N - N @ M


def hermiticity_residual(M):
    M = np.asarray(M)
    return float(np.linalg.norm(M - adjoint(M)))


def is_hermitian(M, tol=TOL_HERM):
    return hermiticity_residual(M) <= tol


def herm_exp(theta, t):
    """Unitary ``exp(i t theta)`` for Hermitian ``theta``.

    Computed through the eigendecomposition so the result is unitary to
    rounding for any ``t``.
    """
    theta = as_matrix(theta)
    if not is_hermitian(theta):
        raise NonHermitianError(
            f"generator is not Hermitian (residual {hermiticity_residual(theta):.3e})"
        )
    w, V = np.linalg.eigh(0.5 * (theta + adjoint(theta)))
    return (V * np.exp(1j * t * w)) @ adjoint(V)


def abs_matrix(A):
    """Positive square root of ``A A^dagger``."""
    A = as_matrix(A)
    w, V = np.linalg.eigh(A @ adjoint(A))
    w = np.clip(w, 0.0, None)
    return (V * np.sqrt(w)) @ adjoint(V)


def matrix_power(A, p):
    """``A**p`` for integer ``p >= 0`` or, for normal ``A``, any real ``p >= 0``.

    Non-integer powers use the principal branch on the eigenvalues of the
    (normal) matrix, which is what fractional labels like ``q**(m/2)`` need.
    """
    A = np.asarray(A, dtype=np.complex128)
    if float(p).is_integer() and p >= 0:
        return np.linalg.matrix_power(A, int(p))
    if p < 0:
        raise ValueError("negative powers are not supported")
    # Schur form of a normal matrix is diagonal; use it to keep V unitary.
    from scipy.linalg import schur

    T, Z = schur(A, output="complex")
    off = T - np.diag(np.diag(T))
    if np.linalg.norm(off) > 1e-10 * max(1.0, np.linalg.norm(T)):
        raise ValueError("fractional power requires a normal matrix")
    lam = np.diag(T)
    with np.errstate(divide="ignore", invalid="ignore"):
        powered = np.where(lam == 0, 0.0, lam ** p)
    return (Z * powered) @ adjoint(Z)


def frobenius(M):
    return float(np.linalg.norm(M))
