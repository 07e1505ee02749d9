"""Generalized oscillator algebra on the truncated basis.

Two annihilation operators are built on the flat basis ``(j, n_1, ..., n_tau)``:

* ``diagonal``: lowers every factor index at once with amplitude
  ``sqrt(x_{n_1} ... x_{n_tau})``;
* ``first_factor``: lowers only ``n_1`` with amplitude ``sqrt(x_{n_1})``.

``A_dagger`` is the adjoint of ``A`` and ``N`` is diagonal with the matching
``x`` products.
"""

from dataclasses import dataclass
import itertools

import numpy as np

from .matrix_core import adjoint, commutator

SPACING_TOL = 1e-12


@dataclass(frozen=True)
class XSequence:
    values: np.ndarray  # x_0 .. x_M with x_0 = 0
    spacing: np.ndarray  # x_m - x_{m-1} for m >= 1
    constant: bool

    @property
    def c(self):
        return float(self.spacing[0]) if self.constant else None


def x_sequence(weights, M, tol=SPACING_TOL):
    """``x_m = rho(m)/rho(m-1)`` for ``1 <= m <= M`` (``x_0 = 0``); flags constant spacing."""
    rho = np.array([weights.rho(m) for m in range(M + 2)])
    x = np.zeros(M + 2)
    x[1:] = rho[1:] / rho[:-1]
    sp = np.diff(x[: M + 1])
    const = bool(np.all(np.abs(sp - sp[0]) <= tol * max(1.0, abs(sp[0]))))
    return XSequence(x, sp, const)


@dataclass(frozen=True)
class LadderSet:
    variant: str
    spinor_dim: int
    cutoffs: tuple
    A: np.ndarray
    A_dagger: np.ndarray
    N_op: np.ndarray
    x_sequences: tuple


def _basis(cutoffs):
    return list(itertools.product(*[range(c + 1) for c in cutoffs]))


def build_ladders(variant, spinor_dim, cutoffs, x_sequences):
    """Ladder operators on ``C^n (x) H_1 (x) ... (x) H_tau`` truncated at ``cutoffs``.

    ``x_sequences[k][m]`` must be defined for ``0 <= m <= cutoffs[k]``.
    """
    if variant not in ("diagonal", "first_factor"):
        raise ValueError(f"unknown variant {variant!r}")
    cutoffs = tuple(cutoffs)
    xs = [np.asarray(getattr(x, "values", x), dtype=float) for x in x_sequences]
    if len(xs) != len(cutoffs) or any(len(x) < c + 1 for x, c in zip(xs, cutoffs)):
        raise ValueError("x sequences must cover every cutoff")
    dims = [c + 1 for c in cutoffs]
    D = int(np.prod(dims))
    basis = _basis(cutoffs)
    pos = {b: i for i, b in enumerate(basis)}
    a = np.zeros((D, D))
    num = np.zeros(D)
    for i, b in enumerate(basis):
        if variant == "diagonal":
            num[i] = np.prod([x[m] for x, m in zip(xs, b)])
            if all(m >= 1 for m in b):
                a[pos[tuple(m - 1 for m in b)], i] = np.sqrt(num[i])
        else:
            num[i] = xs[0][b[0]]
            if b[0] >= 1:
                a[pos[(b[0] - 1,) + b[1:]], i] = np.sqrt(num[i])
    eye = np.eye(spinor_dim)
    A = np.kron(eye, a).astype(np.complex128)
    N = np.kron(eye, np.diag(num)).astype(np.complex128)
    return LadderSet(variant, spinor_dim, cutoffs, A, adjoint(A), N, tuple(xs))


def interior_mask(L, margin=1):
    """Basis vectors with every factor index in ``[1, M_k - margin]`` (all indices when margin is 0)."""
    rows = []
    for b in _basis(L.cutoffs):
        if margin == 0:
            rows.append(True)
        else:
            rows.append(all(1 <= m <= c - margin for m, c in zip(b, L.cutoffs)))
    return np.tile(np.array(rows), L.spinor_dim)


def commutator_report(L, c=1.0, interior_margin=1):
    """Max residuals of ``[A, A+] = cI``, ``[N, A] = -cA``, ``[N, A+] = cA+`` on interior columns."""
    mask = interior_mask(L, interior_margin)
    I = np.eye(L.A.shape[0])
    rel = {
        "[A,A+]-cI": commutator(L.A, L.A_dagger) - c * I,
        "[N,A]+cA": commutator(L.N_op, L.A) + c * L.A,
        "[N,A+]-cA+": commutator(L.N_op, L.A_dagger) - c * L.A_dagger,
    }
    return {k: float(np.max(np.abs(v[:, mask]))) if mask.any() else 0.0
            for k, v in rel.items()}


def spinor_action(M, state):
    """``(M (x) I)`` applied to a state: ``M`` acts on the spinor slot only."""
    c = state.coeffs
    n = c.shape[0]
    return np.tensordot(M, c.reshape(n, -1), axes=(1, 0)).reshape(c.shape)


def apply_ladder(L, state):
    return (L.A @ state.flat()).reshape(state.coeffs.shape)


def eigen_check(state, A1, L, interior_only=False):
    """``|| A state - (A1 (x) I) state ||`` over the truncated basis.

    The top rung of the first factor is dropped by the truncation, so the
    residual is of the size of the discarded tail.
    """
    if L.variant != "first_factor":
        raise ValueError("eigen relation holds for the first-factor variant")
    if tuple(L.cutoffs) != state.trunc.cutoffs or L.spinor_dim != state.trunc.spinor_dim:
        raise ValueError("ladder and state truncations differ")
    lhs = apply_ladder(L, state)
    rhs = spinor_action(np.asarray(A1, dtype=np.complex128), state)
    diff = lhs - rhs
    if interior_only:
        diff = diff[:, :-1]
    return float(np.linalg.norm(diff))


def diagonal_witness(state, labels, L):
    """``|| A state - (A_1 ... A_tau (x) I) state ||`` for the diagonal variant."""
    if L.variant != "diagonal":
        raise ValueError("witness uses the diagonal variant")
    prod = np.eye(state.trunc.spinor_dim, dtype=np.complex128)
    for M in labels:
        prod = prod @ np.asarray(M)
    lhs = apply_ladder(L, state)
    rhs = spinor_action(prod, state)
    return float(np.linalg.norm(lhs - rhs))
