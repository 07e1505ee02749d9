"""Truncated multi-matrix vector coherent states.

A state for spinor index ``j`` over ``tau`` factors is stored as a complex
tensor ``coeffs[i, m_1, ..., m_tau]``.  Flattening is C order, so the flat
index is ``i * prod(M_k + 1) + sum(m_k * stride_k)`` with
``stride_k = prod(M_l + 1 for l > k)``.
"""

from dataclasses import dataclass, field
import json
import math
from typing import Callable

import numpy as np

from . import hypercomplex as hc
from .matrix_core import as_matrix, identity, matrix_power

TAIL_TOL = 1e-12
MEMORY_CAP = 2 ** 24


class TruncationError(ValueError):
    pass


class DivergenceError(ValueError):
    pass


# --------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class WeightSequence:
    """The ``rho(m)`` data of one factor.

    ``kind="scalar"``: ``values(m)`` is the positive number ``rho(m)`` and the
    coefficient matrix is ``rho(m)**-0.5 * I``.

    ``kind="matrix"``: ``values(m)`` is the coefficient-side matrix ``R(m)``
    itself, required to be of Clifford type ``R R^dagger = f(m) I``.

    ``kind="diagonal"``: ``values(m)`` is the vector of diagonal entries of
    ``rho(m)``; the coefficient matrix is ``diag(rho(m))**-0.5``.
    """

    kind: str
    values: Callable[[int], object]
    name: str = ""

    def rho(self, m):
        if self.kind != "scalar":
            raise TypeError("rho(m) is only defined for scalar weights")
        v = float(self.values(m))
        if not v > 0:
            raise ValueError(f"weight rho({m}) = {v} is not positive")
        return v

    def factor(self, m, n):
        if self.kind == "scalar":
            return identity(n) / math.sqrt(self.rho(m))
        if self.kind == "diagonal":
            d = np.asarray(self.values(m), dtype=float)
            if np.any(~(d > 0)):
                raise ValueError(f"diagonal weight rho({m}) = {d} is not positive")
            return np.diag(1.0 / np.sqrt(d)).astype(np.complex128)
        R = as_matrix(self.values(m))
        hc.clifford_scalar(R)
        return R

    def clifford_f(self, m, n=1):
        """``f(m)`` with ``W W^dagger = f I`` for the coefficient-side matrix."""
        W = self.factor(m, n)
        return hc.clifford_scalar(W)

    def check(self, M, n=1):
        for m in range(M + 1):
            self.factor(m, n)


def scalar_weights(fn, name=""):
    return WeightSequence("scalar", fn, name)


def factorial_weights(scale=1.0):
    """``rho(m) = scale**m * m!``."""
    scale = float(scale)
    if not scale > 0:
        raise ValueError("scale must be positive")
    return WeightSequence(
        "scalar",
        lambda m: math.exp(m * math.log(scale) + math.lgamma(m + 1)),
        f"factorial(scale={scale})",
    )


def matrix_weights(fn, name=""):
    return WeightSequence("matrix", fn, name)


def diagonal_weights(fns, name=""):
    """Diagonal ``rho(m) = diag(fns[0](m), fns[1](m), ...)``."""
    return WeightSequence("diagonal", lambda m: [f(m) for f in fns], name)


def rotation_weight(x, n_block=2):
    """Matrix weight ``R(m) = rot(x) / sqrt(m!)`` built from ``cos x``/``sin x`` blocks."""
    I = identity(n_block)
    rot = np.block([[math.cos(x) * I, -math.sin(x) * I],
                    [math.sin(x) * I, math.cos(x) * I]])
    return matrix_weights(lambda m: rot / math.sqrt(math.factorial(m)),
                          f"rotation(x={x})/sqrt(m!)")


# --------------------------------------------------------------------------
# truncation and states


@dataclass(frozen=True)
class TruncationSpec:
    spinor_dim: int
    cutoffs: tuple
    memory_cap: int = MEMORY_CAP

    def __post_init__(self):
        object.__setattr__(self, "cutoffs", tuple(int(c) for c in self.cutoffs))
        if self.spinor_dim < 1:
            raise ValueError("spinor_dim must be positive")
        if any(c < 1 for c in self.cutoffs):
            raise ValueError("every cutoff must be >= 1")
        if self.size > self.memory_cap:
            raise MemoryError(f"basis size {self.size} exceeds cap {self.memory_cap}")

    @property
    def shape(self):
        return (self.spinor_dim,) + tuple(c + 1 for c in self.cutoffs)

    @property
    def size(self):
        return int(np.prod(self.shape))

    @property
    def strides(self):
        dims = [c + 1 for c in self.cutoffs]
        return tuple(int(np.prod(dims[k + 1:])) for k in range(len(dims)))

    def flat_index(self, j, ms):
        block = int(np.prod([c + 1 for c in self.cutoffs]))
        return j * block + sum(m * s for m, s in zip(ms, self.strides))

    def to_dict(self):
        return {"spinor_dim": self.spinor_dim, "cutoffs": list(self.cutoffs)}


@dataclass
class TruncatedState:
    trunc: TruncationSpec
    coeffs: np.ndarray
    label: dict = field(default_factory=dict)
    j: int = 0
    norm: float = 1.0
    tail_bound: float = 0.0

    def flat(self):
        return self.coeffs.reshape(-1)

    def norm2(self):
        return float(np.vdot(self.coeffs, self.coeffs).real)

    def to_json(self):
        return json.dumps(state_record(self), sort_keys=True)


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


def state_record(state):
    flat = state.flat()
    return {
        "label": _jsonable(state.label),
        "j": state.j,
        "trunc": state.trunc.to_dict(),
        "norm": state.norm,
        "tail_bound": state.tail_bound,
        "coeffs": [[float(c.real), float(c.imag)] for c in flat],
    }


def state_from_record(rec):
    trunc = TruncationSpec(rec["trunc"]["spinor_dim"], tuple(rec["trunc"]["cutoffs"]))
    flat = np.array([complex(a, b) for a, b in rec["coeffs"]])
    return TruncatedState(trunc, flat.reshape(trunc.shape), rec.get("label", {}),
                          rec.get("j", 0), rec.get("norm", 1.0), rec.get("tail_bound", 0.0))


# --------------------------------------------------------------------------
# product tables


def _factor_table(label, weights, cutoff, n):
    """Stack of ``W(m) @ label**m`` for ``m = 0..cutoff`` (shape ``(cutoff+1, n, n)``)."""
    out = np.empty((cutoff + 1, n, n), dtype=np.complex128)
    power = identity(n)
    for m in range(cutoff + 1):
        out[m] = weights.factor(m, n) @ power
        power = power @ label
    return out


def _product_table(tables):
    """``P[m_1, ..., m_tau] = F_1[m_1] @ ... @ F_tau[m_tau]``."""
    P = tables[0]
    for F in tables[1:]:
        lead = P.shape[:-2]
        n = P.shape[-1]
        P = np.einsum("xab,mbc->xmac", P.reshape((-1, n, n)), F)
        P = P.reshape(lead + (F.shape[0], n, n))
    return P


def _family_matrices(families, params, radial_only):
    mats = []
    for fam, p in zip(families, params):
        mats.append(fam.radial_matrix(p) if radial_only else fam.matrix(p))
    return mats


def _check_inputs(families, weights, params, trunc):
    tau = len(trunc.cutoffs)
    if not (len(families) == len(weights) == len(params) == tau):
        raise ValueError("families, weights, params and cutoffs must have equal length")
    n = trunc.spinor_dim
    for fam in families:
        if getattr(fam, "dim", n) != n:
            raise ValueError(f"family {fam.name} has dim {fam.dim}, expected {n}")
    for w, M in zip(weights, trunc.cutoffs):
        w.check(M, n)


# --------------------------------------------------------------------------
# normalization


@dataclass(frozen=True)
class NormalizationResult:
    partial: float
    tail: float

    @property
    def value(self):
        return self.partial + self.tail

    def __float__(self):
        return self.value


def _series_tail(term, M):
    """Geometric tail bound for ``sum_{m > M} term(m)`` from the first two omitted terms."""
    t1, t2 = term(M + 1), term(M + 2)
    if t1 == 0.0:
        return 0.0
    q = t2 / t1
    if q >= 1.0:
        raise DivergenceError(
            f"series terms are not decreasing past the cutoff (ratio {q:.3g} at m={M + 1})"
        )
    return t1 / (1.0 - q)


def factor_norm_bounds(label, weights, cutoff, n):
    """Partial sum and tail bound of ``sum_m ||W(m)||^2 ||label||^(2m)``."""
    a2 = float(np.linalg.norm(label, 2)) ** 2

    def term(m):
        w2 = float(np.linalg.norm(weights.factor(m, n), 2)) ** 2
        if a2 == 0.0:
            return w2 if m == 0 else 0.0
        return w2 * a2 ** m

    partial = sum(term(m) for m in range(cutoff + 1))
    return partial, _series_tail(term, cutoff)


def normalization_factor(families, weights, params, trunc):
    """Trace series ``sum Tr|W_1 A_1(r)^m_1 ... W_tau A_tau(r)^m_tau|^2`` over the radial parts.

    The partial sum runs to the cutoffs; the tail is a product bound built
    from the per-factor spectral-norm series.
    """
    _check_inputs(families, weights, params, trunc)
    n = trunc.spinor_dim
    radial = _family_matrices(families, params, radial_only=True)
    tables = [_factor_table(A, w, M, n) for A, w, M in zip(radial, weights, trunc.cutoffs)]
    P = _product_table(tables)
    partial = float(np.sum(np.abs(P) ** 2))
    bounds = [factor_norm_bounds(A, w, M, n)
              for A, w, M in zip(radial, weights, trunc.cutoffs)]
    # prod(S+T) - prod(S) telescoped, so tiny tails are not lost to cancellation
    tail = 0.0
    for k, (_, t) in enumerate(bounds):
        head = np.prod([s for s, _ in bounds[:k]])
        rest = np.prod([s + tt for s, tt in bounds[k + 1:]])
        tail += t * head * rest
    tail = n * float(tail)
    return NormalizationResult(partial, tail)


# --------------------------------------------------------------------------
# builders


def _label(families, params):
    return {fam.name + f"[{k}]": p for k, (fam, p) in enumerate(zip(families, params))}


def build_all(families, weights, params, trunc, norm=None, tail_tol=TAIL_TOL, strict=True):
    """States for every spinor index ``j`` sharing one normalization.

    ``norm`` overrides the series normalization (e.g. with a closed form).
    """
    _check_inputs(families, weights, params, trunc)
    n = trunc.spinor_dim
    nres = normalization_factor(families, weights, params, trunc)
    N = nres.value if norm is None else float(norm)
    if not N > 0:
        raise ValueError("normalization must be positive")
    rel_tail = nres.tail / N
    if strict and rel_tail > tail_tol:
        raise TruncationError(
            f"relative tail bound {rel_tail:.3e} exceeds {tail_tol:.1e}; raise the cutoffs"
        )
    full = _family_matrices(families, params, radial_only=False)
    tables = [_factor_table(A, w, M, n) for A, w, M in zip(full, weights, trunc.cutoffs)]
    P = _product_table(tables)  # (M_1+1, ..., M_tau+1, n, n)
    tau = len(trunc.cutoffs)
    # coeffs[i, m...] for column j  ->  move the row index to the front
    order = (tau,) + tuple(range(tau))
    label = _label(families, params)
    states = []
    for j in range(n):
        coeffs = np.transpose(P[..., :, j], order) / math.sqrt(N)
        states.append(TruncatedState(trunc, np.ascontiguousarray(coeffs), label, j, N,
                                     rel_tail))
    return states


def build_mvcs(families, weights, params, j, trunc, norm=None, tail_tol=TAIL_TOL,
               strict=True):
    if not 0 <= j < trunc.spinor_dim:
        raise ValueError(f"spinor index {j} out of range")
    return build_all(families, weights, params, trunc, norm, tail_tol, strict)[j]


def build_matrix_weight_mvcs(families, weights, params, trunc, norm=None,
                             tail_tol=TAIL_TOL, strict=True):
    """States with matrix weights ``R_k(m)`` and Clifford-type labels ``z_k C_k``."""
    for w in weights:
        if w.kind != "matrix":
            raise TypeError("matrix weights required")
    for fam, p in zip(families, params):
        hc.clifford_scalar(fam.radial_matrix(p))
    return build_all(families, weights, params, trunc, norm, tail_tol, strict)


@dataclass(frozen=True)
class NormCheck:
    total: float
    residual: float
    flagged: bool


def norm_check(states, tail_tol=TAIL_TOL):
    """``|sum_j <state_j|state_j> - 1|``; flagged when above ``tail_tol``."""
    if not states:
        raise ValueError("no states")
    ref = states[0]
    for s in states[1:]:
        if s.trunc != ref.trunc or s.norm != ref.norm:
            raise ValueError("states do not share truncation and normalization")
        if json.dumps(_jsonable(s.label), sort_keys=True) != json.dumps(
                _jsonable(ref.label), sort_keys=True):
            raise ValueError("states carry different labels")
    total = sum(s.norm2() for s in states)
    res = abs(total - 1.0)
    return NormCheck(total, res, res > tail_tol)


# --------------------------------------------------------------------------
# summations depending on one another


def negative_binomial_norm(s, m):
    """Closed form ``sum_l C(m+l, l) s**l = (1 - s)**-(m+1)`` for ``0 <= s < 1``."""
    if not 0.0 <= s < 1.0:
        raise ValueError("s must lie in [0, 1)")
    return (1.0 - s) ** (-(m + 1))


def negative_binomial_partial(s, m, L):
    return sum(math.comb(m + l, l) * s ** l for l in range(L + 1))


def _label_power(fam, p, f):
    return matrix_power(fam.radial_matrix(p), f) @ fam.phase_unitary(p, power=f)


def dependent_norm_series(famA, famB, f_exp, g_exp, rho1, rho2, pa, pb, inner_norm,
                          cutoffs):
    """Partial outer normalization ``sum_m sum_l Tr|A^f(m) B^g(l)|^2 / (N2 rho1 rho2)``."""
    M, L = cutoffs
    A = famA.radial_matrix(pa)
    B = famB.radial_matrix(pb)
    Bp = [matrix_power(B, g_exp(l)) for l in range(L + 1)]
    total = 0.0
    for m in range(M + 1):
        Am = matrix_power(A, f_exp(m))
        inner = sum(np.linalg.norm(Am @ Bp[l]) ** 2 / rho2(m, l) for l in range(L + 1))
        total += inner / (inner_norm(m) * rho1(m))
    return float(total)


def build_dependent_mvcs(famA, famB, f_exp, g_exp, rho1, rho2, pa, pb, trunc,
                         inner_norm, outer_norm=None, norm_cutoffs=None):
    """States whose inner sum depends on the outer index.

    ``inner_norm(m)`` normalizes the inner sum for outer index ``m``.  The
    outer normalization defaults to the trace series evaluated on
    ``norm_cutoffs`` (twice the state cutoffs plus 10), so the truncated
    state's norm deficit measures the discarded tail.
    """
    if len(trunc.cutoffs) != 2:
        raise ValueError("dependent states have exactly two factors")
    M, L = trunc.cutoffs
    n = trunc.spinor_dim
    if norm_cutoffs is None:
        norm_cutoffs = (2 * M + 10, 2 * L + 10)
    if outer_norm is None:
        outer_norm = dependent_norm_series(famA, famB, f_exp, g_exp, rho1, rho2, pa, pb,
                                           inner_norm, norm_cutoffs)
    N1 = float(outer_norm)
    Bl = [_label_power(famB, pb, g_exp(l)) for l in range(L + 1)]
    coeffs = np.empty((n, n, M + 1, L + 1), dtype=np.complex128)  # (j, i, m, l)
    for m in range(M + 1):
        Am = _label_power(famA, pa, f_exp(m))
        pre = 1.0 / math.sqrt(N1 * rho1(m) * inner_norm(m))
        for l in range(L + 1):
            coeffs[:, :, m, l] = (pre / math.sqrt(rho2(m, l))) * (Am @ Bl[l]).T
    label = {famA.name: pa, famB.name: pb}
    return [TruncatedState(trunc, np.ascontiguousarray(coeffs[j]), label, j, N1)
            for j in range(n)]


def canonical_cs(z, M, weights=None):
    """Scalar coherent state coefficients ``z**m / sqrt(rho(m))`` normalized to the cutoff."""
    weights = weights or factorial_weights()
    c = np.array([z ** m / math.sqrt(weights.rho(m)) for m in range(M + 1)],
                 dtype=np.complex128)
    return c / np.linalg.norm(c)
