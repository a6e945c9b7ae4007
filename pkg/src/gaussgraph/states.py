"""Pure zero-mean Gaussian states and the circuits that act on them.

States are immutable and store the mode-ordered covariance matrix. Mode
indices are 0-based in this API; file formats and reports use 1-based
indices.

Gate conventions (covariance update ``sigma -> S sigma S^T``):

* ``Squeeze(j, r)``: ``diag(e^r, e^-r)``; ``r > 0`` squeezes P.
* ``Rotate(j, theta)``: ``[[cos, sin], [-sin, cos]]``, the action of
  ``exp(-i theta a^dag a)``.
* ``Shear(j, q)``: ``[[1, 0], [q, 1]]``; shifts the self-loop ``V_jj`` by q.
* ``BalancedBeamsplitter(j, k)``: ``Q_j -> (Q_j - Q_k)/sqrt2``,
  ``Q_k -> (Q_j + Q_k)/sqrt2``, same for P.
* ``Cz(j, k, g)``: ``P_j -> P_j + g Q_k``, ``P_k -> P_k + g Q_j``.
"""

from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np

from . import kernels
from .errors import (
    InvalidCovarianceError,
    InvalidDimensionError,
    InvalidParameterError,
)
from .symplectic import (
    DEFAULT_TOL,
    MODE,
    QUADRATURE,
    IwasawaParams,
    direct_sum,
    is_symplectic,
    iwasawa_decompose,
    reorder,
    symplectic_eigenvalues,
)


def _readonly(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Zero-mean Gaussian state given by its mode-ordered covariance matrix."""

    sigma: np.ndarray

    def __post_init__(self):
        sigma = np.asarray(self.sigma, dtype=float)
        if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
            raise InvalidDimensionError(f"covariance must be square, got {sigma.shape}")
        if sigma.shape[0] == 0 or sigma.shape[0] % 2:
            raise InvalidDimensionError(f"covariance dimension must be even, got {sigma.shape[0]}")
        if not np.all(np.isfinite(sigma)):
            raise InvalidCovarianceError("covariance has non-finite entries")
        scale = max(1.0, float(np.max(np.abs(sigma))))
        if np.max(np.abs(sigma - sigma.T)) > DEFAULT_TOL * scale:
            raise InvalidCovarianceError("covariance is not symmetric")
        sigma = 0.5 * (sigma + sigma.T)
        try:
            np.linalg.cholesky(sigma)
        except np.linalg.LinAlgError:
            raise InvalidCovarianceError("covariance is not positive definite") from None
        object.__setattr__(self, "sigma", _readonly(sigma))

    @property
    def n(self):
        return self.sigma.shape[0] // 2

    def quadrature(self):
        """Covariance in quadrature ordering."""
        return reorder(self.sigma, MODE, QUADRATURE)

    def symplectic_eigenvalues(self):
        return symplectic_eigenvalues(self.quadrature())

    def purity_deviation(self):
        """Largest distance of a symplectic eigenvalue from 1/2."""
        return max(abs(v - 0.5) for v in self.symplectic_eigenvalues())

    def is_pure(self, tol=1e-8):
        return self.purity_deviation() < tol

    def block(self, j, k):
        return block(self, j, k)


@dataclass(frozen=True)
class GluSet:
    """One 2x2 symplectic block per mode; the local operation is their direct sum."""

    blocks: Tuple[np.ndarray, ...]
    tol: float = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        blocks = tuple(_readonly(b) for b in self.blocks)
        if not blocks:
            raise InvalidDimensionError("a GLU set needs at least one block")
        for j, b in enumerate(blocks):
            if b.shape != (2, 2):
                raise InvalidDimensionError(f"block {j} has shape {b.shape}")
            if not is_symplectic(b, self.tol):
                raise InvalidParameterError(f"block {j} is not symplectic (det={np.linalg.det(b):.6g})")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self):
        return len(self.blocks)

    @classmethod
    def identity(cls, n):
        return cls(tuple(np.eye(2) for _ in range(n)))

    @classmethod
    def from_params(cls, params):
        return cls(tuple(p.matrix() for p in params))

    def params(self):
        return [iwasawa_decompose(b, max(self.tol, 1e-9)) for b in self.blocks]

    def matrix(self):
        return direct_sum(self.blocks)

    def array(self):
        return np.stack(self.blocks)

    def compose(self, other):
        """The set that applies ``other`` first, then ``self``."""
        if other.n != self.n:
            raise InvalidDimensionError("GLU sets act on different mode counts")
        return GluSet(tuple(a @ b for a, b in zip(self.blocks, other.blocks)))

    def inverse(self):
        return GluSet(tuple(np.linalg.inv(b) for b in self.blocks))


# -- circuit operations -----------------------------------------------------


@dataclass(frozen=True)
class Squeeze:
    mode: int
    r: float


@dataclass(frozen=True)
class Rotate:
    mode: int
    theta: float


@dataclass(frozen=True)
class Shear:
    mode: int
    q: float


@dataclass(frozen=True)
class BalancedBeamsplitter:
    mode1: int
    mode2: int


@dataclass(frozen=True)
class Cz:
    mode1: int
    mode2: int
    g: float = 1.0


@dataclass(frozen=True, eq=False)
class LocalSymplectic:
    mode: int
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _readonly(self.matrix))


CircuitOp = Union[Squeeze, Rotate, Shear, BalancedBeamsplitter, Cz, LocalSymplectic]


def _check_mode(j, n):
    if int(j) != j or not 0 <= j < n:
        raise InvalidDimensionError(f"mode index {j} out of range for {n} modes")


def single_mode_symplectic(op):
    """2x2 block of a single-mode gate."""
    if isinstance(op, Squeeze):
        return np.diag([np.exp(op.r), np.exp(-op.r)])
    if isinstance(op, Rotate):
        c, s = np.cos(op.theta), np.sin(op.theta)
        return np.array([[c, s], [-s, c]])
    if isinstance(op, Shear):
        return np.array([[1.0, 0.0], [op.q, 1.0]])
    if isinstance(op, LocalSymplectic):
        if op.matrix.shape != (2, 2):
            raise InvalidDimensionError(f"local block must be 2x2, got {op.matrix.shape}")
        if not is_symplectic(op.matrix, DEFAULT_TOL):
            raise InvalidParameterError(f"local block on mode {op.mode} is not symplectic")
        return np.array(op.matrix)
    raise InvalidParameterError(f"{type(op).__name__} is not a single-mode gate")


def gate_symplectic(op, n):
    """Mode-ordered 2n x 2n symplectic matrix of a circuit operation."""
    S = np.eye(2 * n)
    if isinstance(op, (Squeeze, Rotate, Shear, LocalSymplectic)):
        _check_mode(op.mode, n)
        j = op.mode
        S[2 * j:2 * j + 2, 2 * j:2 * j + 2] = single_mode_symplectic(op)
        return S
    if isinstance(op, (BalancedBeamsplitter, Cz)):
        j, k = op.mode1, op.mode2
        _check_mode(j, n)
        _check_mode(k, n)
        if j == k:
            raise InvalidDimensionError("two-mode gate needs two distinct modes")
        if isinstance(op, Cz):
            S[2 * j + 1, 2 * k] = op.g
            S[2 * k + 1, 2 * j] = op.g
            return S
        h = 1.0 / np.sqrt(2.0)
        for o in (0, 1):
            a, b = 2 * j + o, 2 * k + o
            S[a, a], S[a, b] = h, -h
            S[b, a], S[b, b] = h, h
        return S
    raise InvalidParameterError(f"unknown circuit operation {op!r}")


# -- states -----------------------------------------------------------------


def vacuum(n):
    if int(n) != n or n < 1:
        raise InvalidDimensionError(f"mode count must be a positive integer, got {n}")
    return GaussianState(0.5 * np.eye(2 * int(n)))


def apply_symplectic(state, S, ordering=MODE, tol=DEFAULT_TOL):
    """Return the state with covariance ``S sigma S^T``."""
    S = np.asarray(S, dtype=float)
    if S.shape != state.sigma.shape:
        raise InvalidDimensionError(f"symplectic has shape {S.shape}, state needs {state.sigma.shape}")
    if ordering == QUADRATURE:
        S = reorder(S, QUADRATURE, MODE)
    elif ordering != MODE:
        raise InvalidParameterError(f"unknown ordering {ordering!r}")
    if not is_symplectic(S, tol * max(1.0, float(np.max(np.abs(S)))) ** 2, ordering=MODE):
        raise InvalidParameterError("matrix is not symplectic")
    return GaussianState(S @ state.sigma @ S.T)


def apply_glus(state, glus):
    """Apply a GLU set block-wise: ``sigma_jk -> S_j sigma_jk S_k^T``."""
    if glus.n != state.n:
        raise InvalidDimensionError(f"GLU set has {glus.n} blocks, state has {state.n} modes")
    return GaussianState(kernels.apply_local(state.sigma, glus.array()))


def apply_circuit(state, ops):
    sigma = np.array(state.sigma)
    for op in ops:
        S = gate_symplectic(op, state.n)
        sigma = S @ sigma @ S.T
    return GaussianState(sigma)


def block(state, j, k):
    """The 2x2 correlation block sigma_jk (0-based indices)."""
    _check_mode(j, state.n)
    _check_mode(k, state.n)
    return np.array(state.sigma[2 * j:2 * j + 2, 2 * k:2 * k + 2])


def build_btheta(theta, r1, r2):
    """Two squeezed vacua, the first rotated by theta, on a balanced beamsplitter."""
    ops = [Squeeze(0, r1), Rotate(0, theta), Squeeze(1, r2), BalancedBeamsplitter(0, 1)]
    return apply_circuit(vacuum(2), ops)


def two_mode_squeezed(r):
    """EPR state with ``Var(Q1 - Q2) = Var(P1 + P2) = e^{-2r}``."""
    c, s = np.cosh(r), np.sinh(r)
    S = np.array([
        [c, 0, s, 0],
        [0, c, 0, -s],
        [s, 0, c, 0],
        [0, -s, 0, c],
    ])
    return GaussianState(S @ (0.5 * np.eye(4)) @ S.T)


def squeeze_db_to_r(db):
    """Quadrature-variance decibels to the natural-log squeeze parameter."""
    return db * np.log(10.0) / 20.0


__all__ = [
    "GaussianState",
    "GluSet",
    "IwasawaParams",
    "Squeeze",
    "Rotate",
    "Shear",
    "BalancedBeamsplitter",
    "Cz",
    "LocalSymplectic",
    "CircuitOp",
    "single_mode_symplectic",
    "gate_symplectic",
    "vacuum",
    "apply_symplectic",
    "apply_glus",
    "apply_circuit",
    "block",
    "build_btheta",
    "two_mode_squeezed",
    "squeeze_db_to_r",
    "reorder",
]
