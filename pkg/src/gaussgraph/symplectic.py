"""Dense symplectic primitives.

Two orderings of phase space are used throughout the package:

* ``"quadrature"``: ``(Q1, ..., Qn, P1, ..., Pn)``; the canonical ordering for
  the symplectic form and symplectic eigenvalues.
* ``"mode"``: ``(Q1, P1, Q2, P2, ...)``; the canonical ordering for 2x2 block
  extraction and local (per-mode) operations.

Conversion between the two is always explicit, via :func:`reorder`.
Quadratures are hbar-free with vacuum variance 1/2.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidCovarianceError, InvalidDimensionError, InvalidParameterError

DEFAULT_TOL = 1e-9

MODE = "mode"
QUADRATURE = "quadrature"
ORDERINGS = (MODE, QUADRATURE)


def _check_ordering(ordering):
    if ordering not in ORDERINGS:
        raise InvalidParameterError(f"unknown ordering {ordering!r}; expected one of {ORDERINGS}")


def _even_square(matrix, what="matrix"):
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidDimensionError(f"{what} must be square, got shape {matrix.shape}")
    if matrix.shape[0] == 0 or matrix.shape[0] % 2:
        raise InvalidDimensionError(f"{what} must have even non-zero dimension, got {matrix.shape[0]}")
    return matrix


def symplectic_form(n, ordering=QUADRATURE):
    """Return the 2n x 2n symplectic form Omega.

    In quadrature ordering this is ``[[0, I], [-I, 0]]``; in mode ordering it
    is the direct sum of ``n`` copies of ``[[0, 1], [-1, 0]]``.
    """
    _check_ordering(ordering)
    if int(n) != n or n < 1:
        raise InvalidDimensionError(f"mode count must be a positive integer, got {n}")
    n = int(n)
    if ordering == MODE:
        return np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def quadrature_permutation(n):
    """Index array ``p`` with ``x_quadrature = x_mode[p]``."""
    return np.concatenate([np.arange(0, 2 * n, 2), np.arange(1, 2 * n, 2)])


def reorder(matrix, source, target):
    """Conjugate a 2n x 2n matrix by the mode/quadrature permutation."""
    _check_ordering(source)
    _check_ordering(target)
    matrix = _even_square(matrix)
    if source == target:
        return matrix.copy()
    p = quadrature_permutation(matrix.shape[0] // 2)
    if source == MODE:
        return matrix[np.ix_(p, p)]
    out = np.empty_like(matrix)
    out[np.ix_(p, p)] = matrix
    return out


def is_symplectic(S, tol=DEFAULT_TOL, ordering=QUADRATURE):
    """True iff ``max|S Omega S^T - Omega| < tol``."""
    S = _even_square(S, "symplectic candidate")
    omega = symplectic_form(S.shape[0] // 2, ordering)
    return bool(np.max(np.abs(S @ omega @ S.T - omega)) < tol)


def rotation_matrix(phi):
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True)
class IwasawaParams:
    """Shear weight ``q``, squeeze factor ``r > 0`` and rotation angle ``phi``.

    The composed matrix is ``[[1, 0], [q, 1]] @ diag(r, 1/r) @ R(phi)`` with
    ``R(phi) = [[cos, -sin], [sin, cos]]``.
    """

    q: float = 0.0
    r: float = 1.0
    phi: float = 0.0

    def __post_init__(self):
        if not np.isfinite([self.q, self.r, self.phi]).all():
            raise InvalidParameterError("Iwasawa parameters must be finite")
        if self.r <= 0:
            raise InvalidParameterError(f"squeeze factor must be positive, got r={self.r}")

    def matrix(self):
        return iwasawa_compose(self)


def iwasawa_compose(p):
    if p.r <= 0:
        raise InvalidParameterError(f"squeeze factor must be positive, got r={p.r}")
    shear = np.array([[1.0, 0.0], [p.q, 1.0]])
    squeeze = np.diag([p.r, 1.0 / p.r])
    return shear @ squeeze @ rotation_matrix(p.phi)


def iwasawa_decompose(S, tol=DEFAULT_TOL):
    """Inverse of :func:`iwasawa_compose` for a 2x2 symplectic matrix.

    The first row of ``S`` is ``r (cos phi, -sin phi)``, which fixes ``r`` and
    ``phi`` with ``r > 0``; the shear follows from the second row.
    """
    S = np.asarray(S, dtype=float)
    if S.shape != (2, 2):
        raise InvalidDimensionError(f"expected a 2x2 matrix, got shape {S.shape}")
    if not is_symplectic(S, tol):
        raise InvalidParameterError(f"matrix is not symplectic (det={np.linalg.det(S):.3e})")
    r = float(np.hypot(S[0, 0], S[0, 1]))
    phi = float(np.arctan2(-S[0, 1], S[0, 0]))
    rot = rotation_matrix(phi)
    # second row of S equals (q r) * rot[0] + (1/r) * rot[1]
    q = float(S[1] @ rot[0]) / r
    return IwasawaParams(q=q, r=r, phi=phi)


def symplectic_eigenvalues(sigma, tol=DEFAULT_TOL, ordering=QUADRATURE):
    """Symplectic eigenvalues of a covariance matrix, ascending.

    Computed as the moduli of the (purely imaginary) eigenvalues of
    ``Omega @ sigma``; they come in +/- pairs and each pair is reported once.
    """
    sigma = _even_square(sigma, "covariance")
    _check_ordering(ordering)
    scale = max(1.0, float(np.max(np.abs(sigma))))
    if np.max(np.abs(sigma - sigma.T)) > tol * scale:
        raise InvalidCovarianceError("covariance matrix is not symmetric")
    try:
        np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError:
        raise InvalidCovarianceError("covariance matrix is not positive definite") from None
    n = sigma.shape[0] // 2
    omega = symplectic_form(n, ordering)
    moduli = np.sort(np.abs(np.linalg.eigvals(omega @ sigma)))
    pairs = moduli.reshape(n, 2)
    spread = np.abs(pairs[:, 0] - pairs[:, 1])
    if np.any(spread > 1e-8 * np.maximum(pairs[:, 1], 1.0)):
        raise InvalidCovarianceError("eigenvalues of Omega sigma do not pair up")
    return [float(v) for v in pairs.mean(axis=1)]


def direct_sum(blocks):
    """Block-diagonal mode-ordered matrix from per-mode 2x2 blocks."""
    blocks = [np.asarray(b, dtype=float) for b in blocks]
    if not blocks:
        raise InvalidDimensionError("direct sum of an empty list")
    for b in blocks:
        if b.shape != (2, 2):
            raise InvalidDimensionError(f"every block must be 2x2, got {b.shape}")
    n = len(blocks)
    out = np.zeros((2 * n, 2 * n))
    for j, b in enumerate(blocks):
        out[2 * j:2 * j + 2, 2 * j:2 * j + 2] = b
    return out
