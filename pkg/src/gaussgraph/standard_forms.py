"""Per-block standardization of inter-mode correlation blocks.

A block ``sigma_jk`` is in standard form when its upper-left entry vanishes
and its off-diagonal entries agree: ``[[0, delta], [delta, w]]`` with
``delta = sqrt(-Det)``. That is the shape every block takes in a state with
diagonal imaginary graph part (after local squeezes equalize the diagonal
blocks). Matrices are written ``M = [[a, b], [c, d]]`` throughout.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateColumnError,
    DegeneratePhaseError,
    InvalidDimensionError,
    InvalidParameterError,
    WrongBranchError,
)
from .states import GluSet
from .symplectic import IwasawaParams

PHASE_TOL = 1e-12


@dataclass(frozen=True)
class StandardBlock:
    delta: float
    w: float

    def matrix(self):
        return np.array([[0.0, self.delta], [self.delta, self.w]])


def _entries(M):
    M = np.asarray(M, dtype=float)
    if M.shape != (2, 2):
        raise InvalidDimensionError(f"expected a 2x2 block, got shape {M.shape}")
    return M, M[0, 0], M[0, 1], M[1, 0], M[1, 1]


def _delta(M, what="block"):
    det = float(np.linalg.det(M))
    if not det < 0:
        raise WrongBranchError(f"{what} has Det={det:.3e} >= 0; route it to the singular or positive handling")
    return float(np.sqrt(-det))


def standardize_T(lambdas):
    """Squeezes ``diag(lambda^-1/2, lambda^1/2)``, one per mode."""
    lambdas = [float(x) for x in lambdas]
    for x in lambdas:
        if not (np.isfinite(x) and x > 0):
            raise InvalidParameterError(f"lambda must be positive, got {x}")
    return GluSet(tuple(np.diag([x ** -0.5, x ** 0.5]) for x in lambdas))


def left_standardize(M):
    """Symplectic ``S`` with ``S M`` standard; returns its parameters and the block.

    ``S`` is a rotation followed by a squeeze, built from the first column.
    """
    M, a, b, c, d = _entries(M)
    delta = _delta(M)
    norm = float(np.hypot(a, c))
    if norm == 0.0:
        raise DegenerateColumnError("first column of the block vanishes")
    params = IwasawaParams(q=0.0, r=norm / delta, phi=float(np.arctan2(a, c)))
    return params, StandardBlock(delta, float(delta * (a * b + c * d) / norm ** 2))


def right_standardize(M):
    """Symplectic ``S`` with ``M S^T`` standard, built from the first row."""
    M, a, b, c, d = _entries(M)
    delta = _delta(M)
    norm = float(np.hypot(a, b))
    if norm == 0.0:
        raise DegenerateColumnError("first row of the block vanishes")
    params = IwasawaParams(q=0.0, r=norm / delta, phi=float(np.arctan2(a, b)))
    return params, StandardBlock(delta, float(delta * (a * c + b * d) / norm ** 2))


def singular_align(M, side="left"):
    """Rotation aligning a rank-one block; ``None`` when the block is zero.

    ``side="left"`` zeroes the top row of ``R M``; ``side="right"`` zeroes the
    first column of ``M R^T``. The squeeze is left at ``r = 1``.
    """
    M, a, b, c, d = _entries(M)
    if not np.any(M):
        return None
    if side == "left":
        if b == 0.0 and d == 0.0:
            phi = np.arctan2(a, c)
        else:
            phi = np.arctan2(b, d)
        return IwasawaParams(phi=float(phi))
    if side != "right":
        raise InvalidParameterError(f"side must be 'left' or 'right', got {side!r}")
    # both solutions of the double-angle condition ab + cd = 0; keep the one
    # that empties the first column rather than the second
    two_phi = np.arctan2(-2.0 * (a * b + c * d), a * a - b * b + c * c - d * d)
    best = None
    for phi in (0.5 * two_phi, 0.5 * two_phi + 0.5 * np.pi):
        col = np.hypot(a * np.cos(phi) - b * np.sin(phi), c * np.cos(phi) - d * np.sin(phi))
        if best is None or col < best[0]:
            best = (col, phi)
    return IwasawaParams(phi=float(best[1]))


def chain_s1_of_s2(sigma12, phi2, r2):
    """``S_1`` making ``S_1 sigma12 S_2^T`` standard for ``S_2 = (0, r2, phi2)``."""
    M, a, b, c, d = _entries(sigma12)
    delta = _delta(M, "sigma12")
    if not r2 > 0:
        raise InvalidParameterError(f"r2 must be positive, got {r2}")
    eps = -2.0 * (a * b + c * d)
    tau = a * a - b * b + c * c - d * d
    rho = a * a + b * b + c * c + d * d
    cs, sn = np.cos(phi2), np.sin(phi2)
    den = eps * np.sin(2 * phi2) + tau * np.cos(2 * phi2) + rho
    if den <= PHASE_TOL * rho:
        raise DegeneratePhaseError(f"chain denominator {den:.3e} vanishes")
    top = c * cs - d * sn
    bottom = a * cs - b * sn
    return np.array([
        [r2 / delta * top, r2 / delta * (b * sn - a * cs)],
        [2 * delta / r2 * bottom / den, 2 * delta / r2 * top / den],
    ])


def chain_coefficients(sigma12, sigma1j):
    """The seven scalar coefficients of :func:`chain_sj_of_s2` as a dict."""
    _, a, b, c, d = _entries(sigma12)
    _, e, f, g, h = _entries(sigma1j)
    row = e * g + f * h
    return {
        "kappa": 0.5 * ((c * c + d * d) * (e * e + f * f) - 2 * (a * c + b * d) * row + (a * a + b * b) * (g * g + h * h)),
        "zeta": -c * d * (e * e + f * f) + (a * d + b * c) * row - a * b * (g * g + h * h),
        "xi": 0.5 * ((c * c - d * d) * (e * e + f * f) + 2 * (b * d - a * c) * row + (a * a - b * b) * (g * g + h * h)),
        "gamma": b * h - d * f,
        "eta": c * f - a * h,
        "mu": d * e - b * g,
        "nu": a * g - c * e,
    }


def chain_sj_of_s2(sigma12, sigma1j, phi2, r2):
    """``S_j`` making ``S_1[S_2] sigma1j S_j^T`` standard."""
    M12 = _entries(sigma12)[0]
    M1j = _entries(sigma1j)[0]
    d12 = _delta(M12, "sigma12")
    d1j = _delta(M1j, "sigma1j")
    if not r2 > 0:
        raise InvalidParameterError(f"r2 must be positive, got {r2}")
    k = chain_coefficients(M12, M1j)
    cs, sn = np.cos(phi2), np.sin(phi2)
    den = k["zeta"] * np.sin(2 * phi2) + k["kappa"] + k["xi"] * np.cos(2 * phi2)
    if abs(den) <= PHASE_TOL * max(abs(k["kappa"]), 1e-300):
        raise DegeneratePhaseError(f"chain denominator {den:.3e} vanishes")
    first = k["gamma"] * sn + k["eta"] * cs
    second = k["mu"] * sn + k["nu"] * cs
    scale = r2 / (d12 * d1j)
    return np.array([
        [scale * first, scale * second],
        [-second / (scale * den), first / (scale * den)],
    ])


def solve_final_phase(A, B, C, tol=1e-12):
    """Roots ``phi`` in ``[0, pi)`` of ``A cos 2phi + B sin 2phi + C = 0``, ascending.

    ``phi`` and ``phi + pi`` give the same rotation up to an overall sign, so
    only one copy is returned. Identically zero input returns ``[0.0]``.
    """
    A, B, C = float(A), float(B), float(C)
    if not np.isfinite([A, B, C]).all():
        raise InvalidParameterError("final-phase coefficients must be finite")
    R = float(np.hypot(A, B))
    scale = max(R, abs(C))
    if scale == 0.0:
        return [0.0]
    if R == 0.0 or abs(C) > R * (1.0 + tol):
        return []
    base = np.arctan2(B, A)
    spread = np.arccos(np.clip(-C / R, -1.0, 1.0))
    roots = sorted({float(np.mod(0.5 * (base + s * spread), np.pi)) for s in (1.0, -1.0)})
    if len(roots) == 2 and roots[1] - roots[0] < 1e-14:
        roots = roots[:1]
    return roots
