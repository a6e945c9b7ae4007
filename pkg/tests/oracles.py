"""Independent reference computations.

Gates are built here from their quadratic Hamiltonians with ``expm`` and in
quadrature ordering, sharing no code with the package's gate tables.
"""

import numpy as np
from scipy.linalg import expm


def omega(n):
    return np.block([[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]])


def hamiltonian_symplectic(H):
    """``exp(Omega H)`` for a symmetric quadratic form ``H`` in quadrature ordering."""
    n = H.shape[0] // 2
    return expm(omega(n) @ H)


def squeeze_q(n, j, r):
    """Phase squeezing: generator scales Q_j up and P_j down."""
    H = np.zeros((2 * n, 2 * n))
    H[j, n + j] = H[n + j, j] = r
    return hamiltonian_symplectic(H)


def rotation_q(n, j, theta):
    """``exp(-i theta a^dag a)`` acting as Q -> cos Q + sin P."""
    H = np.zeros((2 * n, 2 * n))
    H[j, j] = H[n + j, n + j] = theta
    return hamiltonian_symplectic(H)


def two_mode_squeezer_q(r):
    """Two-mode squeezing that correlates Q1 with Q2 and anticorrelates P1 with P2."""
    H = np.zeros((4, 4))
    H[0, 3] = H[3, 0] = r
    H[1, 2] = H[2, 1] = r
    return hamiltonian_symplectic(H)


def beamsplitter_q():
    h = 1 / np.sqrt(2)
    B = np.array([[h, -h], [h, h]])
    return np.kron(np.eye(2), B)


def quad_to_mode(M):
    n = M.shape[0] // 2
    p = np.concatenate([np.arange(0, 2 * n, 2), np.arange(1, 2 * n, 2)])
    out = np.empty_like(M)
    out[np.ix_(p, p)] = M
    return out


def btheta_quad(theta, r1, r2):
    S = beamsplitter_q() @ squeeze_q(2, 1, r2) @ rotation_q(2, 0, theta) @ squeeze_q(2, 0, r1)
    return S @ (0.5 * np.eye(4)) @ S.T


def simon_ppt_eigenvalues(sigma_quad):
    """Two-mode PPT symplectic eigenvalues from the local-invariant formula."""
    s = quad_to_mode(sigma_quad)
    A, B, C = s[:2, :2], s[2:, 2:], s[:2, 2:]
    delta = np.linalg.det(A) + np.linalg.det(B) - 2 * np.linalg.det(C)
    det = np.linalg.det(s)
    root = np.sqrt(max(delta * delta - 4 * det, 0.0))
    return sorted([np.sqrt((delta - root) / 2), np.sqrt((delta + root) / 2)])


def graph_by_inversion(sigma_quad):
    """``(V, U)`` by plain inversion, no factorization or checks."""
    n = sigma_quad.shape[0] // 2
    U = np.linalg.inv(2 * sigma_quad[:n, :n])
    return U @ (2 * sigma_quad[:n, n:]), U
