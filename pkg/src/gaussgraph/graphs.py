"""Complex graphs ``Z = V + iU`` of pure Gaussian states.

For a pure state the quadrature-ordered covariance is::

    sigma = 1/2 [[U^-1,     U^-1 V          ],
                 [V U^-1,   U + V U^-1 V    ]]

so ``U = (2 Cov[Q])^-1`` and ``V = U 2 Cov[Q, P]``. ``V`` is the weighted
adjacency matrix of real (controlled-phase) edges and ``U`` the imaginary
part, which is diagonal exactly when ``Cov[Q]`` is.
"""

import json
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    IllConditionedStateError,
    ImpureStateError,
    InvalidDimensionError,
    InvalidGraphError,
    InvalidParameterError,
)
from .states import GaussianState
from .symplectic import DEFAULT_TOL, MODE, QUADRATURE, reorder

CONDITION_LIMIT = 1e12
EDGE_THRESHOLD = 1e-6

# Closed-form imaginary parts of the two-mode beamsplitter family are quoted
# with twice the normalization of the covariance-derived graph.
BTHETA_U_SCALE = 0.5


def _readonly(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ComplexGraph:
    V: np.ndarray
    U: np.ndarray

    def __post_init__(self):
        V = np.asarray(self.V, dtype=float)
        U = np.asarray(self.U, dtype=float)
        if V.ndim != 2 or V.shape[0] != V.shape[1] or V.shape != U.shape or V.shape[0] == 0:
            raise InvalidDimensionError(f"V {V.shape} and U {U.shape} must be equal square shapes")
        if not (np.all(np.isfinite(V)) and np.all(np.isfinite(U))):
            raise InvalidGraphError("graph has non-finite weights")
        for name, m in (("V", V), ("U", U)):
            if np.max(np.abs(m - m.T)) > DEFAULT_TOL * max(1.0, float(np.max(np.abs(m)))):
                raise InvalidGraphError(f"{name} is not symmetric")
        try:
            np.linalg.cholesky(0.5 * (U + U.T))
        except np.linalg.LinAlgError:
            raise InvalidGraphError("U is not positive definite") from None
        object.__setattr__(self, "V", _readonly(0.5 * (V + V.T)))
        object.__setattr__(self, "U", _readonly(0.5 * (U + U.T)))

    @property
    def n(self):
        return self.V.shape[0]

    @property
    def Z(self):
        return self.V + 1j * self.U


@dataclass(frozen=True)
class GraphError:
    traceU: float
    offDiagonalNormU: float


def graph_from_state(state, tol=DEFAULT_TOL, condition_limit=CONDITION_LIMIT):
    """Extract ``(V, U)`` from a pure state.

    ``2 Cov[Q]`` is factorized by Cholesky; a condition number above
    ``condition_limit`` raises :class:`IllConditionedStateError`. ``V`` is
    symmetrized when its asymmetry is below tolerance (scaled by the
    conditioning), otherwise the state is reported impure.
    """
    n = state.n
    quad = reorder(state.sigma, MODE, QUADRATURE)
    cov_q2 = 2.0 * quad[:n, :n]
    cov_qp2 = 2.0 * quad[:n, n:]
    cond = np.linalg.cond(cov_q2)
    if not np.isfinite(cond) or cond > condition_limit:
        raise IllConditionedStateError(f"Cov[Q] condition number {cond:.3e} exceeds {condition_limit:.1e}")
    factor = scipy.linalg.cho_factor(cov_q2)
    U = scipy.linalg.cho_solve(factor, np.eye(n))
    V = scipy.linalg.cho_solve(factor, cov_qp2)
    U = 0.5 * (U + U.T)
    asym = float(np.max(np.abs(V - V.T)))
    allowed = tol * max(1.0, float(np.max(np.abs(V)))) * max(1.0, cond * 1e-6)
    if asym > allowed:
        raise ImpureStateError(f"V asymmetry {asym:.3e} exceeds {allowed:.3e}; state is not pure", asym)
    return ComplexGraph(0.5 * (V + V.T), U)


def state_from_graph(g):
    """Pure state with complex graph ``g``."""
    U_inv = np.linalg.inv(g.U)
    U_inv = 0.5 * (U_inv + U_inv.T)
    V = g.V
    cov_p = g.U + V @ U_inv @ V
    quad = 0.5 * np.block([[U_inv, U_inv @ V], [V @ U_inv, 0.5 * (cov_p + cov_p.T)]])
    return GaussianState(reorder(quad, QUADRATURE, MODE))


def nullifier_covariance(state, V):
    """``Cov[P - V Q]`` from the covariance blocks."""
    V = np.asarray(V, dtype=float)
    n = state.n
    if V.shape != (n, n):
        raise InvalidDimensionError(f"V has shape {V.shape}, state has {n} modes")
    quad = reorder(state.sigma, MODE, QUADRATURE)
    cq, cqp, cpq, cp = quad[:n, :n], quad[:n, n:], quad[n:, :n], quad[n:, n:]
    return cp - V @ cqp - cpq @ V.T + V @ cq @ V.T


def graph_error(g):
    off = g.U - np.diag(np.diag(g.U))
    return GraphError(traceU=float(np.trace(g.U)), offDiagonalNormU=float(np.max(np.abs(off))) if g.n > 1 else 0.0)


def closed_form_btheta(theta, r1, r2):
    """``(v, u_plus, u_minus)`` for the rotated-squeezer beamsplitter state.

    The covariance-derived graph is ``v [[1, 1], [1, 1]] + i s [[u+, u-], [u-, u+]]``
    with ``s = BTHETA_U_SCALE``.
    """
    c2, s2 = np.cos(theta) ** 2, np.sin(theta) ** 2
    v = -np.sin(2 * theta) * np.sinh(2 * r1) / (2 * (np.exp(2 * r1) * c2 + np.exp(-2 * r1) * s2))
    first = np.exp(-2 * r1) / (c2 + np.exp(-4 * r1) * s2)
    return float(v), float(first + np.exp(-2 * r2)), float(first - np.exp(-2 * r2))


def real_edges(g, threshold=EDGE_THRESHOLD):
    """Off-diagonal real edges as sorted 0-based pairs."""
    return [(j, k) for j in range(g.n) for k in range(j + 1, g.n) if abs(g.V[j, k]) > threshold]


def real_components(g, threshold=EDGE_THRESHOLD):
    """Connected components of the real graph, each a sorted list of 0-based modes."""
    parent = list(range(g.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for j, k in real_edges(g, threshold):
        parent[find(j)] = find(k)
    groups = {}
    for j in range(g.n):
        groups.setdefault(find(j), []).append(j)
    return sorted(groups.values())


def _fmt(x, precision):
    return f"{x:.{precision}f}"


def export_graph(g, format="dot", threshold=EDGE_THRESHOLD, precision=6):
    """Render a graph as DOT or JSON text; vertices are numbered from 1."""
    if format == "json":
        return json.dumps({"n": g.n, "V": g.V.tolist(), "U": g.U.tolist()}, indent=2)
    if format != "dot":
        raise InvalidParameterError(f"unknown export format {format!r}")
    lines = ["graph G {"]
    for j in range(g.n):
        lines.append(f"  {j + 1};")
    for j in range(g.n):
        for k in range(j, g.n):
            v, u = g.V[j, k], g.U[j, k]
            if abs(v) > threshold:
                lines.append(f'  {j + 1} -- {k + 1} [style=solid, label="{_fmt(v, precision)}"];')
            if abs(u) > threshold:
                lines.append(f'  {j + 1} -- {k + 1} [style=dashed, label="i{_fmt(u, precision)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
