"""Hidden-entanglement diagnostics.

The determinant of every inter-mode block sigma_jk is unchanged by local
symplectic operations. A state whose imaginary graph part can be made
diagonal has ``Det[sigma_jk] = -lambda_j lambda_k V_jk^2 <= 0`` for all
``j != k``, so a single positive block determinant certifies that no local
operation can remove the imaginary edges.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import kernels
from .errors import InvalidParameterError
from .symplectic import DEFAULT_TOL, MODE, QUADRATURE, reorder, symplectic_eigenvalues

CRITERION_THRESHOLD = 1e-10


def correlation_determinants(state):
    """n x n matrix of ``Det[sigma_jk]``, diagonal entries included."""
    return kernels.block_determinants(state.sigma)


def determinant_scale(state):
    """Largest squared Frobenius norm over all 2x2 blocks."""
    return float(np.max(kernels.block_norms(state.sigma)) ** 2)


@dataclass(frozen=True)
class CriterionVerdict:
    flagged: bool
    witnesses: Tuple[Tuple[int, int, float], ...] = ()

    def to_dict(self):
        return {
            "flagged": self.flagged,
            "witnesses": [{"j": j + 1, "k": k + 1, "det": d} for j, k, d in self.witnesses],
        }


def sufficient_criterion(state, threshold=CRITERION_THRESHOLD):
    """Flag the state when some off-diagonal block determinant is positive.

    ``threshold`` is relative to :func:`determinant_scale`. Witnesses are
    0-based ``(j, k, det)`` with ``j < k``.
    """
    dets = correlation_determinants(state)
    cut = threshold * determinant_scale(state)
    witnesses = tuple(
        (j, k, float(dets[j, k]))
        for j in range(state.n)
        for k in range(j + 1, state.n)
        if dets[j, k] > cut
    )
    return CriterionVerdict(flagged=bool(witnesses), witnesses=witnesses)


def _check_party(party_a, n):
    party = sorted({int(j) for j in party_a})
    if not party or len(party) >= n or party[0] < 0 or party[-1] >= n:
        raise InvalidParameterError(f"party {list(party_a)} is not a non-empty proper subset of {n} modes")
    return party


def partial_transpose(state, party_a):
    """Mode-ordered covariance with the P quadratures of ``party_a`` negated."""
    party = _check_party(party_a, state.n)
    flip = np.ones(2 * state.n)
    for j in party:
        flip[2 * j + 1] = -1.0
    return state.sigma * np.outer(flip, flip)


def ppt_symplectic_eigenvalues(state, party_a):
    """Symplectic eigenvalues of the partially transposed covariance, ascending."""
    reflected = partial_transpose(state, party_a)
    return symplectic_eigenvalues(reorder(reflected, MODE, QUADRATURE))


def entanglement_flag(state, party_a, tol=DEFAULT_TOL):
    """True when the smallest partially transposed eigenvalue is below 1/2."""
    return min(ppt_symplectic_eigenvalues(state, party_a)) < 0.5 - tol


def single_mode_bipartitions(n):
    return [[j] for j in range(n)] if n > 1 else []


def report_fragment(state, bipartitions=None, threshold=CRITERION_THRESHOLD):
    """JSON-ready diagnostics; bipartitions default to every single mode."""
    if bipartitions is None:
        bipartitions = single_mode_bipartitions(state.n)
    verdict = sufficient_criterion(state, threshold)
    ppt = {}
    for party in bipartitions:
        key = ",".join(str(j + 1) for j in sorted(party))
        ppt[key] = min(ppt_symplectic_eigenvalues(state, party))
    return {
        "detMatrix": correlation_determinants(state).tolist(),
        "verdict": verdict.to_dict(),
        "pptMinEigenvalue": ppt,
    }
