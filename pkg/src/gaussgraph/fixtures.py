"""Reference states and GLU sets with known graphs.

The six-mode example hides edges 3-4 and 4-5 inside off-diagonal ``U``
entries; a set of single-mode squeezes (and one quarter turn) moves them into
``V``. Matrices here act by ``sigma -> S sigma S^T``.
"""

import numpy as np

from .graphs import ComplexGraph, state_from_graph
from .states import GluSet, Rotate, Squeeze, apply_circuit, Cz, LocalSymplectic, vacuum, single_mode_symplectic

# quarter turn [[0, 1], [-1, 0]]; it equals Rotate(theta=pi/2)
FOURIER = np.array([[0.0, 1.0], [-1.0, 0.0]])

SIX_MODE_REVEALED_EDGES = [(0, 2), (1, 2), (2, 3), (3, 4), (4, 5)]
SIX_MODE_HIDDEN_EDGES = [(0, 2), (1, 2), (4, 5)]


def _sym(n, entries):
    m = np.zeros((n, n))
    for (j, k), v in entries.items():
        m[j, k] = m[k, j] = v
    return m


def six_mode_hidden_graph(r):
    """Three real components (1-3-2, 5-6, 4) with modes 3, 4, 5 tied through ``U``."""
    t, ci = np.tanh(2 * r), 1 / np.cosh(2 * r)
    V = _sym(6, {p: t for p in SIX_MODE_HIDDEN_EDGES})
    U = ci * np.eye(6) + _sym(6, {(2, 3): -ci * t, (3, 4): -ci * t, (2, 4): ci * t * t})
    return ComplexGraph(V, U)


def six_mode_revealed_graph(r):
    """Connected chain graph with diagonal ``U``, equivalent to the hidden one."""
    t, ci = np.tanh(2 * r), 1 / np.cosh(2 * r)
    V = _sym(6, {p: t for p in SIX_MODE_REVEALED_EDGES})
    U = np.diag([ci ** 3, ci ** 3, ci, ci, ci, ci ** 3])
    return ComplexGraph(V, U)


def six_mode_state(r):
    return state_from_graph(six_mode_hidden_graph(r))


def six_mode_printed_blocks(r):
    """Blocks ``(D, D, D^-1, S4, D^-1, D)`` with ``D = diag(1/c, c)`` and ``F S4^-1 = D``.

    These are written for the inverse action; :func:`six_mode_revealing_glus`
    is the set to apply.
    """
    c = np.cosh(2 * r)
    D = np.diag([1 / c, c])
    Di = np.diag([c, 1 / c])
    S4 = np.linalg.inv(FOURIER.T @ D)
    return [D, D, Di, S4, Di, D]


def six_mode_revealing_glus(r):
    """GLUs taking :func:`six_mode_state` to :func:`six_mode_revealed_graph`."""
    return GluSet(tuple(np.linalg.inv(b) for b in six_mode_printed_blocks(r)))


def six_mode_circuit(r):
    """Squeezers and CZ gates preparing the revealed graph, then the inverse revealing GLUs."""
    t = np.tanh(2 * r)
    revealed = six_mode_revealed_graph(r)
    ops = [Squeeze(j, -0.5 * np.log(revealed.U[j, j])) for j in range(6)]
    ops += [Cz(j, k, t) for j, k in SIX_MODE_REVEALED_EDGES]
    ops += [LocalSymplectic(j, b) for j, b in enumerate(six_mode_printed_blocks(r))]
    return ops


def balancing_squeeze_glus(r1, r2, fourier=True):
    """Equal squeezes ``-(r1 + r2)/2`` on both modes of B(0, r1, r2), then a quarter turn on mode 2.

    The result is a two-mode squeezed state with diagonal ``U``.
    """
    rp = 0.5 * (r1 + r2)
    sq = single_mode_symplectic(Squeeze(0, -rp))
    second = FOURIER @ sq if fourier else sq
    return GluSet((sq, second))


def fourier_glus(n, mode):
    blocks = [np.eye(2)] * n
    blocks[mode] = single_mode_symplectic(Rotate(mode, 0.5 * np.pi))
    return GluSet(tuple(blocks))


def canonical_cluster_graph(r1, r2):
    """Two-mode canonical cluster: ``V = [[0, 1], [1, 0]]``, ``U = diag(e^-2r1, e^-2r2)``."""
    return ComplexGraph(np.array([[0.0, 1.0], [1.0, 0.0]]), np.diag([np.exp(-2 * r1), np.exp(-2 * r2)]))


def canonical_cluster_circuit(r1, r2):
    return [Squeeze(0, r1), Squeeze(1, r2), Cz(0, 1, 1.0)]


def canonical_cluster_state(r1, r2):
    return apply_circuit(vacuum(2), canonical_cluster_circuit(r1, r2))
