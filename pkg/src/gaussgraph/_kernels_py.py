"""Pure-numpy implementations of the block kernels.

Every function here has a compiled twin in ``_kernels.pyx`` with the same
signature and semantics; :mod:`gaussgraph.kernels` picks one at import.
"""

import numpy as np


def _blocks(sigma):
    n = sigma.shape[0] // 2
    return sigma.reshape(n, 2, n, 2).transpose(0, 2, 1, 3)


def block_determinants(sigma):
    b = _blocks(np.asarray(sigma, dtype=float))
    return b[..., 0, 0] * b[..., 1, 1] - b[..., 0, 1] * b[..., 1, 0]


def block_norms(sigma):
    b = _blocks(np.asarray(sigma, dtype=float))
    return np.sqrt(np.einsum("jkab,jkab->jk", b, b))


def apply_local(sigma, blocks):
    sigma = np.asarray(sigma, dtype=float)
    blocks = np.asarray(blocks, dtype=float)
    b = _blocks(sigma)
    out = np.einsum("jab,jkbc,kdc->jkad", blocks, b, blocks)
    n = blocks.shape[0]
    return out.transpose(0, 2, 1, 3).reshape(2 * n, 2 * n)


def qq_correlations(sigma, blocks):
    """Matrix of <Q'_j Q'_k> after applying the local blocks."""
    rows = np.asarray(blocks, dtype=float)[:, 0, :]
    b = _blocks(np.asarray(sigma, dtype=float))
    return np.einsum("ja,jkab,kb->jk", rows, b, rows)
