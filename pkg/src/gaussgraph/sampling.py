"""Random circuits, states and GLU sets for property tests and benchmarks."""

import numpy as np

from .errors import IllConditionedStateError, InvalidDimensionError
from .states import (
    BalancedBeamsplitter,
    Cz,
    GluSet,
    Rotate,
    Shear,
    Squeeze,
    apply_circuit,
    vacuum,
)
from .symplectic import IwasawaParams

SQUEEZE_RANGE = 0.5
WEIGHT_RANGE = 1.0


def random_circuit(n, depth, rng):
    """``depth`` gates drawn uniformly from the six gate kinds (local blocks as Iwasawa triples)."""
    if n < 1:
        raise InvalidDimensionError("need at least one mode")
    ops = []
    for _ in range(depth):
        kind = rng.integers(0, 5 if n > 1 else 3)
        j = int(rng.integers(0, n))
        if kind == 0:
            ops.append(Squeeze(j, float(rng.uniform(-SQUEEZE_RANGE, SQUEEZE_RANGE))))
        elif kind == 1:
            ops.append(Rotate(j, float(rng.uniform(0, 2 * np.pi))))
        elif kind == 2:
            ops.append(Shear(j, float(rng.uniform(-WEIGHT_RANGE, WEIGHT_RANGE))))
        else:
            k = int(rng.choice([m for m in range(n) if m != j]))
            if kind == 3:
                ops.append(BalancedBeamsplitter(j, k))
            else:
                ops.append(Cz(j, k, float(rng.uniform(-WEIGHT_RANGE, WEIGHT_RANGE))))
    return ops


def random_state(n, rng, depth=20, condition_limit=1e8, attempts=100):
    """Pure state from a random circuit on vacuum, resampled while ``Cov[Q]`` is ill-conditioned."""
    for _ in range(attempts):
        state = apply_circuit(vacuum(n), random_circuit(n, depth, rng))
        quad = state.quadrature()
        if np.linalg.cond(quad[:n, :n]) < condition_limit:
            return state
    raise IllConditionedStateError(f"no well-conditioned state in {attempts} draws")


def random_glus(n, rng, squeeze=1.0, shear=1.0):
    """Independent Iwasawa blocks with ``log r`` and ``q`` uniform in symmetric ranges."""
    params = [
        IwasawaParams(
            q=float(rng.uniform(-shear, shear)),
            r=float(np.exp(rng.uniform(-squeeze, squeeze))),
            phi=float(rng.uniform(-np.pi, np.pi)),
        )
        for _ in range(n)
    ]
    return GluSet.from_params(params)


def random_symplectic_2x2(rng, squeeze=2.0):
    p = IwasawaParams(
        q=float(rng.normal()),
        r=float(np.exp(rng.uniform(-squeeze, squeeze))),
        phi=float(rng.uniform(-np.pi, np.pi)),
    )
    return p.matrix()
