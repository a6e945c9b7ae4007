"""Search random 4-mode states for one the determinant criterion flags, then freeze it.

A candidate needs some off-diagonal block determinant above ten times the
criterion threshold, and the flag must survive 100 random GLU sets.
"""

import os
import sys

import numpy as np

from gaussgraph.diagnostics import CRITERION_THRESHOLD, sufficient_criterion
from gaussgraph.io import state_to_dict, write_json
from gaussgraph.sampling import random_glus, random_state
from gaussgraph.states import apply_glus

SEED = 20240601


def search(seed=SEED, n=4, depth=20, max_tries=10000):
    rng = np.random.default_rng(seed)
    for attempt in range(max_tries):
        state = random_state(n, rng, depth=depth)
        if not sufficient_criterion(state, 10 * CRITERION_THRESHOLD).flagged:
            continue
        if all(sufficient_criterion(apply_glus(state, random_glus(n, rng))).flagged for _ in range(100)):
            return attempt, state
    raise RuntimeError("no flagged state found")


def main(out):
    attempt, state = search()
    write_json(out, state_to_dict(state))
    print(f"flagged state found after {attempt + 1} draws: {out}")


if __name__ == "__main__":
    default = os.path.join(os.path.dirname(__file__), "..", "tests", "data", "state_flagged4.json")
    main(sys.argv[1] if len(sys.argv) > 1 else default)
