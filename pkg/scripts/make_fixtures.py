"""Regenerate the deterministic JSON fixtures under tests/data."""

import os
import sys

import numpy as np

from gaussgraph.fixtures import (
    balancing_squeeze_glus,
    canonical_cluster_circuit,
    six_mode_circuit,
    six_mode_revealing_glus,
)
from gaussgraph.io import circuit_to_dict, glus_to_dict, state_to_dict, write_json
from gaussgraph.states import (
    BalancedBeamsplitter,
    GluSet,
    Rotate,
    Squeeze,
    apply_circuit,
    build_btheta,
    two_mode_squeezed,
    vacuum,
)

R1, R2 = 2.30, 1.65
SIX_MODE_R = 0.5


def btheta_ops(theta, r1, r2):
    return [Squeeze(0, r1), Rotate(0, theta), Squeeze(1, r2), BalancedBeamsplitter(0, 1)]


def main(out):
    os.makedirs(out, exist_ok=True)
    path = lambda name: os.path.join(out, name)

    write_json(path("circuit_b0.json"), circuit_to_dict(2, btheta_ops(0.0, R1, R2)))
    write_json(path("circuit_bpi2.json"), circuit_to_dict(2, btheta_ops(0.5 * np.pi, R1, R2)))
    write_json(path("circuit_squeeze1.json"), circuit_to_dict(1, [Squeeze(0, 1.0)]))
    write_json(path("circuit_empty2.json"), circuit_to_dict(2, []))
    write_json(path("circuit_cluster.json"), circuit_to_dict(2, canonical_cluster_circuit(1.0, 0.5)))
    write_json(path("circuit_six_mode.json"), circuit_to_dict(6, six_mode_circuit(SIX_MODE_R)))

    write_json(path("state_b0.json"), state_to_dict(build_btheta(0.0, R1, R2)))
    write_json(path("state_bpi2.json"), state_to_dict(build_btheta(0.5 * np.pi, R1, R2)))
    write_json(path("state_epr.json"), state_to_dict(two_mode_squeezed(1.0)))
    write_json(path("state_cluster.json"), state_to_dict(apply_circuit(vacuum(2), canonical_cluster_circuit(1.0, 0.5))))
    write_json(path("state_vacuum2.json"), state_to_dict(vacuum(2)))
    write_json(path("state_six_mode.json"), state_to_dict(apply_circuit(vacuum(6), six_mode_circuit(SIX_MODE_R))))

    write_json(path("glus_six_mode.json"), glus_to_dict(six_mode_revealing_glus(SIX_MODE_R)))
    write_json(path("glus_identity6.json"), glus_to_dict(GluSet.identity(6)))
    write_json(path("glus_balancing_b0.json"), glus_to_dict(balancing_squeeze_glus(R1, R2)))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "tests", "data"))
