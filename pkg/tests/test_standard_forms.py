import numpy as np
import pytest

from gaussgraph.errors import DegenerateColumnError, InvalidDimensionError, InvalidParameterError, WrongBranchError
from gaussgraph.standard_forms import (
    StandardBlock,
    chain_coefficients,
    chain_s1_of_s2,
    chain_sj_of_s2,
    left_standardize,
    right_standardize,
    singular_align,
    solve_final_phase,
    standardize_T,
)
from gaussgraph.symplectic import IwasawaParams, iwasawa_compose

J = np.array([[0.0, -1.0], [1.0, 0.0]])


def negative_block(rng):
    while True:
        M = rng.normal(size=(2, 2))
        if np.linalg.det(M) < -0.05:
            return M


def assert_standard(B, atol=1e-10):
    scale = max(1.0, np.max(np.abs(B)))
    assert abs(B[0, 0]) < atol * scale
    assert abs(B[0, 1] - B[1, 0]) < atol * scale


def test_standard_block_matrix():
    assert np.array_equal(StandardBlock(2.0, -1.0).matrix(), [[0, 2], [2, -1]])


def test_standardize_T():
    g = standardize_T([4.0, 0.25])
    assert np.allclose(g.blocks[0], np.diag([0.5, 2.0]))
    sigma = np.diag([4.0, 4.0])
    assert np.allclose(g.blocks[0] @ sigma @ g.blocks[0].T, np.diag([1.0, 16.0]))
    with pytest.raises(InvalidParameterError):
        standardize_T([1.0, 0.0])


def test_left_standardize_example():
    M = np.array([[0.0, 1.0], [1.0, 0.0]])
    p, blk = left_standardize(M)
    assert blk.delta == pytest.approx(1.0)
    assert np.allclose(iwasawa_compose(p) @ M, blk.matrix(), atol=1e-15)


def test_left_and_right_random(rng):
    for _ in range(300):
        M = negative_block(rng)
        p, blk = left_standardize(M)
        S = iwasawa_compose(p)
        assert np.allclose(S @ M, blk.matrix(), atol=1e-10)
        assert_standard(S @ M)
        assert blk.delta == pytest.approx(np.sqrt(-np.linalg.det(M)))
        p, blk = right_standardize(M)
        S = iwasawa_compose(p)
        assert np.allclose(M @ S.T, blk.matrix(), atol=1e-10)


def test_standardize_errors():
    with pytest.raises(WrongBranchError):
        left_standardize(np.eye(2))
    with pytest.raises(WrongBranchError):
        right_standardize(np.zeros((2, 2)))
    with pytest.raises(InvalidDimensionError):
        left_standardize(np.eye(3))


def test_degenerate_column_is_reported(monkeypatch):
    # Det < 0 keeps every row and column nonzero, so force the branch
    from gaussgraph import standard_forms
    monkeypatch.setattr(standard_forms, "_delta", lambda M, what="block": 1.0)
    with pytest.raises(DegenerateColumnError):
        left_standardize(np.array([[0.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(DegenerateColumnError):
        right_standardize(np.array([[0.0, 0.0], [1.0, 1.0]]))


def test_singular_align(rng):
    for _ in range(200):
        a, b = rng.normal(size=2), rng.normal(size=2)
        M = np.outer(a, b)
        R = iwasawa_compose(singular_align(M, "left"))
        assert np.max(np.abs((R @ M)[0])) < 1e-12 * max(1, np.max(np.abs(M)))
        R = iwasawa_compose(singular_align(M, "right"))
        assert np.max(np.abs((M @ R.T)[:, 0])) < 1e-12 * max(1, np.max(np.abs(M)))
    assert singular_align(np.zeros((2, 2))) is None
    M = np.array([[1.0, 0.0], [2.0, 0.0]])
    R = iwasawa_compose(singular_align(M, "left"))
    assert abs((R @ M)[0, 0]) < 1e-15
    with pytest.raises(InvalidParameterError):
        singular_align(M, "up")


def test_chain_s1_makes_block_standard(rng):
    for _ in range(200):
        M = negative_block(rng)
        phi2, r2 = rng.uniform(-np.pi, np.pi), float(np.exp(rng.uniform(-1, 1)))
        S2 = iwasawa_compose(IwasawaParams(0.0, r2, phi2))
        S1 = chain_s1_of_s2(M, phi2, r2)
        assert np.linalg.det(S1) == pytest.approx(1.0, abs=1e-9)
        assert_standard(S1 @ M @ S2.T, 1e-9)


def test_chain_sj_makes_block_standard(rng):
    for _ in range(200):
        M12, M1j = negative_block(rng), negative_block(rng)
        phi2, r2 = rng.uniform(-np.pi, np.pi), float(np.exp(rng.uniform(-1, 1)))
        S1 = chain_s1_of_s2(M12, phi2, r2)
        Sj = chain_sj_of_s2(M12, M1j, phi2, r2)
        assert np.linalg.det(Sj) == pytest.approx(1.0, abs=1e-8)
        assert_standard(S1 @ M1j @ Sj.T, 1e-8)


def test_chain_agrees_with_direction_propagation(rng):
    # standard form needs u1 . (M u2) = 0 for the first rows, so u1 is parallel
    # to J M u2; this is the rule the reducer propagates along chains
    for _ in range(100):
        M = negative_block(rng)
        phi2, r2 = rng.uniform(-np.pi, np.pi), 1.3
        u2 = iwasawa_compose(IwasawaParams(0.0, r2, phi2))[0]
        u1 = chain_s1_of_s2(M, phi2, r2)[0]
        w = J @ M @ u2
        assert abs(u1[0] * w[1] - u1[1] * w[0]) < 1e-9 * np.linalg.norm(u1) * np.linalg.norm(w)


def test_chain_coefficient_keys():
    k = chain_coefficients(np.array([[1.0, 0.0], [0.0, -1.0]]), np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert set(k) == {"kappa", "zeta", "xi", "gamma", "eta", "mu", "nu"}
    assert k["gamma"] == 1.0 and k["nu"] == 1.0


def test_chain_errors():
    with pytest.raises(WrongBranchError):
        chain_s1_of_s2(np.eye(2), 0.0, 1.0)
    with pytest.raises(InvalidParameterError):
        chain_s1_of_s2(np.diag([1.0, -1.0]), 0.0, 0.0)
    with pytest.raises(InvalidParameterError):
        chain_sj_of_s2(np.diag([1.0, -1.0]), np.diag([1.0, -1.0]), 0.0, -1.0)


def test_chain_denominator_cannot_vanish_for_negative_blocks(rng):
    # the denominator is |M^T u2|^2 up to scale, zero only for singular M
    for _ in range(100):
        M = negative_block(rng)
        for phi2 in np.linspace(0, np.pi, 9):
            chain_s1_of_s2(M, phi2, 1.0)
    with pytest.raises(WrongBranchError):
        chain_s1_of_s2(np.zeros((2, 2)), 0.0, 1.0)


def test_solve_final_phase_examples():
    assert solve_final_phase(0, 0, 0) == [0.0]
    assert solve_final_phase(0, 0, 1) == []
    assert solve_final_phase(1, 0, 2) == []
    assert solve_final_phase(1, 0, 0) == pytest.approx([np.pi / 4, 3 * np.pi / 4])
    assert solve_final_phase(1, 0, -1) == pytest.approx([0.0])
    assert solve_final_phase(1, 0, 1) == pytest.approx([np.pi / 2])
    with pytest.raises(InvalidParameterError):
        solve_final_phase(np.nan, 0, 0)


def test_solve_final_phase_random(rng):
    for _ in range(500):
        A, B = rng.normal(size=2)
        C = rng.uniform(-1, 1) * np.hypot(A, B)
        roots = solve_final_phase(A, B, C)
        assert 1 <= len(roots) <= 2
        assert roots == sorted(roots)
        for phi in roots:
            assert 0 <= phi < np.pi
            assert A * np.cos(2 * phi) + B * np.sin(2 * phi) + C == pytest.approx(0, abs=1e-10)
