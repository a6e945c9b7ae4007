"""Search for local symplectic operations that make the imaginary graph diagonal.

``U`` is diagonal exactly when every ``<Q'_j Q'_k>`` with ``j != k`` vanishes.
With ``S_j`` applied to mode ``j`` that correlation is ``u_j^T sigma_jk u_k``,
where ``u_j`` is the first row of ``S_j``, so only the directions of the first
rows matter; squeezes and shears are fixed afterwards by a local
normalization that makes every ``sigma_jj`` proportional to the identity.

Each block with ``Det < 0`` ties the two directions together
(``u_k ~ J sigma_jk^T u_j``), so a connected set of such blocks has a single
free angle. Rank-one blocks ``a b^T`` force ``u_j . a = 0`` and
``u_k . b = 0``; further ``Det < 0`` blocks closing a cycle give a quadratic
equation in the free angle whose roots are enumerated and verified.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from . import kernels
from .diagnostics import CRITERION_THRESHOLD, sufficient_criterion
from .errors import ImpureStateError, InvalidDimensionError, WrongBranchError, DegenerateColumnError
from .graphs import ComplexGraph, graph_from_state
from .standard_forms import left_standardize, solve_final_phase
from .states import GaussianState, GluSet, apply_glus
from .symplectic import IwasawaParams, iwasawa_compose, rotation_matrix

_J = np.array([[0.0, -1.0], [1.0, 0.0]])

NEGATIVE = "negative"
SINGULAR = "singular"
ZERO = "zero"
POSITIVE = "positive"


@dataclass(frozen=True)
class ReduceConfig:
    tol: float = 1e-8
    singular_threshold: float = 1e-10
    criterion_threshold: float = CRITERION_THRESHOLD
    zero_threshold: float = 1e-12
    max_branches: int = 1024
    purity_tol: float = 1e-7
    condition_limit: float = 1e12


@dataclass(frozen=True, eq=False)
class Success:
    glus: GluSet
    graph: ComplexGraph
    residual: float
    state: GaussianState
    branches: int = 0
    metadata: dict = field(default_factory=dict)
    outcome = "success"


@dataclass(frozen=True)
class Irreducible:
    witnesses: Tuple[Tuple[int, int, float], ...]
    outcome = "irreducible"


@dataclass(frozen=True)
class Failed:
    branches: int
    best_residual: float
    metadata: dict = field(default_factory=dict)
    outcome = "failed"


def result_to_dict(result):
    """JSON-ready summary; mode indices are 1-based."""
    out = {"outcome": result.outcome}
    if isinstance(result, Success):
        out.update({
            "params": [{"q": p.q, "r": p.r, "phi": p.phi} for p in result.glus.params()],
            "V": result.graph.V.tolist(),
            "U": result.graph.U.tolist(),
            "residual": result.residual,
            "branches": result.branches,
            "metadata": result.metadata,
        })
    elif isinstance(result, Irreducible):
        out["witnesses"] = [{"j": j + 1, "k": k + 1, "det": d} for j, k, d in result.witnesses]
    else:
        out.update({"branches": result.branches, "bestResidual": result.best_residual, "metadata": result.metadata})
    return out


# -- small helpers ------------------------------------------------------------


def _blk(sigma, j, k):
    return sigma[2 * j:2 * j + 2, 2 * k:2 * k + 2]


def _check_pure(state, cfg):
    dev = state.purity_deviation()
    if dev > cfg.purity_tol:
        raise ImpureStateError(f"state is not pure: symplectic eigenvalue deviation {dev:.3e}", dev)


def _offdiag_residual(g):
    if g.n == 1:
        return 0.0
    return float(np.max(np.abs(g.U - np.diag(np.diag(g.U)))))


def _accepts(g, cfg):
    return _offdiag_residual(g) <= cfg.tol * (1.0 + float(np.max(np.abs(np.diag(g.U)))))


def _canonical(phi):
    """Angle in (-pi/2, pi/2]; a rotation and its negative give the same U."""
    phi = float(np.mod(phi + 0.5 * np.pi, np.pi) - 0.5 * np.pi)
    return 0.5 * np.pi if phi <= -0.5 * np.pi + 1e-15 else phi


def _direction_angle(row):
    """Rotation angle whose first row points along ``row``."""
    return _canonical(np.arctan2(-row[1], row[0]))


def classify_blocks(sigma, cfg=ReduceConfig()):
    """Map every pair ``j < k`` to its determinant class."""
    n = sigma.shape[0] // 2
    norms = kernels.block_norms(sigma)
    dets = kernels.block_determinants(sigma)
    zero_cut = cfg.zero_threshold * float(np.max(norms))
    classes = {}
    for j in range(n):
        for k in range(j + 1, n):
            nrm = norms[j, k]
            if nrm <= zero_cut:
                classes[j, k] = ZERO
            elif abs(dets[j, k]) <= cfg.singular_threshold * nrm * nrm:
                classes[j, k] = SINGULAR
            elif dets[j, k] < 0:
                classes[j, k] = NEGATIVE
            else:
                classes[j, k] = POSITIVE
    return classes


def _components(n, edges):
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for j, k in edges:
        parent[find(j)] = find(k)
    groups = {}
    for j in range(n):
        groups.setdefault(find(j), []).append(j)
    return sorted(groups.values())


def block_components(sigma, cfg=ReduceConfig()):
    """Modes partitioned by the pattern of non-zero inter-mode blocks."""
    classes = classify_blocks(sigma, cfg)
    return _components(sigma.shape[0] // 2, [p for p, c in classes.items() if c != ZERO])


# -- local normalization -----------------------------------------------------


def normalizing_glus(sigma, angles):
    """Rotate each mode by ``angles[j]``, then squeeze and shear ``sigma_jj`` to a multiple of I.

    The first row of each block keeps the direction set by the rotation, so
    the zero pattern of ``<Q_j Q_k>`` is unchanged.
    """
    blocks = []
    for j, phi in enumerate(angles):
        rot = rotation_matrix(phi)
        local = rot @ _blk(sigma, j, j) @ rot.T
        a, b, d = local[0, 0], local[0, 1], local[1, 1]
        root_det = np.sqrt(max(a * d - b * b, 0.0))
        r = float(np.sqrt(root_det / a))
        q = float(-b / (r * r * a))
        blocks.append(iwasawa_compose(IwasawaParams(q=q, r=r, phi=phi)))
    return GluSet(tuple(blocks))


def remove_self_loops(state, tol=1e-9):
    """Shears that zero the real self-loops ``V_jj``; returns ``(glus, state)``."""
    g = graph_from_state(state)
    blocks = tuple(np.array([[1.0, 0.0], [-g.V[j, j], 1.0]]) for j in range(state.n))
    glus = GluSet(blocks)
    return glus, apply_glus(state, glus)


# -- routes --------------------------------------------------------------------


def _two_mode_angles(sigma, j, k):
    params, _ = left_standardize(_blk(sigma, j, k))
    return {j: _canonical(params.phi), k: 0.0}


def _three_mode_glus(sigma):
    """Constructive reduction of a pure three-mode covariance with all Det < 0.

    Returns the 2x2 blocks, or ``None`` when the no-Q-P-correlation standard
    form cannot be reached with the singular vectors at hand (degenerate
    singular values), in which case the caller falls back to the generic route.
    """
    W = []
    for j in range(3):
        vals, vecs = np.linalg.eigh(_blk(sigma, j, j))
        W.append(np.prod(vals) ** 0.25 * (vecs @ np.diag(vals ** -0.5) @ vecs.T))
    s = kernels.apply_local(sigma, np.stack(W))

    u12, d12, v12 = np.linalg.svd(_blk(s, 0, 1))
    if abs(d12[0] - d12[1]) <= 1e-6 * d12[0]:
        return None
    if np.linalg.det(u12) < 0:
        u12[:, 1] *= -1
    if np.linalg.det(v12) < 0:
        v12[1] *= -1
    O1, O2 = u12.T, v12
    rows = O1 @ _blk(s, 0, 2)
    lens = np.linalg.norm(rows, axis=1)
    if np.min(lens) <= 1e-9 * np.max(lens) or abs(rows[0] @ rows[1]) > 1e-7 * lens[0] * lens[1]:
        return None
    O3 = rows / lens[:, None]
    if np.linalg.det(O3) < 0:
        O3[1] *= -1
    O = [O1, O2, O3]
    t = kernels.apply_local(s, np.stack(O))
    D = {p: _blk(t, *p) for p in ((0, 1), (0, 2), (1, 2))}
    for p, m in D.items():
        if abs(m[0, 1]) + abs(m[1, 0]) > 1e-7 * np.linalg.norm(m):
            return None
        if not m[0, 0] * m[1, 1] < 0:
            return None
    a12, b12 = D[0, 1][0, 0], D[0, 1][1, 1]
    a13, b13 = D[0, 2][0, 0], D[0, 2][1, 1]
    a23, b23 = D[1, 2][0, 0], D[1, 2][1, 1]

    # squeezes that make sigma_12 and sigma_13 proportional to diag(1, -1)
    x = np.sqrt(-b12 / a12)
    y = np.sqrt(-b13 / a13) / x
    Sa = [np.diag([x, 1 / x]), np.eye(2), np.diag([y, 1 / y])]
    alpha, beta = a23 * y, b23 / y

    # rotations: mode 2 kills <Q2 Q3>, mode 3 follows mode 2, mode 1 is a quarter turn away
    a2 = float(np.arctan(np.sqrt(-alpha / beta)))
    angles = [0.5 * np.pi - a2, a2, a2]
    return [rotation_matrix(angles[j]) @ Sa[j] @ O[j] @ W[j] for j in range(3)]


@dataclass
class _Component:
    modes: list
    root: int
    maps: dict
    tree: list
    cycles: list
    linear: list
    positive: list


def _build_component(sigma, sub, classes):
    """Spanning tree over Det<0 blocks and the constraints left over."""
    neg = [(j, k) for j in sub for k in sub if j < k and classes[j, k] == NEGATIVE]
    dets = kernels.block_determinants(sigma)
    first = (sub[0], sub[1]) if len(sub) > 1 else None
    if first is not None and first in neg:
        pivot = first
    elif neg:
        pivot = min(neg, key=lambda p: (dets[p], p))
    else:
        pivot = None
    # the free angle lives on the pivot's second mode, written (cos phi, -sin phi)
    root = pivot[1] if pivot else sub[0]
    maps = {root: np.diag([1.0, -1.0])}
    adjacency = {j: [] for j in sub}
    for j, k in neg:
        adjacency[j].append(k)
        adjacency[k].append(j)
    tree = []
    queue = []
    if pivot:
        queue = [pivot[0], root]
        _propagate(sigma, maps, root, pivot[0])
        tree.append((root, pivot[0]))
    while queue:
        a = queue.pop(0)
        for b in sorted(adjacency[a]):
            if b not in maps:
                _propagate(sigma, maps, a, b)
                tree.append((a, b))
                queue.append(b)
    used = {tuple(sorted(e)) for e in tree}
    cycles = [p for p in neg if p not in used]
    return _Component(list(sub), root, maps, tree, cycles, [], [])


def _propagate(sigma, maps, a, b):
    m = _J @ _blk(sigma, a, b).T @ maps[a]
    maps[b] = m / np.linalg.norm(m)


def _add_outside_constraints(sigma, comps, classes):
    where = {j: c for c in comps for j in c.modes}
    for (j, k), cls in sorted(classes.items()):
        if cls == SINGULAR:
            u, s, vt = np.linalg.svd(_blk(sigma, j, k))
            if j in where:
                where[j].linear.append((j, u[:, 0]))
            if k in where:
                where[k].linear.append((k, vt[0]))
        elif cls == POSITIVE:
            for m in (j, k):
                if m in where:
                    where[m].positive.append((j, k))


def _directions(comp, phi):
    x = np.array([np.cos(phi), np.sin(phi)])
    return {j: comp.maps[j] @ x for j in comp.modes}


def _component_residual(sigma, comp, phi, classes):
    """Largest normalized <Q_j Q_k> over every non-zero block touching the component."""
    dirs = _directions(comp, phi)
    worst = 0.0
    for j in comp.modes:
        for k in comp.modes:
            if j < k and classes[j, k] != ZERO:
                blk = _blk(sigma, j, k)
                val = dirs[j] @ blk @ dirs[k]
                worst = max(worst, abs(val) / (np.linalg.norm(dirs[j]) * np.linalg.norm(dirs[k]) * np.linalg.norm(blk)))
    for j, w in comp.linear:
        d = dirs[j]
        worst = max(worst, abs(d @ w) / np.linalg.norm(d))
    return worst


def _candidates(sigma, comp):
    """Free-angle candidates in ascending order, plus the block used to find them."""
    if comp.linear:
        j, w = comp.linear[0]
        normal = comp.maps[j].T @ w
        return [float(np.mod(np.arctan2(normal[0], -normal[1]), np.pi))], ("linear", j)
    for a, b in comp.cycles:
        Q = comp.maps[a].T @ _blk(sigma, a, b) @ comp.maps[b]
        Q = 0.5 * (Q + Q.T)
        p, s, q = Q[0, 0], Q[0, 1], Q[1, 1]
        A, B, C = 0.5 * (p - q), s, 0.5 * (p + q)
        if max(abs(A), abs(B), abs(C)) <= 1e-13 * np.linalg.norm(_blk(sigma, a, b)):
            continue
        roots = solve_final_phase(A, B, C, tol=1e-9)
        if not roots:
            # closest approach, kept so the failure reports a meaningful residual
            roots = [float(np.mod(0.5 * np.arctan2(B, A) + (0.5 * np.pi if C > 0 else 0.0), np.pi))]
        return roots, ("cycle", (a, b))
    return [0.0], ("free", None)


def generic_angles(sigma, modes, classes, cfg, budget):
    """Rotation angles for ``modes`` from the chained-direction search.

    Returns ``(angles, branches, worst_residual, metadata)``.
    """
    inner = [(j, k) for (j, k), c in classes.items() if c == NEGATIVE and j in modes and k in modes]
    index = {m: i for i, m in enumerate(modes)}
    parts = _components(len(modes), [(index[j], index[k]) for j, k in inner])
    comps = [_build_component(sigma, [modes[i] for i in part], classes) for part in parts]
    _add_outside_constraints(sigma, comps, {p: c for p, c in classes.items() if p[0] in index or p[1] in index})
    angles, branches, worst = {}, 0, 0.0
    meta = []
    for comp in comps:
        roots, source = _candidates(sigma, comp)
        best = None
        verified = 0
        for phi in roots:
            if branches >= budget:
                break
            branches += 1
            res = _component_residual(sigma, comp, phi, classes)
            if res <= cfg.tol:
                verified += 1
            if best is None or (res <= cfg.tol < best[0]) or (best[0] > cfg.tol and res < best[0]):
                best = (res, phi)
        if best is None:
            best = (np.inf, 0.0)
        worst = max(worst, best[0])
        for j, d in _directions(comp, best[1]).items():
            angles[j] = _direction_angle(d)
        meta.append({
            "modes": [j + 1 for j in comp.modes],
            "pivot": comp.root + 1,
            "constraint": source[0],
            "constraintBlock": None if source[1] is None else (
                [source[1] + 1] if source[0] == "linear" else [source[1][0] + 1, source[1][1] + 1]),
            "verifiedRoots": verified,
            "ambiguous": verified > 1,
        })
    return angles, branches, worst, meta


# -- drivers -----------------------------------------------------------------


def _finish(state, pre, angles, cfg):
    glus = normalizing_glus(state.sigma, angles)
    reduced = apply_glus(state, glus)
    graph = graph_from_state(reduced, condition_limit=cfg.condition_limit)
    return glus.compose(pre), reduced, graph


def _solve_angles(state, cfg, three_mode_route=True):
    sigma = state.sigma
    n = state.n
    classes = classify_blocks(sigma, cfg)
    groups = _components(n, [p for p, c in classes.items() if c != ZERO])
    angles = [0.0] * n
    branches = 0
    meta = {"components": [], "routes": []}
    for group in groups:
        route = "single"
        found = None
        pairs = [(j, k) for j in group for k in group if j < k]
        all_negative = all(classes[p] == NEGATIVE for p in pairs)
        if len(group) == 2 and all_negative:
            try:
                found = _two_mode_angles(sigma, *group)
                route = "two-mode"
                branches += 1
            except (WrongBranchError, DegenerateColumnError):
                found = None
        elif len(group) == 3 and all_negative and three_mode_route:
            sub = sigma[np.ix_(_dofs(group), _dofs(group))]
            blocks = _three_mode_glus(sub)
            branches += 1
            if blocks is not None:
                found = {m: _direction_angle(b[0]) for m, b in zip(group, blocks)}
                if _group_residual(sigma, group, found, classes) > cfg.tol:
                    found = None
                else:
                    route = "three-mode"
        if found is None and len(group) > 1:
            found, used, _, comp_meta = generic_angles(sigma, group, classes, cfg, cfg.max_branches - branches)
            branches += used
            route = "chained"
            meta.setdefault("chains", []).extend(comp_meta)
        if found is None:
            found = {group[0]: 0.0}
        for j, phi in found.items():
            angles[j] = phi
        meta["components"].append([j + 1 for j in group])
        meta["routes"].append(route)
    meta["freeModes"] = [g[0] + 1 for g in groups if len(g) == 1]
    return angles, branches, meta


def _dofs(group):
    return [2 * j + o for j in group for o in (0, 1)]


def _group_residual(sigma, group, angles, classes):
    worst = 0.0
    for j in group:
        for k in group:
            if j < k and classes[j, k] != ZERO:
                blk = _blk(sigma, j, k)
                uj = rotation_matrix(angles[j])[0]
                uk = rotation_matrix(angles[k])[0]
                worst = max(worst, abs(uj @ blk @ uk) / np.linalg.norm(blk))
    return worst


def _reduce(state, cfg, three_mode_route=True):
    _check_pure(state, cfg)
    verdict = sufficient_criterion(state, cfg.criterion_threshold)
    if verdict.flagged:
        return Irreducible(verdict.witnesses)
    pre, clean = remove_self_loops(state)
    g0 = graph_from_state(clean, condition_limit=cfg.condition_limit)
    if _accepts(g0, cfg):
        return Success(pre, g0, _offdiag_residual(g0), clean, 0, {"routes": ["already-diagonal"]})
    angles, branches, meta = _solve_angles(clean, cfg, three_mode_route)
    glus, reduced, graph = _finish(clean, pre, angles, cfg)
    # U is fixed only up to per-mode rescaling; report which representative was chosen
    meta["normalization"] = "local blocks proportional to identity"
    residual = _offdiag_residual(graph)
    if _accepts(graph, cfg):
        return Success(glus, graph, residual, reduced, branches, meta)
    return Failed(branches, residual, meta)


def reduce(state, config: Optional[ReduceConfig] = None):
    """Find GLUs making ``U`` diagonal.

    Returns :class:`Success`, :class:`Irreducible` (the determinant criterion
    fired) or :class:`Failed` (no candidate verified).
    """
    return _reduce(state, config or ReduceConfig())


def three_mode_reduce(state, config: Optional[ReduceConfig] = None):
    """Reduction of a three-mode state through its no-Q-P-correlation standard form.

    Components whose standard form is degenerate fall back to the chained search.
    """
    if state.n != 3:
        raise InvalidDimensionError(f"three_mode_reduce needs 3 modes, got {state.n}")
    return _reduce(state, config or ReduceConfig())
