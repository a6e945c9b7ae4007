"""JSON file formats for states, circuits and GLU sets.

Mode indices in files are 1-based. Matrices are row-major nested lists.

* state: ``{"n": 2, "sigma": [[...], ...], "ordering": "mode" | "quadrature"}``
* circuit: ``{"modes": 2, "ops": [{"kind": "squeeze", "mode": 1, "r": 0.5}, ...]}``
  with kinds ``squeeze`` (``r`` or ``db``), ``rotate`` (``theta``), ``shear``
  (``q``), ``beamsplitter`` (``modes: [j, k]``), ``cz`` (``modes``, ``g``) and
  ``local`` (``mode``, ``matrix``)
* GLU set: ``{"n": 2, "blocks": [[[...]], ...], "params": [{"q", "r", "phi"}, ...]}``;
  ``blocks`` wins when both are present
"""

import hashlib
import json
import math

import numpy as np

from .errors import GaussGraphError, InvalidParameterError, ParseError
from .states import (
    BalancedBeamsplitter,
    Cz,
    GaussianState,
    GluSet,
    LocalSymplectic,
    Rotate,
    Shear,
    Squeeze,
    squeeze_db_to_r,
)
from .symplectic import MODE, ORDERINGS, QUADRATURE, IwasawaParams, is_symplectic, reorder


def digest(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def parse_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def read_text(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def dumps(obj):
    """Deterministic JSON text with full double precision."""
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _field(obj, key, where):
    if not isinstance(obj, dict):
        raise ParseError(f"expected an object at {where}", where=where)
    if key not in obj:
        raise ParseError(f"missing field {key!r}", where=where)
    return obj[key]


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ParseError(f"expected a finite number, got {value!r}", where=where)
    return float(value)


def _index(value, n, where):
    if isinstance(value, bool) or not isinstance(value, int) or not 1 <= value <= n:
        raise ParseError(f"mode index {value!r} is not in 1..{n}", where=where)
    return value - 1


def _matrix(value, shape, where):
    try:
        m = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise ParseError("matrix entries must be numbers", where=where) from None
    if m.shape != shape:
        raise ParseError(f"expected a {shape[0]}x{shape[1]} matrix, got shape {m.shape}", where=where)
    if not np.all(np.isfinite(m)):
        raise ParseError("matrix has non-finite entries", where=where)
    return m


def _count(value, where):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ParseError(f"mode count must be a positive integer, got {value!r}", where=where)
    return value


# -- states ------------------------------------------------------------------


def state_from_dict(obj):
    n = _count(_field(obj, "n", "$"), "$.n")
    sigma = _matrix(_field(obj, "sigma", "$"), (2 * n, 2 * n), "$.sigma")
    ordering = _field(obj, "ordering", "$")
    if ordering not in ORDERINGS:
        raise ParseError(f"ordering must be one of {ORDERINGS}, got {ordering!r}", where="$.ordering")
    if ordering == QUADRATURE:
        sigma = reorder(sigma, QUADRATURE, MODE)
    return GaussianState(sigma)


def state_to_dict(state):
    return {"n": state.n, "sigma": state.sigma.tolist(), "ordering": MODE}


def read_state(path):
    return state_from_dict(parse_json(read_text(path)))


# -- circuits ----------------------------------------------------------------


def _op_from_dict(op, n, where, db=False):
    kind = _field(op, "kind", where)
    if kind == "squeeze":
        j = _index(_field(op, "mode", where), n, where + ".mode")
        if "db" in op:
            r = squeeze_db_to_r(_number(op["db"], where + ".db"))
        else:
            r = _number(_field(op, "r", where), where + ".r")
            if db:
                r = squeeze_db_to_r(r)
        return Squeeze(j, r)
    if kind == "rotate":
        return Rotate(_index(_field(op, "mode", where), n, where + ".mode"), _number(_field(op, "theta", where), where + ".theta"))
    if kind == "shear":
        return Shear(_index(_field(op, "mode", where), n, where + ".mode"), _number(_field(op, "q", where), where + ".q"))
    if kind in ("beamsplitter", "cz"):
        modes = _field(op, "modes", where)
        if not isinstance(modes, list) or len(modes) != 2:
            raise ParseError("two-mode gate needs 'modes': [j, k]", where=where + ".modes")
        j, k = (_index(m, n, f"{where}.modes[{i}]") for i, m in enumerate(modes))
        if j == k:
            raise ParseError("two-mode gate needs two distinct modes", where=where + ".modes")
        if kind == "beamsplitter":
            return BalancedBeamsplitter(j, k)
        return Cz(j, k, _number(op.get("g", 1.0), where + ".g"))
    if kind == "local":
        j = _index(_field(op, "mode", where), n, where + ".mode")
        m = _matrix(_field(op, "matrix", where), (2, 2), where + ".matrix")
        if not is_symplectic(m, 1e-9):
            raise InvalidParameterError(f"local block at {where} is not symplectic (det={np.linalg.det(m):.6g})")
        return LocalSymplectic(j, m)
    raise ParseError(f"unknown operation kind {kind!r}", where=where + ".kind")


def circuit_from_dict(obj, db=False):
    """``(n, ops)`` with 0-based mode indices."""
    n = _count(_field(obj, "modes", "$"), "$.modes")
    ops = _field(obj, "ops", "$")
    if not isinstance(ops, list):
        raise ParseError("'ops' must be a list", where="$.ops")
    return n, [_op_from_dict(op, n, f"$.ops[{i}]", db) for i, op in enumerate(ops)]


def _op_to_dict(op):
    if isinstance(op, Squeeze):
        return {"kind": "squeeze", "mode": op.mode + 1, "r": op.r}
    if isinstance(op, Rotate):
        return {"kind": "rotate", "mode": op.mode + 1, "theta": op.theta}
    if isinstance(op, Shear):
        return {"kind": "shear", "mode": op.mode + 1, "q": op.q}
    if isinstance(op, BalancedBeamsplitter):
        return {"kind": "beamsplitter", "modes": [op.mode1 + 1, op.mode2 + 1]}
    if isinstance(op, Cz):
        return {"kind": "cz", "modes": [op.mode1 + 1, op.mode2 + 1], "g": op.g}
    if isinstance(op, LocalSymplectic):
        return {"kind": "local", "mode": op.mode + 1, "matrix": op.matrix.tolist()}
    raise InvalidParameterError(f"unknown operation {op!r}")


def circuit_to_dict(n, ops):
    return {"modes": n, "ops": [_op_to_dict(op) for op in ops]}


def read_circuit(path, db=False):
    return circuit_from_dict(parse_json(read_text(path)), db)


# -- GLU sets ----------------------------------------------------------------


def glus_from_dict(obj):
    n = _count(_field(obj, "n", "$"), "$.n")
    if "blocks" in obj:
        blocks = obj["blocks"]
        if not isinstance(blocks, list) or len(blocks) != n:
            raise ParseError(f"'blocks' must list {n} matrices", where="$.blocks")
        mats = tuple(_matrix(b, (2, 2), f"$.blocks[{i}]") for i, b in enumerate(blocks))
        return GluSet(mats)
    params = _field(obj, "params", "$")
    if not isinstance(params, list) or len(params) != n:
        raise ParseError(f"'params' must list {n} entries", where="$.params")
    out = []
    for i, p in enumerate(params):
        where = f"$.params[{i}]"
        try:
            out.append(IwasawaParams(
                q=_number(p.get("q", 0.0) if isinstance(p, dict) else None, where + ".q"),
                r=_number(_field(p, "r", where), where + ".r"),
                phi=_number(p.get("phi", 0.0), where + ".phi"),
            ))
        except GaussGraphError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), where=where) from None
    return GluSet.from_params(out)


def glus_to_dict(glus):
    return {
        "n": glus.n,
        "blocks": [b.tolist() for b in glus.blocks],
        "params": [{"q": p.q, "r": p.r, "phi": p.phi} for p in glus.params()],
    }


def read_glus(path):
    return glus_from_dict(parse_json(read_text(path)))


def write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
