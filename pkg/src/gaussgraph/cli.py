"""Command-line front end.

Exit codes: 0 ok, 1 usage or I/O error, 2 parse error, 3 non-symplectic
block, 4 impure or ill-conditioned state, 10 irreducible, 11 failed,
12 verification failure.
"""

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .diagnostics import CRITERION_THRESHOLD, correlation_determinants, report_fragment
from .errors import (
    GaussGraphError,
    IllConditionedStateError,
    ImpureStateError,
    InvalidCovarianceError,
    InvalidParameterError,
    ParseError,
)
from .graphs import EDGE_THRESHOLD, export_graph, graph_error, graph_from_state
from .io import (
    circuit_from_dict,
    digest,
    dumps,
    glus_from_dict,
    glus_to_dict,
    parse_json,
    read_text,
    state_from_dict,
    state_to_dict,
    write_json,
)
from .reducer import Failed, Irreducible, ReduceConfig, Success, reduce, result_to_dict
from .states import apply_circuit, apply_glus, vacuum

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_NOT_SYMPLECTIC = 3
EXIT_IMPURE = 4
EXIT_IRREDUCIBLE = 10
EXIT_FAILED = 11
EXIT_VERIFY = 12

DEFAULT_TOL = 1e-8
PURITY_TOL = 1e-7
TOL_ENV = "GAUSSGRAPH_TOL"


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def default_tol():
    raw = os.environ.get(TOL_ENV)
    if raw is None or raw == "":
        return DEFAULT_TOL
    try:
        value = float(raw)
    except ValueError:
        raise CliError(EXIT_USAGE, f"{TOL_ENV}={raw!r} is not a number") from None
    if not (np.isfinite(value) and value > 0):
        raise CliError(EXIT_USAGE, f"{TOL_ENV} must be positive, got {raw}")
    return value


def _load(path, parse):
    try:
        text = read_text(path)
    except OSError as exc:
        raise CliError(EXIT_USAGE, f"{path}: {exc.strerror}") from None
    try:
        return parse(parse_json(text)), digest(text)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: parse error at {exc.location()}: {exc}") from None
    except InvalidParameterError as exc:
        raise CliError(EXIT_NOT_SYMPLECTIC, f"{path}: {exc}") from None
    except InvalidCovarianceError as exc:
        raise CliError(EXIT_PARSE, f"{path}: invalid covariance: {exc}") from None


def _pure_graph(state, path):
    dev = state.purity_deviation()
    if dev > PURITY_TOL:
        raise CliError(EXIT_IMPURE, f"{path}: state is not pure; max symplectic eigenvalue deviation {dev:.3e}")
    try:
        return graph_from_state(state)
    except ImpureStateError as exc:
        raise CliError(EXIT_IMPURE, f"{path}: {exc}; max symplectic eigenvalue deviation {dev:.3e}") from None
    except IllConditionedStateError as exc:
        raise CliError(EXIT_IMPURE, f"{path}: {exc}") from None


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _graph_dict(g):
    err = graph_error(g)
    return {"V": g.V.tolist(), "U": g.U.tolist()}, {"traceU": err.traceU, "offDiagonalNormU": err.offDiagonalNormU}


def _base_report(path, state, dig, g, threshold):
    graph, err = _graph_dict(g)
    return {
        "input": {"file": os.path.basename(path), "sha256": dig},
        "n": state.n,
        "graph": graph,
        "graphError": err,
        "diagnostics": report_fragment(state, threshold=threshold),
    }


# -- subcommands ---------------------------------------------------------------


def cmd_build(args):
    (n, ops), _ = _load(args.circuit, lambda obj: circuit_from_dict(obj, db=args.db))
    try:
        state = apply_circuit(vacuum(n), ops)
    except InvalidParameterError as exc:
        raise CliError(EXIT_NOT_SYMPLECTIC, str(exc)) from None
    _emit(dumps(state_to_dict(state)), args.out)
    return EXIT_OK


def cmd_graph(args):
    state, _ = _load(args.state, state_from_dict)
    g = _pure_graph(state, args.state)
    _emit(export_graph(g, args.format, threshold=args.threshold), args.out)
    return EXIT_OK


def _diagnose_one(path, threshold):
    state, dig = _load(path, state_from_dict)
    g = _pure_graph(state, path)
    return _base_report(path, state, dig, g, threshold)


def cmd_diagnose(args):
    threshold = args.threshold
    if args.jobs > 1 and len(args.states) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(_diagnose_one, p, threshold) for p in args.states]
            reports = [f.result() for f in futures]
    else:
        reports = [_diagnose_one(p, threshold) for p in args.states]
    _emit(dumps(reports[0] if len(reports) == 1 else reports), args.out)
    return EXIT_OK


def _default_sibling(path, suffix):
    stem = os.path.splitext(path)[0]
    return f"{stem}.{suffix}.json"


def cmd_reduce(args):
    state, dig = _load(args.state, state_from_dict)
    g = _pure_graph(state, args.state)
    report = _base_report(args.state, state, dig, g, args.threshold)
    config = ReduceConfig(tol=args.tol, criterion_threshold=args.threshold, max_branches=args.max_branches)
    try:
        result = reduce(state, config)
    except (ImpureStateError, IllConditionedStateError) as exc:
        raise CliError(EXIT_IMPURE, f"{args.state}: {exc}") from None
    report["config"] = {"tol": args.tol, "threshold": args.threshold, "maxBranches": args.max_branches}
    report["reduction"] = result_to_dict(result)
    if isinstance(result, Success):
        dets_before = correlation_determinants(state)
        dets_after = correlation_determinants(result.state)
        report["reduction"]["detDrift"] = float(np.max(np.abs(dets_after - dets_before)))
        state_out = args.state_out or _default_sibling(args.state, "reduced")
        glus_out = args.glus_out or _default_sibling(args.state, "glus")
        write_json(state_out, state_to_dict(result.state))
        write_json(glus_out, glus_to_dict(result.glus))
    _emit(dumps(report), args.out)
    if isinstance(result, Irreducible):
        return EXIT_IRREDUCIBLE
    if isinstance(result, Failed):
        return EXIT_FAILED
    return EXIT_OK


def verify_checks(state, glus, tol, det_tol=1e-8):
    """Soundness checks in order; each entry is ``(name, passed, value)``."""
    checks = []
    checks.append(("dimension", glus.n == state.n, float(glus.n)))
    if glus.n != state.n:
        return checks
    worst_symp = max(abs(np.linalg.det(b) - 1.0) for b in glus.blocks)
    checks.append(("symplectic-blocks", worst_symp < 1e-9, float(worst_symp)))
    after = apply_glus(state, glus)
    try:
        g = graph_from_state(after)
    except GaussGraphError as exc:
        checks.append(("graph-extraction", False, str(exc)))
        return checks
    off = graph_error(g).offDiagonalNormU
    bound = tol * (1.0 + float(np.max(np.abs(np.diag(g.U)))))
    checks.append(("diagonal-U", off <= bound, off))
    scale = float(np.max(np.abs(correlation_determinants(state))))
    drift = float(np.max(np.abs(correlation_determinants(after) - correlation_determinants(state))))
    checks.append(("det-invariance", drift <= det_tol * max(scale, 1.0), drift))
    return checks


def cmd_verify(args):
    state, _ = _load(args.state, state_from_dict)
    _pure_graph(state, args.state)
    glus, _ = _load(args.glus, glus_from_dict)
    checks = verify_checks(state, glus, args.tol)
    failed = next((c for c in checks if not c[1]), None)
    out = {
        "ok": failed is None,
        "checks": [{"name": n, "passed": bool(p), "value": v} for n, p, v in checks],
        "firstFailure": failed[0] if failed else None,
    }
    _emit(dumps(out), args.out)
    if failed:
        print(f"verify: invariant {failed[0]!r} violated (value {failed[2]})", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="gaussgraph", description="Graph diagnostics and GLU reduction for pure Gaussian states.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=None, help=f"numerical tolerance (default {DEFAULT_TOL:g}, or ${TOL_ENV})")
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("build", help="evolve vacuum through a circuit file and write the state")
    p.add_argument("circuit")
    p.add_argument("--db", action="store_true", help="read squeeze values as quadrature-variance dB")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("graph", help="export the complex graph of a state")
    p.add_argument("state")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--threshold", type=float, default=EDGE_THRESHOLD, help="edge threshold")
    common(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("diagnose", help="determinants, criterion verdict and PPT summary")
    p.add_argument("states", nargs="+")
    p.add_argument("--threshold", type=float, default=CRITERION_THRESHOLD, help="criterion threshold (relative)")
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("reduce", help="search for GLUs that make U diagonal")
    p.add_argument("state")
    p.add_argument("--threshold", type=float, default=CRITERION_THRESHOLD, help="criterion threshold (relative)")
    p.add_argument("--max-branches", type=int, default=ReduceConfig.max_branches)
    p.add_argument("--state-out", help="reduced state file (default: <input>.reduced.json)")
    p.add_argument("--glus-out", help="GLU set file (default: <input>.glus.json)")
    common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="check that a GLU set makes U diagonal")
    p.add_argument("state")
    p.add_argument("glus")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tol is None:
            args.tol = default_tol()
        elif not (np.isfinite(args.tol) and args.tol > 0):
            raise CliError(EXIT_USAGE, "--tol must be positive")
        if getattr(args, "jobs", 1) < 1:
            raise CliError(EXIT_USAGE, "--jobs must be at least 1")
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except GaussGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
