"""Command-line interface: ``bjgeom <command> [files] [flags]``.

Every invocation prints one report (see :mod:`bjgeom.report`). Exit codes:
0 success, 1 internal error, 2 precondition or input violation, 3 witness
not found.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import report as rp
from .errors import GeometryError, WitnessNotFound
from .extremality import Verdict, decompose_midpoint, is_extreme_contraction
from .grothendieck import lower_bound
from .matrixio import parse_matrix
from .operators import (norming_set, op_norm, operator_is_smooth,
                        operator_orthogonality_certificate)
from .symmetry import check_symmetry_pair, left_symmetry_witness, right_symmetry_witness
from .tolerances import ETA

EXIT_OK, EXIT_INTERNAL, EXIT_PRECONDITION, EXIT_NOT_FOUND = 0, 1, 2, 3

ONE_MATRIX = ("norm", "norming-set", "smooth-check", "extreme-check", "left-witness", "right-witness")
TWO_MATRICES = ("bj-check", "symmetry-pair")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=ETA, help="hull-membership margin")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=2048, help="ascent runs for grothendieck")
    common.add_argument("--exact", action="store_true", help="rational arithmetic in the LP")
    common.add_argument("--phase-grid", type=int, default=64, help="phases per coordinate for complex norms")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", type=Path, default=None)
    common.add_argument("--format", choices=("json-lines", "human"), default="json-lines")
    p = argparse.ArgumentParser(prog="bjgeom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in ONE_MATRIX:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("matrix", type=Path)
    for name in TWO_MATRICES:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("first", type=Path)
        sp.add_argument("second", type=Path)
    sp = sub.add_parser("grothendieck", parents=[common])
    sp.add_argument("m", type=int)
    sp.add_argument("n", type=int)
    return p


def _cert(c) -> dict:
    out = {"verdict": c.verdict, "approximate": c.approximate,
           "norming_points": c.points}
    if c.combiner is not None:
        out["weights"] = c.combiner.weights
        out["atom_points"] = list(c.atom_points)
    return out


def _run(args, mats) -> tuple[dict, int]:
    cmd = args.command
    if cmd == "norm":
        T = mats[0]
        ns = norming_set(T, args.phase_grid, args.seed) if not T.is_zero() else None
        return {"norm": op_norm(T, args.phase_grid, args.seed),
                "approximate": bool(ns.approximate) if ns else False}, EXIT_OK
    if cmd == "norming-set":
        ns = norming_set(mats[0], args.phase_grid, args.seed)
        return {"norm": ns.norm, "representatives": ns.representatives, "values": ns.values,
                "rank": ns.rank(), "approximate": ns.approximate}, EXIT_OK
    if cmd == "smooth-check":
        return {"smooth": operator_is_smooth(mats[0])}, EXIT_OK
    if cmd == "bj-check":
        c = operator_orthogonality_certificate(mats[0], mats[1], args.phase_grid, args.tol)
        return _cert(c), EXIT_OK
    if cmd == "extreme-check":
        cert = is_extreme_contraction(mats[0], exact=args.exact)
        out = cert.to_dict()
        if cert.verdict is Verdict.NOT_EXTREME:
            t1, t2 = decompose_midpoint(cert, mats[0])
            out["midpoint"] = {"plus": t1.entries, "minus": t2.entries,
                               "norms": [op_norm(t1), op_norm(t2)]}
        return out, EXIT_OK
    if cmd == "left-witness":
        return left_symmetry_witness(mats[0]).to_dict(), EXIT_OK
    if cmd == "right-witness":
        return right_symmetry_witness(mats[0]).to_dict(), EXIT_OK
    if cmd == "symmetry-pair":
        return check_symmetry_pair(mats[0], mats[1]).to_dict(), EXIT_OK
    if cmd == "grothendieck":
        res = lower_bound(args.m, args.n, budget=args.budget, seed=args.seed, workers=args.workers)
        return res.to_dict(), EXIT_OK
    raise ValueError(f"unknown command {cmd}")


def _config(args) -> dict:
    return {"tol": args.tol, "seed": args.seed, "budget": args.budget, "exact": args.exact,
            "phase_grid": args.phase_grid}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    paths = []
    if args.command in ONE_MATRIX:
        paths = [args.matrix]
    elif args.command in TWO_MATRICES:
        paths = [args.first, args.second]
    inputs = []
    if args.command == "grothendieck":
        inputs = [{"m": args.m, "n": args.n}]
    start = time.perf_counter()
    result, error, status = None, None, "ok"
    try:
        mats = []
        for path in paths:
            mats.append(parse_matrix(path))
            inputs.append({"path": str(path), "sha256": rp.file_digest(path),
                           "matrix": mats[-1].entries})
        result, code = _run(args, mats)
    except (GeometryError, ValueError) as exc:
        code = EXIT_NOT_FOUND if isinstance(exc, WitnessNotFound) else EXIT_PRECONDITION
        status, error = "error", {"type": type(exc).__name__, "message": str(exc)}
    except Exception as exc:  # noqa: BLE001 - reported, never swallowed silently
        code = EXIT_INTERNAL
        status, error = "error", {"type": type(exc).__name__, "message": str(exc)}
    timing = {"seconds": round(time.perf_counter() - start, 6), "workers": args.workers}
    tree = rp.make_report(args.command, inputs, _config(args), status, result, error, timing)
    text = rp.dumps(tree) if args.format == "json-lines" else rp.human(tree)
    if args.out is not None:
        args.out.write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
