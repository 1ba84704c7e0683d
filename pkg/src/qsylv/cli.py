"""Command-line interface.

Subcommands:

- ``solve``: solve an equation from matrix files, by either or both routes;
- ``check``: evaluate consistency criteria only;
- ``mpinv``: Moore-Penrose inverse of a matrix file;
- ``det``: anchored row/column determinant or Hermitian determinant;
- ``selftest``: run the golden worked examples and print a pass/fail table;
- ``gen``: deterministically generate a random instance (with planted
  solution, or perturbed to be inconsistent).

Exit codes: 0 success (and, for solve/check, the instance is consistent);
2 the instance failed its consistency criteria; 1 numeric failure;
64 usage error; 66 unreadable or unparsable input file.
"""

from __future__ import annotations

import argparse
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional

from . import jsonio
from .errors import (
    DimensionMismatch,
    Inconsistent,
    InvalidSize,
    ParseError,
    QsylvError,
)
from .golden import selftest
from .mpinv import mp_cramer, mp_oracle
from .qmatrix import QMatrix
from .quaternion import Quaternion
from .rcdet import cdet, hdet, rdet
from .sampling import SplitMix64, make_consistent_instance, perturb_inconsistent
from .solvers import EquationKind, GenSylvesterProblem, check_consistency, solve

_KIND_NAMES = tuple(kind.cli_name for kind in EquationKind)
_SLOT_NAMES = ("a1", "b1", "a2", "b2")


@dataclass(frozen=True)
class Config:
    """Runtime knobs shared by the subcommands."""

    max_det_dim: int = 7
    tol: float = 1e-8
    seed: int = 0
    force: bool = False


class _Exit(Exception):
    """Internal: unwind to main() with a message and exit code."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors by default, which would
    # collide with "2 = inconsistent instance"; route usage errors to 64.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


@contextmanager
def _det_dim_env(value: Optional[int]):
    if value is None:
        yield
        return
    old = os.environ.get("QSYLV_MAX_DET_DIM")
    os.environ["QSYLV_MAX_DET_DIM"] = str(value)
    try:
        yield
    finally:
        if old is None:
            os.environ.pop("QSYLV_MAX_DET_DIM", None)
        else:
            os.environ["QSYLV_MAX_DET_DIM"] = old


def _load_matrix(path: str) -> QMatrix:
    data = jsonio.read_json(path)
    try:
        return QMatrix.from_json(data)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _emit(doc, out: Optional[str]) -> None:
    text = jsonio.dumps(doc) + "\n"
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise _Exit(66, f"cannot write {out}: {exc}")


def _build_problem(args) -> GenSylvesterProblem:
    kind = EquationKind.from_cli_name(args.kind)
    slots = {}
    for name in _SLOT_NAMES:
        path = getattr(args, name)
        if path is not None:
            slots[name] = _load_matrix(path)
    c = _load_matrix(args.c)
    try:
        return GenSylvesterProblem.build(kind, c=c, **slots)
    except (DimensionMismatch, InvalidSize) as exc:
        raise _Exit(64, str(exc))


def _add_problem_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kind", required=True, choices=_KIND_NAMES,
                        help="equation kind")
    for name in _SLOT_NAMES:
        parser.add_argument(f"--{name}", metavar="FILE",
                            help=f"matrix file for coefficient {name}")
    parser.add_argument("--c", metavar="FILE", required=True,
                        help="matrix file for the right-hand side")
    parser.add_argument("--tol", type=float, default=Config.tol,
                        help="consistency tolerance (scaled by 1 + |c|)")
    parser.add_argument("--max-det-dim", type=int, default=None,
                        help="largest determinant expansion dimension")


def _solution_doc(sol, report) -> dict:
    return {
        "x1": sol.x1.to_json() if sol is not None else None,
        "x2": sol.x2.to_json() if sol is not None and sol.x2 is not None else None,
        "report": report.to_json_dict(),
    }


def _cmd_solve(args) -> int:
    with _det_dim_env(args.max_det_dim):
        problem = _build_problem(args)
        try:
            sol, report = solve(
                problem,
                method=args.method,
                tol=args.tol,
                force=args.force,
                form=args.form,
            )
        except Inconsistent as exc:
            _emit(_solution_doc(None, exc.report), args.out)
            return 2
    _emit(_solution_doc(sol, report), args.out)
    return 0 if report.consistent else 2


def _cmd_check(args) -> int:
    with _det_dim_env(args.max_det_dim):
        problem = _build_problem(args)
        report = check_consistency(problem, tol=args.tol)
    _emit({"report": report.to_json_dict()}, args.out)
    return 0 if report.consistent else 2


def _cmd_mpinv(args) -> int:
    with _det_dim_env(args.max_det_dim):
        mat = _load_matrix(getattr(args, "in"))
        if args.method == "oracle":
            result = mp_oracle(mat)
            doc = {"pinv": result.pinv.to_json(), "rank": result.rank_used,
                   "method": result.method}
        elif args.method == "cramer":
            result = mp_cramer(mat, side=args.side)
            doc = {"pinv": result.pinv.to_json(), "rank": result.rank_used,
                   "method": result.method}
        else:
            det_result = mp_cramer(mat, side=args.side)
            oracle_result = mp_oracle(mat)
            diff = (det_result.pinv - oracle_result.pinv).fro_norm()
            doc = {"pinv": det_result.pinv.to_json(), "rank": det_result.rank_used,
                   "method": det_result.method, "agreement": diff}
    _emit(doc, args.out)
    return 0


def _cmd_det(args) -> int:
    with _det_dim_env(args.max_det_dim):
        mat = _load_matrix(getattr(args, "in"))
        if args.kind == "hdet":
            value = Quaternion(hdet(mat, verify=args.verify))
        elif args.kind == "rdet":
            value = rdet(mat, args.index)
        else:
            value = cdet(mat, args.index)
    _emit(value.to_json(), args.out)
    return 0


def _cmd_selftest(args) -> int:
    rows = selftest()
    width = max(len(name) for name, _, _ in rows)
    failures = 0
    for name, ok, detail in rows:
        verdict = "PASS" if ok else "FAIL"
        failures += 0 if ok else 1
        sys.stdout.write(f"{verdict}  {name.ljust(width)}  {detail}\n")
    sys.stdout.write(f"{len(rows) - failures}/{len(rows)} golden checks passed\n")
    return 0 if failures == 0 else 1


def _cmd_gen(args) -> int:
    kind = EquationKind.from_cli_name(args.kind)
    rng = SplitMix64(args.seed)
    try:
        problem, planted = make_consistent_instance(rng, kind, max_dim=args.max_dim)
        if args.inconsistent:
            problem = perturb_inconsistent(rng, problem)
            planted = None
    except InvalidSize as exc:
        raise _Exit(1, str(exc))
    matrices = {}
    for name in kind.required_slots:
        if name == "c":
            continue
        matrices[name] = getattr(problem, name).to_json()
    matrices["c"] = problem.c.to_json()
    doc = {
        "kind": kind.cli_name,
        "seed": args.seed,
        "consistent_by_construction": planted is not None,
        "matrices": matrices,
        "planted": None if planted is None else {
            "x1": planted.x1.to_json(),
            "x2": planted.x2.to_json() if planted.x2 is not None else None,
        },
    }
    if args.out_dir is not None:
        try:
            os.makedirs(args.out_dir, exist_ok=True)
            for name, payload in matrices.items():
                jsonio.write_json(os.path.join(args.out_dir, f"{name}.json"), payload)
            jsonio.write_json(os.path.join(args.out_dir, "instance.json"), doc)
        except OSError as exc:
            raise _Exit(66, f"cannot write into {args.out_dir}: {exc}")
        return 0
    _emit(doc, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qsylv",
                     description="quaternion two-sided matrix equation toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_solve = sub.add_parser("solve", help="solve an equation from matrix files")
    _add_problem_args(p_solve)
    p_solve.add_argument("--method", choices=("direct", "cramer", "both"),
                         default="both", help="solution route")
    p_solve.add_argument("--form", choices=("column", "row"), default="column",
                         help="nesting order of the determinantal route")
    p_solve.add_argument("--force", action="store_true",
                         help="compute a candidate even if inconsistent")
    p_solve.add_argument("--out", metavar="FILE", help="write JSON here instead of stdout")
    p_solve.set_defaults(func=_cmd_solve)

    p_check = sub.add_parser("check", help="evaluate consistency criteria only")
    _add_problem_args(p_check)
    p_check.add_argument("--out", metavar="FILE")
    p_check.set_defaults(func=_cmd_check)

    p_mpinv = sub.add_parser("mpinv", help="Moore-Penrose inverse of a matrix file")
    p_mpinv.add_argument("--in", metavar="FILE", required=True, help="input matrix file")
    p_mpinv.add_argument("--method", choices=("cramer", "oracle", "both"),
                         default="both")
    p_mpinv.add_argument("--side", choices=("left", "right"), default=None,
                         help="which Gram matrix the determinantal route uses")
    p_mpinv.add_argument("--max-det-dim", type=int, default=None)
    p_mpinv.add_argument("--out", metavar="FILE")
    p_mpinv.set_defaults(func=_cmd_mpinv)

    p_det = sub.add_parser("det", help="noncommutative determinant of a square matrix")
    p_det.add_argument("--kind", choices=("rdet", "cdet", "hdet"), required=True)
    p_det.add_argument("--index", type=int, default=1,
                       help="anchor row/column (1-based; ignored for hdet)")
    p_det.add_argument("--verify", action="store_true",
                       help="for hdet: expand all anchors and cross-check")
    p_det.add_argument("--in", metavar="FILE", required=True)
    p_det.add_argument("--max-det-dim", type=int, default=None)
    p_det.add_argument("--out", metavar="FILE")
    p_det.set_defaults(func=_cmd_det)

    p_self = sub.add_parser("selftest", help="run the golden worked examples")
    p_self.set_defaults(func=_cmd_selftest)

    p_gen = sub.add_parser("gen", help="generate a deterministic random instance")
    p_gen.add_argument("--kind", choices=_KIND_NAMES, required=True)
    p_gen.add_argument("--seed", type=int, default=Config.seed)
    p_gen.add_argument("--max-dim", type=int, default=3,
                       help="largest matrix dimension to draw")
    p_gen.add_argument("--inconsistent", action="store_true",
                       help="perturb the right-hand side out of the solvable set")
    p_gen.add_argument("--out", metavar="FILE")
    p_gen.add_argument("--out-dir", metavar="DIR",
                       help="write one matrix file per coefficient plus instance.json")
    p_gen.set_defaults(func=_cmd_gen)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        sys.stderr.write(f"qsylv: error: {exc}\n")
        return exc.code
    except ParseError as exc:
        sys.stderr.write(f"qsylv: error: {exc}\n")
        return 66
    except (DimensionMismatch, InvalidSize) as exc:
        sys.stderr.write(f"qsylv: error: {exc}\n")
        return 64
    except Inconsistent as exc:
        sys.stderr.write(f"qsylv: error: {exc}\n")
        return 2
    except QsylvError as exc:
        sys.stderr.write(f"qsylv: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
