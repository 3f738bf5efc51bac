"""Command-line interface: JSON on stdout, diagnostics on stderr.

Exit codes: 0 success, 1 a verification or check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from .analysis import DEFAULT_SEED, DEFAULT_TOL, check_determinism, check_uniform_determinism, patterns_equal
from .dense import dense_column, dense_positive_branch
from .exceptions import CapExceededError, PatternError, PreconditionError
from .pattern import Pattern, load_pattern
from .signs import b_vector, p_vector
from .structure import (
    FastEvaluator,
    decompose_column_factors,
    epsilon_phase,
    physical_scale,
    structured_matrix,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # one-line diagnostics instead of argparse's usage banner
    def error(self, message):
        raise UsageError(message)


@dataclass
class CommandResult:
    exit_code: int
    stdout: str = ""
    stderr: str = ""


def _complex(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _matrix(mat) -> list:
    return [[_complex(z) for z in row] for row in np.asarray(mat)]


def _dump(doc) -> str:
    return json.dumps(doc, allow_nan=False) + "\n"


def _read(path) -> Pattern:
    try:
        return load_pattern(path)
    except OSError as exc:
        raise UsageError(f"cannot read pattern file {path!r}: {exc.strerror or exc}") from None
    except PatternError as exc:
        raise UsageError(f"invalid pattern file {path!r}: {exc}") from None


def _vertex_set(p: Pattern, spec: str, flag: str) -> tuple[int, ...]:
    named = {
        "inputs": p.inputs, "i": p.inputs,
        "aux": p.aux, "a": p.aux,
        "outputs": p.outputs, "o": p.outputs,
        "all": p.vertices, "v": p.vertices,
        "none": (),
    }
    key = spec.strip().lower()
    if key in named:
        return tuple(named[key])
    try:
        labels = tuple(int(x) for x in key.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"{flag}: expected a partition name or comma-separated labels, got {spec!r}") from None
    bad = [v for v in labels if not 1 <= v <= p.m]
    if bad:
        raise UsageError(f"{flag}: labels {bad} outside 1..{p.m}")
    return labels


def _full_matrix(p: Pattern, method: str, scaling: str, cap):
    if method == "dense":
        mat = dense_positive_branch(p, cap)
        return mat if scaling == "physical" else mat / physical_scale(p)
    return structured_matrix(p, method, scaling, cap)


# --------------------------------------------------------------------------
# subcommands


def cmd_matrix(args):
    p = _read(args.file)
    mat = _full_matrix(p, args.method, args.scaling, args.cap)
    doc = {"m": p.m, "n": p.n, "a": p.a, "method": args.method, "scaling": args.scaling, "matrix": _matrix(mat)}
    return EXIT_OK, doc


def cmd_verify(args):
    p = _read(args.file)
    mats = {
        "dense": dense_positive_branch(p, args.cap),
        "theorem1": structured_matrix(p, "theorem1", "physical", args.cap),
        "decomposition": structured_matrix(p, "decomposition", "physical", args.cap),
    }
    pairs = {}
    for x, y in (("dense", "theorem1"), ("dense", "decomposition"), ("theorem1", "decomposition")):
        pairs[f"{x}_vs_{y}"] = float(np.max(np.abs(mats[x] - mats[y])))
    worst = max(pairs.values())
    passed = worst <= args.tol
    doc = {"m": p.m, "n": p.n, "a": p.a, "tol": args.tol, "max_deviation": worst, "pairs": pairs, "passed": passed}
    return (EXIT_OK if passed else EXIT_FAIL), doc


def cmd_decompose(args):
    p = _read(args.file)
    if not 1 <= args.column <= 1 << p.n:
        raise UsageError(f"--column: {args.column} out of range 1..{1 << p.n}")
    bundle = decompose_column_factors(p, args.column)
    doc = {"m": p.m, "n": p.n, "a": p.a, "epsilon": _complex(epsilon_phase(p, args.column))}
    doc.update(bundle.to_dict())
    return EXIT_OK, doc


def cmd_signs(args):
    p = _read(args.file)
    first = _vertex_set(p, args.set, "--set")
    if args.function == "P":
        if args.against is not None:
            raise UsageError("--against is only valid with --function B")
        vec = p_vector(p, first)
        doc = {"function": "P", "set": list(first), "vector": vec.tolist()}
    else:
        if args.against is None:
            raise UsageError("--against is required with --function B")
        second = _vertex_set(p, args.against, "--against")
        if set(first) & set(second):
            raise UsageError("--set and --against must be disjoint")
        vec = b_vector(p, first, second)
        doc = {"function": "B", "set": list(first), "against": list(second), "vector": vec.tolist()}
    return EXIT_OK, doc


def cmd_determinism(args):
    p = _read(args.file)
    verdict = check_determinism(p, args.tol, args.cap)
    doc = {"tol": args.tol, **verdict.to_dict()}
    ok = verdict.deterministic
    if args.uniform:
        uniform = check_uniform_determinism(p, args.samples, args.seed, args.tol, args.cap)
        doc["uniform"] = uniform.to_dict()
        ok = uniform.uniform
    return (EXIT_OK if ok else EXIT_FAIL), doc


def cmd_equal(args):
    pa = _read(args.file_a)
    pb = _read(args.file_b)
    if pa.n != pb.n:
        raise UsageError(f"patterns have different input counts (n={pa.n} vs n={pb.n})")
    verdict = patterns_equal(pa, pb, args.tol, args.global_phase)
    doc = {
        "equal": verdict.equal,
        "max_deviation": verdict.max_deviation,
        "tol": args.tol,
        "up_to_global_phase": args.global_phase,
    }
    return (EXIT_OK if verdict.equal else EXIT_FAIL), doc


def cmd_entry(args):
    p = _read(args.file)
    size = 1 << p.n
    if not 1 <= args.row <= size:
        raise UsageError(f"--row: {args.row} out of range 1..{size}")
    if not 1 <= args.col <= size:
        raise UsageError(f"--col: {args.col} out of range 1..{size}")
    try:
        value = FastEvaluator(p).entry(args.row, args.col)
        path = "fast"
    except PreconditionError:
        value = dense_column(p, args.col, args.cap)[args.row - 1] / physical_scale(p)
        path = "dense"
    if args.scaling == "physical":
        value *= physical_scale(p)
    doc = {"row": args.row, "col": args.col, "scaling": args.scaling, "path": path, "value": _complex(value)}
    return EXIT_OK, doc


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="owpb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def cap_flag(sp):
        sp.add_argument("--cap", type=int, default=None, help="size cap (qubits for dense, log2 sign entries otherwise)")

    sp = sub.add_parser("matrix", help="positive-branch matrix")
    sp.add_argument("file")
    sp.add_argument("--method", choices=["dense", "theorem1", "decomposition"], default="decomposition")
    sp.add_argument("--scaling", choices=["raw", "physical"], default="physical")
    cap_flag(sp)
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("verify", help="cross-check dense, theorem1 and decomposition matrices")
    sp.add_argument("file")
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    cap_flag(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("decompose", help="sign factors of one column")
    sp.add_argument("file")
    sp.add_argument("--column", type=int, required=True)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("signs", help="P or B sign vector")
    sp.add_argument("file")
    sp.add_argument("--function", choices=["P", "B"], required=True)
    sp.add_argument("--set", required=True, help="inputs|aux|outputs|all|none or labels like 1,3")
    sp.add_argument("--against", default=None, help="second vertex set for B")
    sp.set_defaults(func=cmd_signs)

    sp = sub.add_parser("determinism", help="Gram-matrix determinism verdict")
    sp.add_argument("file")
    sp.add_argument("--uniform", action="store_true", help="also probe auxiliary angles")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    cap_flag(sp)
    sp.set_defaults(func=cmd_determinism)

    sp = sub.add_parser("equal", help="compare two patterns' physical matrices")
    sp.add_argument("file_a")
    sp.add_argument("file_b")
    sp.add_argument("--global-phase", action="store_true")
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.set_defaults(func=cmd_equal)

    sp = sub.add_parser("entry", help="single matrix entry, fast path when auxiliaries are unconnected")
    sp.add_argument("file")
    sp.add_argument("--row", type=int, required=True)
    sp.add_argument("--col", type=int, required=True)
    sp.add_argument("--scaling", choices=["raw", "physical"], default="raw")
    cap_flag(sp)
    sp.set_defaults(func=cmd_entry)
    return parser


def execute(argv) -> CommandResult:
    parser = build_parser()
    out, err = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return CommandResult(code, out.getvalue(), err.getvalue())
    except UsageError as exc:
        return CommandResult(EXIT_USAGE, "", f"owpb: error: {exc}\n")
    if getattr(args, "samples", 1) < 1:
        return CommandResult(EXIT_USAGE, "", "owpb: error: --samples must be at least 1\n")
    try:
        code, doc = args.func(args)
    except (UsageError, PatternError, CapExceededError, PreconditionError, ValueError) as exc:
        return CommandResult(EXIT_USAGE, "", f"owpb: error: {exc}\n")
    return CommandResult(code, _dump(doc), "")


def main(argv=None) -> int:
    result = execute(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
