"""Command-line front end: analyze, emit-example, check-harmonic, version."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from . import __version__
from .cohomology import (
    FiberTooLarge,
    betti_numbers,
    check_condition,
    conjugation_symmetry,
    hodge_symmetry,
    hodge_table,
    serre_duality_check,
    sweep_trivial_pairs,
)
from .forms import MAX_FORMS_DIM, DimensionCapExceeded, wedge_closure_report
from .kahler import kaehler_obstruction
from .manifold import SolvManifoldSpec, example1, example2_n1, torus, validate
from .report import (
    RunReport,
    failed_checks,
    harmonic_rows,
    harmonic_rows_json,
    render_harmonic_text,
    render_latex,
    render_text,
    run_report_json,
)
from .specfile import SpecFileError, load_spec, save_spec, spec_to_dict

__all__ = ["AnalyzeOptions", "analyze", "emit_example", "main"]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_MALFORMED = 2
EXIT_TOO_LARGE = 3

MAX_COUNTING_DIM = 12


@dataclass
class AnalyzeOptions:
    skip_forms: bool = False
    force_float: bool = False
    max_dim: int = MAX_FORMS_DIM


def analyze(source: Union[str, Path, SolvManifoldSpec], options: Optional[AnalyzeOptions] = None) -> RunReport:
    """Run the full pipeline on a manifold description (path or in-memory)."""
    options = options or AnalyzeOptions()
    spec = source if isinstance(source, SolvManifoldSpec) else load_spec(source)
    if spec.complex_dim > MAX_COUNTING_DIM:
        raise DimensionCapExceeded(
            f"dimension {spec.complex_dim} exceeds the counting cap {MAX_COUNTING_DIM}"
        )
    timings: dict[str, float] = {}

    def clock(stage, function, *args, **kwargs):
        start = time.perf_counter()
        result = function(*args, **kwargs)
        timings[stage] = (time.perf_counter() - start) * 1000.0
        return result

    validation = clock("validate", validate, spec)
    sweep = clock("pairs", sweep_trivial_pairs, spec, options.force_float)
    table = clock("hodge", hodge_table, spec, sweep)
    condition = clock("condition", check_condition, spec, sweep)
    symmetry = clock(
        "symmetry",
        lambda: hodge_symmetry(table) and conjugation_symmetry(spec, sweep),
    )
    serre = serre_duality_check(table)
    betti = clock("betti", betti_numbers, spec, sweep, condition)
    wedge_closure = None
    harmonic = None
    if not options.skip_forms:
        if spec.complex_dim > options.max_dim:
            raise DimensionCapExceeded(
                f"dimension {spec.complex_dim} exceeds the forms cap {options.max_dim};"
                " rerun with --skip-forms or raise --max-dim"
            )
        start = time.perf_counter()
        wedge_closure = wedge_closure_report(spec, options.max_dim).closed
        rows = harmonic_rows(spec, sweep)
        harmonic = all(r.dbar_closed and r.co_closed for r in rows)
        if condition.holds:
            harmonic = harmonic and all(r.d_harmonic for r in rows)
        timings["forms"] = (time.perf_counter() - start) * 1000.0
    kaehler = clock("kaehler", kaehler_obstruction, spec)
    return RunReport(
        name=spec.name,
        mode="exact" if sweep.certified else "float_fallback",
        validation=validation,
        hodge=table,
        betti=betti,
        condition=condition,
        symmetry=symmetry,
        serre=serre,
        wedge_closure=wedge_closure,
        harmonic_certified=harmonic,
        kaehler=kaehler,
        timings_ms=timings,
    )


def emit_example(name: str, params: dict, out_path: Optional[Union[str, Path]]) -> SolvManifoldSpec:
    """Build a named example and write it in the file schema."""
    if name == "torus":
        spec = torus(params.get("n", 1), params.get("m", 1))
    elif name == "example1":
        spec = example1(params.get("a", [1]), params.get("t_mode", "symbolic"))
    elif name == "example2_n1":
        spec = example2_n1(params.get("A", [[2, 1], [1, 1]]))
    else:
        raise ValueError(f"unknown builder {name!r}")
    if out_path is not None:
        save_spec(spec, out_path)
    return spec


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solvhodge",
        description="Exact Dolbeault cohomology and Hodge certificates for "
        "complex solvmanifolds with diagonal semisimple action.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="run the full pipeline on a manifold file")
    p_analyze.add_argument("file", help="manifold description file (JSON)")
    p_analyze.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p_analyze.add_argument(
        "--skip-forms", action="store_true",
        help="counting-only fast path: skip harmonicity and wedge-closure certification",
    )
    p_analyze.add_argument(
        "--float", dest="force_float", action="store_true",
        help="force the float fallback for lattice triviality (mode flag set in the report)",
    )
    p_analyze.add_argument(
        "--max-dim", type=int, default=MAX_FORMS_DIM,
        help=f"cap on n+m for forms-level certification (default {MAX_FORMS_DIM})",
    )

    p_emit = sub.add_parser("emit-example", help="write a built-in example as a manifold file")
    p_emit.add_argument("name", choices=("torus", "example1", "example2_n1"))
    p_emit.add_argument("--n", type=int, default=1, help="torus: base dimension")
    p_emit.add_argument("--m", type=int, default=1, help="torus: fiber dimension")
    p_emit.add_argument(
        "--a", type=int, nargs="+", default=[1],
        help="example1: nonzero integer exponents, one per character pair",
    )
    p_emit.add_argument(
        "--t-mode", default="symbolic",
        help='example1: "symbolic" or "rational_pi(r,s)"',
    )
    p_emit.add_argument(
        "--matrix", type=int, nargs=4, metavar=("A11", "A12", "A21", "A22"),
        default=[2, 1, 1, 1], help="example2_n1: row-major entries of the integer matrix",
    )
    p_emit.add_argument("--out", help="output path (stdout when omitted)")

    p_harm = sub.add_parser("check-harmonic", help="per-basis-element harmonicity flags")
    p_harm.add_argument("file", help="manifold description file (JSON)")
    p_harm.add_argument("--format", choices=("text", "json"), default="text")
    p_harm.add_argument("--max-dim", type=int, default=MAX_FORMS_DIM)

    p_version = sub.add_parser("version", help="print the package version")
    p_version.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _cmd_analyze(args) -> int:
    options = AnalyzeOptions(
        skip_forms=args.skip_forms, force_float=args.force_float, max_dim=args.max_dim
    )
    report = analyze(args.file, options)
    if args.format == "json":
        print(json.dumps(run_report_json(report), indent=2))
    elif args.format == "latex":
        print(render_latex(report), end="")
    else:
        print(render_text(report), end="")
    return EXIT_CHECK_FAILED if failed_checks(report) else EXIT_OK


def _cmd_emit(args) -> int:
    params = {
        "n": args.n,
        "m": args.m,
        "a": args.a,
        "t_mode": args.t_mode,
        "A": [args.matrix[:2], args.matrix[2:]],
    }
    try:
        spec = emit_example(args.name, params, args.out)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    if args.out is None:
        print(json.dumps(spec_to_dict(spec), indent=2))
    return EXIT_OK


def _cmd_check_harmonic(args) -> int:
    spec = load_spec(args.file)
    if spec.complex_dim > args.max_dim:
        raise DimensionCapExceeded(
            f"dimension {spec.complex_dim} exceeds the forms cap {args.max_dim}"
        )
    rows = harmonic_rows(spec)
    if args.format == "json":
        print(json.dumps(harmonic_rows_json(spec.name, rows), indent=2))
    else:
        print(render_harmonic_text(spec.name, rows), end="")
    all_ok = all(r.dbar_closed and r.co_closed for r in rows)
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def _cmd_version(args) -> int:
    if args.format == "json":
        print(json.dumps({"schema_version": 1, "name": "solvhodge", "version": __version__}))
    else:
        print(f"solvhodge {__version__}")
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            code = _cmd_analyze(args)
        elif args.command == "emit-example":
            code = _cmd_emit(args)
        elif args.command == "check-harmonic":
            code = _cmd_check_harmonic(args)
        else:
            code = _cmd_version(args)
    except SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_MALFORMED
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_MALFORMED
    except (FiberTooLarge, DimensionCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_TOO_LARGE
    if argv is None:
        sys.exit(code)
    return code
