# cli.py
"""
Command line entry point: generate | match | regime | sweep | verify.

Results go to stdout (or --out, written atomically); failures print one JSON
error object on stderr and exit with the code listed under --help.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, List, NoReturn, Optional

from pydantic import ValidationError

from API.schemas import SampleDocument
from API.service import generate_document, match_document
from Core import constants
from Core.config import BRUTE_FORCE_LIMIT, DEFAULT_SEED, get_logger, settings_summary
from Core.errors import (
    ConfigurationError,
    DocumentError,
    GraphMatchError,
    ParameterDomainError,
    VerificationFailure,
)
from Core.files import atomic_write_text, read_text
from Experiments import verify
from Experiments.harness import SweepConfig, run_sweep
from Experiments.reporting import check_heatmap_axes, emit_csv, write_heatmap
from models import EdgeProb, ModelParams
from Recovery.thresholds import RegimeReport, regime_report, subsampling_probs

logger = get_logger("cli")


class JsonArgumentParser(argparse.ArgumentParser):
    """Usage errors are reported as JSON like every other failure."""

    def error(self, message: str) -> NoReturn:
        payload = {
            "schema_version": constants.SCHEMA_VERSION,
            "error": "UsageError",
            "exit_code": constants.EXIT_USAGE,
            "message": f"{self.prog}: {message}",
        }
        print(json.dumps(payload), file=sys.stderr)
        sys.exit(constants.EXIT_USAGE)


def _k_value(raw: str) -> Any:
    if raw == "auto":
        return raw
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"k must be 'auto' or a positive integer, got {raw!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"k must be positive, got {value}")
    return value


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        atomic_write_text(out, text)
        logger.info({"event": "written", "path": out})
    else:
        sys.stdout.write(text)


def _edge_prob(args: argparse.Namespace) -> EdgeProb:
    if args.parent_p is not None:
        return subsampling_probs(args.parent_p, args.s)
    if args.np11 is not None:
        p11 = args.np11 / args.n
    elif args.p11 is not None:
        p11 = args.p11
    else:
        raise ParameterDomainError("one of --p11, --np11 or --parent-p is required")
    if args.p00 is None:
        return EdgeProb.from_p11(p11, args.p10, args.p01)
    return EdgeProb(p11=p11, p10=args.p10, p01=args.p01, p00=args.p00)


def _model_params(args: argparse.Namespace) -> ModelParams:
    return ModelParams(n=args.n, p=_edge_prob(args), d=args.d, rho=args.rho)


# -----------------------------
# Subcommands
# -----------------------------
def cmd_generate(args: argparse.Namespace) -> int:
    params = _model_params(args)
    seed = DEFAULT_SEED if args.seed is None else args.seed
    doc = generate_document(params, seed, include_truth=not args.no_truth)
    _emit(_dump(doc.model_dump(mode="json")), args.out)
    return constants.EXIT_OK


def cmd_match(args: argparse.Namespace) -> int:
    raw = read_text(args.input)
    try:
        doc = SampleDocument.model_validate_json(raw)
    except ValidationError as e:
        raise DocumentError(f"{args.input}: not a sample document: {e.errors(include_url=False)}") from e
    estimate = match_document(doc, k=args.k, mode=args.mode, brute_force_limit=args.limit)
    _emit(_dump(estimate.model_dump(mode="json")), args.out)
    return constants.EXIT_OK


def _verdict_table(report: RegimeReport) -> str:
    rows = [
        ("information sum", f"{report.info_sum:.4f}"),
        ("log n", f"{report.log_n:.4f}"),
        ("achievable", str(report.achievable)),
        ("impossible", str(report.impossible)),
        ("corollary impossible", str(report.corollary_impossible)),
        ("k-core alone exact", str(report.kcore_exact)),
        ("sparsity condition", str(report.sparsity_ok)),
        ("positive correlation", str(report.positive_corr)),
    ]
    width = max(len(name) for name, _ in rows)
    return "\n".join(f"{name:<{width}}  {value}" for name, value in rows) + "\n"


def cmd_regime(args: argparse.Namespace) -> int:
    report = regime_report(
        _model_params(args),
        args.eps,
        margin=args.margin,
        sparsity_constant=args.sparsity_constant,
        check_sparsity=not args.no_sparsity_check,
    )
    _emit(report.model_dump_json(indent=2) + "\n", args.out)
    if not (args.json or args.quiet):
        sys.stderr.write(_verdict_table(report))
    return constants.EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.heatmap:
        check_heatmap_axes(args.x, args.y)
    raw = read_text(args.config)
    try:
        cfg = SweepConfig.model_validate_json(raw)
    except ValidationError as e:
        raise ConfigurationError(f"{args.config}: invalid sweep config: {e.errors(include_url=False)}") from e
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.trials is not None:
        overrides["trials"] = args.trials
    if overrides:
        try:
            cfg = SweepConfig.model_validate({**cfg.model_dump(), **overrides})
        except ValidationError as e:
            raise ConfigurationError(f"invalid --seed/--trials override: {e.errors(include_url=False)}") from e

    records = run_sweep(cfg, workers=args.workers)
    emit_csv(records, args.out)
    if args.heatmap:
        write_heatmap(records, args.heatmap, x=args.x, y=args.y)
    if not args.quiet:
        summary = {"schema_version": constants.SCHEMA_VERSION, "cells": len(records), "out": args.out}
        sys.stdout.write(json.dumps(summary) + "\n")
    return constants.EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    kwargs = {"seed": DEFAULT_SEED if args.seed is None else args.seed}
    if args.instances is not None:
        kwargs["instances"] = args.instances
    suites = {
        "t_star": verify.t_star_suite,
        "posterior": verify.posterior_suite,
        "h_set": verify.h_set_suite,
        "assignment": verify.assignment_suite,
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    results = [suites[name](**kwargs) for name in names]
    payload = {
        "schema_version": constants.SCHEMA_VERSION,
        "suites": [{**r.model_dump(), "passed": r.passed} for r in results],
    }
    sys.stdout.write(_dump(payload))
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise VerificationFailure(f"violations found in: {', '.join(failed)}")
    return constants.EXIT_OK


# -----------------------------
# Parser
# -----------------------------
def _add_model_flags(parser: argparse.ArgumentParser, require_n: bool = True) -> None:
    parser.add_argument("--n", type=int, required=require_n, help="number of vertices")
    edge = parser.add_mutually_exclusive_group()
    edge.add_argument("--p11", type=float, help="P(edge in both graphs)")
    edge.add_argument("--np11", type=float, help="n * p11, the mean common degree")
    edge.add_argument("--parent-p", type=float, help="subsampling model: parent edge probability")
    parser.add_argument("--p10", type=float, default=0.0)
    parser.add_argument("--p01", type=float, default=0.0)
    parser.add_argument("--p00", type=float, default=None, help="defaults to 1 - p11 - p10 - p01")
    parser.add_argument("--s", type=float, default=0.9, help="subsampling rate (with --parent-p)")
    parser.add_argument("--d", type=int, default=0, help="feature dimension")
    parser.add_argument("--rho", type=float, default=0.0, help="feature correlation")


def build_parser() -> JsonArgumentParser:
    settings = ", ".join(f"{k}={v}" for k, v in settings_summary().items())
    common = JsonArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"master seed (default {DEFAULT_SEED})")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--quiet", action="store_true", help="only errors on stderr")
    verbosity.add_argument("--json", action="store_true", help="machine-readable output only")

    parser = JsonArgumentParser(
        prog="gmatch",
        description="Seedless matching of correlated Gaussian-attributed Erdos-Renyi graphs.",
        epilog=f"{constants.EXIT_CODE_HELP}\n\nsettings: {settings}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = {"formatter_class": argparse.RawDescriptionHelpFormatter, "epilog": constants.EXIT_CODE_HELP}

    gen = sub.add_parser("generate", parents=[common], help="draw a sample pair", **fmt)
    _add_model_flags(gen)
    gen.add_argument("--out", required=True, help="sample JSON path")
    gen.add_argument("--no-truth", action="store_true", help="omit pi_star from the document")
    gen.set_defaults(func=cmd_generate)

    mat = sub.add_parser("match", parents=[common], help="recover the permutation of a sample", **fmt)
    mat.add_argument("--in", dest="input", required=True, help="sample JSON path")
    mat.add_argument("--out", help="estimate JSON path (default stdout)")
    mat.add_argument("--k", type=_k_value, default="auto", help="core threshold or 'auto'")
    mat.add_argument("--mode", choices=[constants.MODE_BRUTE, constants.MODE_ORACLE], default=constants.MODE_ORACLE)
    mat.add_argument("--limit", type=int, default=BRUTE_FORCE_LIMIT, help="largest n for brute mode")
    mat.set_defaults(func=cmd_match)

    reg = sub.add_parser("regime", parents=[common], help="evaluate the recovery thresholds", **fmt)
    _add_model_flags(reg)
    reg.add_argument("--eps", type=float, required=True)
    reg.add_argument("--margin", type=float, default=0.0, help="slack for the corollary condition")
    reg.add_argument("--sparsity-constant", type=float, default=1.0)
    reg.add_argument("--no-sparsity-check", action="store_true")
    reg.add_argument("--out", help="report JSON path (default stdout)")
    reg.set_defaults(func=cmd_regime)

    swp = sub.add_parser("sweep", parents=[common], help="Monte Carlo sweep over a parameter grid", **fmt)
    swp.add_argument("--config", required=True, help="sweep JSON config")
    swp.add_argument("--out", required=True, help="CSV path")
    swp.add_argument("--workers", type=int, default=None)
    swp.add_argument("--trials", type=int, default=None, help="override trials per cell")
    swp.add_argument("--heatmap", help="optional SVG phase diagram path")
    swp.add_argument("--x", default="d", help="heatmap x column")
    swp.add_argument("--y", default="p11", help="heatmap y column")
    swp.set_defaults(func=cmd_sweep)

    ver = sub.add_parser("verify", parents=[common], help="run the property suites", **fmt)
    ver.add_argument("--suite", choices=["all", "t_star", "posterior", "h_set", "assignment"], default="all")
    ver.add_argument("--instances", type=int, default=None, help="instances per suite (default: each suite's own count)")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.quiet or args.json:
        logging.getLogger("gmatch").setLevel(logging.ERROR)
    try:
        return args.func(args)
    except GraphMatchError as e:
        err = e
    except ValidationError as e:
        err = ParameterDomainError(str(e))
    except Exception as e:  # noqa: BLE001
        logger.exception({"event": "unexpected_error", "command": args.command})
        print(json.dumps({
            "schema_version": constants.SCHEMA_VERSION,
            "error": type(e).__name__,
            "exit_code": constants.EXIT_UNEXPECTED,
            "message": str(e),
        }), file=sys.stderr)
        return constants.EXIT_UNEXPECTED
    print(json.dumps(err.to_dict()), file=sys.stderr)
    return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
