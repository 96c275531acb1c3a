"""
Command-line front end.

    python -m app.cli verify theorem1|theorem2|zhao|wangcai|lemmas|steps|all [options]
    python -m app.cli explore q1|q2 [options]
    python -m app.cli bernoulli --mod-p P | --n N

The report goes to standard output, diagnostics to standard error.
"""
import argparse
import json
import logging
import os
import sys
from typing import List, Literal, Optional, Sequence

from pydantic import BaseModel, ConfigDict, ValidationError

from app import config
from app.config import Caps
from app.errors import CapExceeded, VerificationError
from app.services.bernoulli import bernoulli_exact, bernoulli_pm3_mod_p
from app.services.report import (
    EXIT_FAILED,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    FORMATS,
    emit_report,
    exit_code,
    summarize,
)
from app.services.suite import Grid, build_tasks, default_p_max, run_suite

logger = logging.getLogger(__name__)

VERIFY_SELECTIONS = ("theorem1", "theorem2", "zhao", "wangcai", "lemmas", "steps", "all")
EXPLORE_SELECTIONS = ("q1", "q2")
BERNOULLI_METHODS = ("exact-reduction", "lemma-half-sum", "both")


class RunConfig(BaseModel):
    """Validated invocation."""
    model_config = ConfigDict(frozen=True)

    command: Literal["verify", "explore", "bernoulli"]
    selection: Optional[str] = None
    grid: Grid = Grid()
    format: Literal["json-lines", "csv", "human"] = "json-lines"
    caps: Caps = Caps()
    workers: int = 1
    strict: bool = False
    timings: bool = False
    benchmark: bool = False
    mod_p: Optional[int] = None
    index: Optional[int] = None
    method: str = "exact-reduction"
    log_level: int = logging.INFO


def _default_workers() -> int:
    return max(1, min(4, os.cpu_count() or 1))


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=FORMATS, default=None,
                        help="json-lines (default), csv or human; bernoulli defaults to human")
    parser.add_argument("--strict", action="store_true",
                        help="exit 4 when any check was skipped over a cap")
    parser.add_argument("--visit-cap", type=int, default=config.VISIT_CAP)
    parser.add_argument("--modulus-cap", type=int, default=config.MODULUS_CAP)
    parser.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: min(4, cpu count))")
    parser.add_argument("--timings", action="store_true", help="emit elapsed_ms per record")
    parser.add_argument("--benchmark", action="store_true", help="emit term visit counts")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("-q", "--quiet", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonic-congruences",
        description="Verify alternating triple harmonic sum congruences modulo prime powers.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run congruence checks")
    verify.add_argument("selection", choices=VERIFY_SELECTIONS)
    verify.add_argument("--p-min", type=int, default=3)
    verify.add_argument("--p-max", type=int)
    verify.add_argument("--r", type=int)
    verify.add_argument("--r-max", type=int)
    verify.add_argument("--m-max", type=int)
    verify.add_argument("--reduced", action="store_true",
                        help="also run the reduced evaluators for theorem1")
    _add_common(verify)

    explore = commands.add_parser("explore", help="tabulate residues for the open questions")
    explore.add_argument("selection", choices=EXPLORE_SELECTIONS)
    explore.add_argument("--n-min", type=int)
    explore.add_argument("--n-max", type=int)
    explore.add_argument("--parts", type=int)
    explore.add_argument("--p-min", type=int, default=3)
    explore.add_argument("--p-max", type=int)
    explore.add_argument("--r", type=int)
    _add_common(explore)

    bern = commands.add_parser("bernoulli", help="print B_{p-3} mod p or an exact B_n")
    target = bern.add_mutually_exclusive_group(required=True)
    target.add_argument("--mod-p", type=int)
    target.add_argument("--n", type=int)
    bern.add_argument("--method", choices=BERNOULLI_METHODS, default="exact-reduction")
    _add_common(bern)

    return parser


def _check_ranges(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    for flag in ("r", "r_max", "m_max"):
        value = getattr(args, flag, None)
        if value is not None and value < 1:
            parser.error(f"--{flag.replace('_', '-')} must be >= 1")
    selection = getattr(args, "selection", None)
    p_min = getattr(args, "p_min", 3)
    p_max = getattr(args, "p_max", None)
    if p_max is None and selection is not None:
        p_max = default_p_max(selection, getattr(args, "r", None), getattr(args, "r_max", None))
    if p_max is not None and p_max < max(p_min, 3):
        parser.error(f"empty prime range for {selection}: --p-min {p_min} with p-max {p_max}")
    if selection == "q1":
        n_min = args.n_min if args.n_min is not None else config.Q1_N_MIN
        n_max = args.n_max if args.n_max is not None else config.Q1_N_MAX
        if n_max < max(n_min, 3):
            parser.error(f"empty range: n-min {n_min} with n-max {n_max}")
    if getattr(args, "parts", None) is not None and args.parts < 4:
        parser.error("--parts must be >= 4")
    if args.workers is not None and args.workers < 1:
        parser.error("--workers must be >= 1")
    if args.command == "bernoulli" and args.mod_p is not None and args.mod_p < 3:
        parser.error("--mod-p must be an odd prime")
    if args.command == "bernoulli" and args.n is not None and args.n < 0:
        parser.error("--n must be >= 0")


def parse_args(argv: Sequence[str]) -> RunConfig:
    """
    Parse and validate argv.

    Usage errors print to standard error and raise SystemExit(2).
    """
    parser = build_parser()
    args = parser.parse_args(list(argv))
    _check_ranges(parser, args)

    log_level = logging.INFO
    if args.verbose:
        log_level = logging.DEBUG
    elif args.quiet:
        log_level = logging.WARNING

    try:
        grid = Grid()
        if args.command in ("verify", "explore"):
            grid = Grid(
                p_min=args.p_min,
                p_max=args.p_max,
                r=args.r,
                r_max=getattr(args, "r_max", None),
                m_max=getattr(args, "m_max", None),
                n_min=getattr(args, "n_min", None),
                n_max=getattr(args, "n_max", None),
                parts=getattr(args, "parts", None),
                use_reduced=getattr(args, "reduced", False),
            )
        return RunConfig(
            command=args.command,
            selection=getattr(args, "selection", None),
            grid=grid,
            format=args.format or ("human" if args.command == "bernoulli" else "json-lines"),
            caps=Caps(modulus_cap=args.modulus_cap, visit_cap=args.visit_cap),
            workers=args.workers or _default_workers(),
            strict=args.strict,
            timings=args.timings,
            benchmark=args.benchmark,
            mod_p=getattr(args, "mod_p", None),
            index=getattr(args, "n", None) if args.command == "bernoulli" else None,
            method=getattr(args, "method", "exact-reduction"),
            log_level=log_level,
        )
    except ValidationError as e:
        parser.error(str(e))


def _run_bernoulli(run: RunConfig, stream) -> int:
    if run.index is not None:
        value = bernoulli_exact(run.index, run.caps)
        if run.format == "json-lines":
            stream.write(json.dumps({"n": run.index, "value": str(value)}, separators=(",", ":")) + "\n")
        else:
            stream.write(f"{value}\n")
        return EXIT_OK

    methods = ("exact-reduction", "lemma-half-sum") if run.method == "both" else (run.method,)
    results = [bernoulli_pm3_mod_p(run.mod_p, method, run.caps) for method in methods]
    for result in results:
        if run.format == "json-lines":
            row = {"p": result.p, "value": str(result.value.value), "method": result.method}
            stream.write(json.dumps(row, separators=(",", ":")) + "\n")
        elif run.method == "both":
            stream.write(f"{result.method}: {result.value.value}\n")
        else:
            stream.write(f"{result.value.value}\n")
    if len({result.value for result in results}) > 1:
        logger.error(f"Bernoulli methods disagree for p={run.mod_p}")
        return EXIT_FAILED
    return EXIT_OK


def run(run_config: RunConfig, stream=None) -> int:
    """Execute a parsed invocation and return the exit code."""
    stream = stream if stream is not None else sys.stdout

    try:
        if run_config.command == "bernoulli":
            return _run_bernoulli(run_config, stream)

        tasks = build_tasks(run_config.selection, run_config.grid)
        records = run_suite(tasks, workers=run_config.workers, caps=run_config.caps)
        emit_report(
            records,
            run_config.format,
            stream,
            timings=run_config.timings,
            visits=run_config.benchmark,
        )
    except OSError as e:
        logger.error(f"Failed to write report: {str(e)}")
        return EXIT_IO
    except CapExceeded as e:
        logger.error(f"{e}; nothing computed")
        return EXIT_FAILED
    except VerificationError as e:
        logger.error(str(e))
        return EXIT_USAGE

    summary = summarize(records)
    if summary:
        logger.info(summary)
    return exit_code(records, strict=run_config.strict)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        run_config = parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    logging.basicConfig(
        level=run_config.log_level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    return run(run_config)


if __name__ == "__main__":
    sys.exit(main())
