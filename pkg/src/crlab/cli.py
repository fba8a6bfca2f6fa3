"""Command-line interface for CRLab."""

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from crlab.api.client import LabClient, standard_solution
from crlab.closedform import ClosedFormSolution, load_solution
from crlab.config import Config
from crlab.models import CheckResult, RunConfig, RunReport
from crlab.parsing import parse_expression
from crlab.quadrature import check_growth_range, check_integral_range, write_series_csv
from crlab.quantities import MUTATIONS, IdentityId
from crlab.utils import pretty_print_report

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key = value settings file (CRLAB_* keys)")
    parser.add_argument("--seed", type=int, help="Random seed (or set CRLAB_SEED)")
    parser.add_argument("--workers", type=int, help="Parallel workers (or set CRLAB_WORKERS)")
    parser.add_argument("--output", help="Write the JSON report here instead of stdout")
    parser.add_argument(
        "--record-timing", action="store_true", help="Record wall time in the report"
    )
    parser.add_argument("--progress", action="store_true", help="Show progress bars")


def _solution_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--params", help="Solution parameter file")
    parser.add_argument(
        "--n", type=int, default=2, help="Dimension of the standard solution without --params"
    )


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser.

    Returns:
        The parser with one subcommand per check.
    """
    parser = argparse.ArgumentParser(
        description="CRLab - Verification lab for the CR Yamabe equation on the Heisenberg group"
    )
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    # Verify command
    verify_parser = subparsers.add_parser("verify", help="Verify a symbolic identity")
    verify_parser.add_argument(
        "identity", help="Identity name, or 'all' for every identity"
    )
    verify_parser.add_argument(
        "--n", type=int, default=1, choices=[1, 2, 3], help="Complex dimension"
    )
    verify_parser.add_argument(
        "--m", default="formal", help="'formal' or a rational value such as 1/2"
    )
    verify_parser.add_argument(
        "--mutate", help="Perturbation that must fail: c1+1 … c6+1, drop-1 … drop-6, c5-printed"
    )
    _common(verify_parser)

    # Solution check command
    solution_parser = subparsers.add_parser(
        "solution-check", help="Exact residual and tensors of an extremal solution"
    )
    _solution_args(solution_parser)
    solution_parser.add_argument("--points", type=int, default=100, help="Random rational points")
    _common(solution_parser)

    # Growth command
    growth_parser = subparsers.add_parser(
        "growth", help="Growth exponent of the integral of e^{qf}|df|^r over Koranyi balls"
    )
    _solution_args(growth_parser)
    growth_parser.add_argument("--q", type=float, required=True)
    growth_parser.add_argument("--r", type=float, required=True)
    growth_parser.add_argument("--samples", type=int, help="Samples per radius")
    growth_parser.add_argument("--csv", help="Write the R,estimate,stderr series here")
    _common(growth_parser)

    # Integral hypotheses command
    th2_parser = subparsers.add_parser(
        "th2-check", help="Growth of the integral of u^q and the pointwise decay constant"
    )
    _solution_args(th2_parser)
    th2_parser.add_argument("--q", type=float, required=True)
    th2_parser.add_argument("--samples", type=int, help="Samples per radius")
    th2_parser.add_argument("--csv", help="Write the R,estimate,stderr series here")
    _common(th2_parser)

    # Coefficient bounds command
    coeffs_parser = subparsers.add_parser("coeffs", help="Lower bounds of c1, c4, c6 on samples")
    coeffs_parser.add_argument("--samples", type=int, help="Number of rational samples of m")
    _common(coeffs_parser)

    # Eval command
    eval_parser = subparsers.add_parser("eval", help="CR jets and residual of a given f")
    eval_parser.add_argument("--expr", required=True, help="f in x1..xn, y1..yn, t")
    eval_parser.add_argument("--at", required=True, help="Point x1,..,xn,y1,..,yn,t")
    _common(eval_parser)

    # Psi command
    psi_parser = subparsers.add_parser("psi", help="Completion of squares of psi")
    psi_parser.add_argument("--length", type=int, default=1, help="Length of D, E, G")
    psi_parser.add_argument("--m", default="formal", help="'formal' or a rational in [0, 1)")
    psi_parser.add_argument("--samples", type=int, help="Numeric samples")
    _common(psi_parser)

    # Tensors command
    tensors_parser = subparsers.add_parser("tensors", help="Torsion/Einstein contraction chain")
    tensors_parser.add_argument("--n", type=int, default=2, help="Complex dimension")
    tensors_parser.add_argument("--samples", type=int, help="Number of rational samples")
    _common(tensors_parser)

    return parser


def parse_m(text: str) -> Optional[Fraction]:
    """``None`` for ``formal``, otherwise the rational value.

    Raises:
        ValueError: If ``text`` is neither ``formal`` nor a rational.
    """
    if text == "formal":
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"--m must be 'formal' or a rational, got {text!r}") from e


def parse_point(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError as e:
        raise ValueError(f"--at must be comma-separated numbers, got {text!r}") from e


def load_settings(args: argparse.Namespace) -> Config:
    """Defaults < environment < config file < flags."""
    settings = Config.from_file(args.config) if args.config else Config()
    if args.seed is not None:
        settings.seed = args.seed
    if args.workers is not None:
        settings.workers = args.workers
    return settings


def run_config(args: argparse.Namespace, settings: Config) -> RunConfig:
    """Validate everything the dispatch needs.

    Raises:
        pydantic.ValidationError: For out-of-range settings (a ``ValueError``).
    """
    identities: List[str] = []
    if args.command == "verify":
        identities = [i.value for i in IdentityId] if args.identity == "all" else [args.identity]
    samples = getattr(args, "samples", None)
    return RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        m=getattr(args, "m", None),
        identities=identities,
        mutation=getattr(args, "mutate", None),
        params=getattr(args, "params", None),
        seed=settings.seed,
        samples=samples or settings.samples,
        quadrature_samples=samples or settings.quadrature_samples,
        r_grid=settings.r_grid,
        tolerance=settings.tolerance,
        workers=settings.workers,
        output=args.output,
    )


def _solution(args: argparse.Namespace) -> ClosedFormSolution:
    return load_solution(args.params) if args.params else standard_solution(args.n)


def _check_mutation(identity: str, mutation: str) -> None:
    if identity == "all":
        raise ValueError("--mutate needs a single identity")
    supported = MUTATIONS.get(IdentityId(identity), ())
    if mutation not in supported:
        choices = ", ".join(supported) or "none"
        raise ValueError(
            f"--mutate {mutation!r} is not supported for {identity} (choices: {choices})"
        )


def validate_args(args: argparse.Namespace) -> None:
    """Parse and range-check the arguments before anything is computed.

    Parsed values are stored back on ``args`` (``m_value``, ``solution``,
    ``point``) for the command to use.

    Raises:
        ValueError: For any argument the command cannot run with.
    """
    if args.command in ("verify", "psi"):
        args.m_value = parse_m(args.m)
    if args.command == "verify":
        if args.identity != "all":
            IdentityId(args.identity)
        if args.mutate:
            _check_mutation(args.identity, args.mutate)
    elif args.command in ("solution-check", "growth", "th2-check"):
        args.solution = _solution(args)
        if args.command == "growth":
            check_growth_range(args.solution.n, args.q, args.r)
        elif args.command == "th2-check":
            check_integral_range(args.solution.n, args.q)
    elif args.command == "eval":
        args.point = parse_point(args.at)
        if len(args.point) % 2 == 0:
            raise ValueError("--at needs 2n + 1 coordinates: x1..xn, y1..yn, t")
        parse_expression(args.expr, len(args.point) // 2)
    elif args.command == "psi":
        if args.length < 1:
            raise ValueError("--length must be positive")
        if args.m_value is not None and not 0 <= args.m_value < 1:
            raise ValueError(f"--m must lie in [0, 1), got {args.m}")


def run_verify(args: argparse.Namespace, client: LabClient, report: RunReport) -> None:
    m = args.m_value
    if args.identity == "all":
        verifications = client.verify_all(args.n, m, args.record_timing)
    else:
        verifications = [client.verify(args.identity, args.n, m, args.mutate, args.record_timing)]
    for verification in verifications:
        report.results.append(verification.to_check())
        if verification.note:
            report.results.append(
                CheckResult(
                    name=f"{verification.identity}:note", status="note", witness=verification.note
                )
            )
        report.details.append(verification.model_dump())


def run_solution_check(args: argparse.Namespace, client: LabClient, report: RunReport) -> None:
    check = client.solution_check(args.solution, args.points)
    report.results.append(
        CheckResult(
            name="residual",
            status="fail" if check.residual_failures else "pass",
            witness=check.residual_failures[0] if check.residual_failures else None,
        )
    )
    report.results.append(
        CheckResult(
            name="tensors",
            status="fail" if check.tensor_failures else "pass",
            witness=check.tensor_failures[0] if check.tensor_failures else None,
        )
    )
    if check.convention_finding:
        report.results.append(
            CheckResult(name="convention", status="note", witness=check.convention_finding)
        )
    if check.decay_constant is not None:
        report.results.append(
            CheckResult(name="decay-constant", status="note", value=check.decay_constant)
        )
    report.details.append(check.model_dump())


def run_growth(args: argparse.Namespace, client: LabClient, report: RunReport) -> None:
    growth = client.growth(args.solution, args.q, args.r, samples=args.samples)
    report.results.append(growth.to_check())
    report.details.append(growth.model_dump())
    if args.csv:
        write_series_csv(growth, args.csv)


def run_th2_check(args: argparse.Namespace, client: LabClient, report: RunReport) -> None:
    growth, decay = client.th2_check(args.solution, args.q, samples=args.samples)
    report.results.append(growth.to_check())
    report.results.append(CheckResult(name="decay-constant", status="note", value=decay))
    report.details.append(growth.model_dump())
    if args.csv:
        write_series_csv(growth, args.csv)


def run_coeffs(args: argparse.Namespace, client: LabClient, report: RunReport) -> None:
    bounds = client.coefficient_bounds(args.samples)
    report.results.append(
        CheckResult(
            name="coefficient-bounds",
            status="pass" if bounds.passed else "fail",
            witness=bounds.first_violation,
        )
    )
    for key, value in sorted(bounds.max_abs_sum.items()):
        report.results.append(
            CheckResult(name=f"max|c2|+|c3|+|c5|:{key}", status="note", value=value)
        )
    report.details.append(bounds.model_dump())


def run_eval(args: argparse.Namespace, client: LabClient, report: RunReport) -> None:
    evaluation = client.evaluate(args.expr, args.point)
    report.results.extend(evaluation.checks())
    report.details.append(evaluation.model_dump())


def run_psi(args: argparse.Namespace, client: LabClient, report: RunReport) -> None:
    m = args.m_value
    for mode in ("symbolic", "numeric"):
        psi = client.psi(mode, args.length, m, args.samples)
        witness = psi.symbolic.witness if psi.symbolic else None
        report.results.append(
            CheckResult(
                name=f"psi-{mode}",
                status="pass" if psi.passed else "fail",
                value=psi.max_relative_error,
                tolerance=None if mode == "symbolic" else psi.tolerance,
                witness=witness,
            )
        )
        report.details.append(psi.model_dump())
    if m is not None:
        psd = client.psd(m)
        report.results.append(
            CheckResult(
                name="psi-positive-definite",
                status="pass" if psd.passed else "fail",
                value=psd.min_eigenvalue,
            )
        )
        report.details.append(psd.model_dump())


def run_tensors(args: argparse.Namespace, client: LabClient, report: RunReport) -> None:
    tensors = client.tensors(args.n, args.samples)
    report.results.append(
        CheckResult(
            name="tensor-chain",
            status="pass" if tensors.passed else "fail",
            witness=tensors.first_failure,
        )
    )
    report.details.append(tensors.model_dump())


COMMANDS: Dict[str, Callable[[argparse.Namespace, LabClient, RunReport], None]] = {
    "verify": run_verify,
    "solution-check": run_solution_check,
    "growth": run_growth,
    "th2-check": run_th2_check,
    "coeffs": run_coeffs,
    "eval": run_eval,
    "psi": run_psi,
    "tensors": run_tensors,
}


def write_report(report: RunReport, output: Optional[str]) -> None:
    """JSON to ``output`` (summary on stdout) or to stdout (summary on stderr)."""
    text = report.model_dump_json(indent=2)
    if output:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n", encoding="utf-8")
        pretty_print_report(report, sys.stdout)
    else:
        print(text)
        pretty_print_report(report, sys.stderr)


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand.

    Args:
        argv: Arguments without the program name; defaults to ``sys.argv[1:]``.

    Returns:
        0 when every asserted check passes, 1 when one fails or a computation
        stops on bad data (the report still carries the witness), 2 on usage
        or configuration errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    if not args.command:
        print("Please specify a command. Use --help for usage information.", file=sys.stderr)
        return EXIT_USAGE

    start = time.perf_counter()
    try:
        settings = load_settings(args)
        run = run_config(args, settings)
        validate_args(args)
    except (ValueError, KeyError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    client = LabClient(settings, show_progress=args.progress)
    report = RunReport(command=run.command, inputs=run.inputs(), seed=run.seed)
    try:
        COMMANDS[args.command](args, client, report)
    except (ValueError, KeyError, ZeroDivisionError) as e:
        # a computation that cannot finish is a failed check, reported with its witness
        report.results.append(
            CheckResult(
                name=f"{args.command}:error",
                status="fail",
                witness=f"{type(e).__name__}: {e}",
            )
        )

    if args.record_timing:
        report.elapsed = round(time.perf_counter() - start, 3)
    try:
        write_report(report, args.output)
    except OSError as e:
        print(f"Error writing report: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if report.passed else EXIT_FAILED


def main() -> None:
    """Main entry point for the CLI."""
    sys.exit(run_command())


if __name__ == "__main__":
    main()
