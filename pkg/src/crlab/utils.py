"""Utility functions for CRLab."""

import sys
from typing import TextIO

import colorama
from colorama import Fore, Style

from crlab.models import CheckResult, RunReport

_COLORS = {"pass": Fore.GREEN, "fail": Fore.RED, "note": Fore.YELLOW}


def format_check(result: CheckResult) -> str:
    color = _COLORS.get(result.status, "")
    line = f"{color}[{result.status.upper():4}]{Style.RESET_ALL} {result.name}"
    if result.value is not None:
        line += f"  value={result.value:.6g}"
    if result.tolerance is not None:
        line += f"  tol={result.tolerance:.3g}"
    if result.witness:
        witness_color = Fore.RED if result.status == "fail" else ""
        line += f"\n       {witness_color}{result.witness}{Style.RESET_ALL}"
    return line


def pretty_print_report(report: RunReport, stream: TextIO = sys.stdout) -> None:
    """Print a run report in a nicely formatted way.

    Args:
        report: The report to summarize.
        stream: Where to write; the CLI uses stderr when the JSON goes to stdout.
    """
    colorama.init()

    header = f"crlab {report.command}"
    if report.seed is not None:
        header += f" (seed {report.seed})"
    print(f"\n{Fore.CYAN}{header}{Style.RESET_ALL}", file=stream)
    print(f"{Fore.CYAN}{'-' * 80}{Style.RESET_ALL}", file=stream)

    if not report.results:
        print(f"{Fore.YELLOW}No checks were run.{Style.RESET_ALL}", file=stream)
        return

    for result in report.results:
        print(format_check(result), file=stream)

    total = len(report.results)
    failed = sum(1 for result in report.results if not result.passed)
    if failed:
        print(f"\n{Fore.RED}{failed} of {total} checks failed{Style.RESET_ALL}", file=stream)
    else:
        print(f"\n{Fore.GREEN}All {total} checks passed{Style.RESET_ALL}", file=stream)
    if report.elapsed is not None:
        print(f"{Fore.YELLOW}elapsed {report.elapsed:.2f}s{Style.RESET_ALL}", file=stream)
