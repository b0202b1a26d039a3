import argparse
import sys
from typing import Any

from genergy.cli.output import emit
from genergy.models.cli import CliConfig, EnumerateOutput, OutputFormat
from genergy.services.enumerate import connected_graph6


def register(subparsers: Any, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "enumerate",
        parents=parents,
        help="List one canonical graph6 line per connected graph of order n",
    )
    parser.add_argument("--n", type=int, help="Order")
    parser.add_argument("--jobs", type=int, help="Worker processes")
    parser.set_defaults(run=run, config_fields=lambda args: {})


def run(config: CliConfig) -> int:
    """Write the sorted canonical forms and report how many there are.
    The count goes to stdout when the graphs go to --out, to stderr otherwise.
    """
    forms = connected_graph6(config.n, config.jobs)
    if config.fmt is OutputFormat.json:
        emit(EnumerateOutput(n=config.n, count=len(forms), graphs=list(forms)).model_dump_json(indent=2) + "\n", config.out)
        return 0

    emit("".join(f"{form}\n" for form in forms), config.out)
    stream = sys.stdout if config.out is not None else sys.stderr
    print(f"{len(forms)} connected graphs of order {config.n}", file=stream)
    return 0
