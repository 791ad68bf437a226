"""
Workbench entry point.

Responsibilities:
- Parse CLI arguments (common flags plus one subparser per command)
- Merge the --config file under explicit flags into an ExperimentConfig
- Configure logging
- Run the selected handler under the requested simulator limits
- Route the result record and map failures onto exit codes
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any, NoReturn

import numpy as np

from qml.config import use_config
from qml.errors import ArgumentError, NumericError, ValidationError
from workbench import __version__
from workbench.commands import register_all
from workbench.config import ExperimentConfig, load_config_file
from workbench.persistence import write_outputs

logger = logging.getLogger("workbench")

EXIT_OK = 0
EXIT_ARGUMENT = 2
EXIT_NUMERIC = 3
EXIT_USAGE = 64

# Flags that map onto ExperimentConfig fields rather than command parameters
_COMMON = {"seed", "out", "mode", "log_level", "config", "max_qubits", "compose_limit",
           "command", "handler"}


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 64 instead of argparse's 2."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed", type=int, default=None,
        help="master seed for every random stream (default: $QMLWB_SEED or 0)",
    )
    common.add_argument(
        "--out", type=Path, default=None,
        help="result path: .json record, or .csv for the first table (default: stdout)",
    )
    common.add_argument(
        "--mode", type=str, default=None, choices=["exact", "poly"],
        help="elementwise-function mode for block-encoding commands",
    )
    common.add_argument(
        "--log-level", type=str, default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging verbosity (default: INFO)",
    )
    common.add_argument(
        "--config", type=Path, default=None,
        help="key=value parameter file; explicit flags win",
    )
    common.add_argument(
        "--max-qubits", type=int, default=None,
        help="simulator register cap (default: 14)",
    )
    common.add_argument(
        "--compose-limit", type=int, default=None,
        help="qubits above which composed unitaries are re-dilated (default: 10)",
    )
    return common


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="qml-workbench",
        description="Quantum machine-learning workbench: simulators, encodings and learners",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    register_all(subparsers, [_common_flags()])
    return parser


def _parse_args(argv: Sequence[str] | None) -> argparse.Namespace:
    return _build_parser().parse_args(argv)


def _build_config(args: argparse.Namespace) -> ExperimentConfig:
    """Build config from CLI args (override config file, env and defaults)."""
    params: dict[str, Any] = {}
    if args.config is not None:
        params.update(load_config_file(args.config))
    params.update({k: v for k, v in vars(args).items() if k not in _COMMON and v is not None})

    kwargs: dict[str, Any] = {"subcommand": args.command, "params": params}
    file_seed = params.pop("seed", None)
    if args.seed is not None:
        kwargs["seed"] = args.seed
    elif file_seed is not None:
        try:
            kwargs["seed"] = int(file_seed)
        except ValueError as exc:
            raise ArgumentError(f"seed must be an integer, got {file_seed!r}") from exc
    if args.out is not None:
        kwargs["out"] = args.out
    mode = args.mode if args.mode is not None else params.pop("mode", None)
    if mode is not None:
        kwargs["mode"] = str(mode)
    if args.log_level is not None:
        kwargs["log_level"] = args.log_level
    if args.max_qubits is not None:
        kwargs["max_qubits"] = args.max_qubits
    if args.compose_limit is not None:
        kwargs["compose_qubit_limit"] = args.compose_limit
    return ExperimentConfig(**kwargs)


def _setup_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s  %(levelname)-8s  %(name)-20s  %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
    )


def run(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code."""
    try:
        args = _parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        config = _build_config(args)
    except (ArgumentError, ValidationError) as exc:
        _setup_logging("INFO")
        logger.error("%s", exc)
        return EXIT_ARGUMENT

    _setup_logging(config.log_level)
    logger.info("qml-workbench %s starting  |  %s", __version__, config.summary())

    try:
        with use_config(config.sim_config()):
            record = args.handler(config)
        written = write_outputs(record, config.out, config.subcommand, config.out_dir)
    except (ArgumentError, ValidationError) as exc:
        logger.error("%s", exc)
        return EXIT_ARGUMENT
    except NumericError as exc:
        logger.error("%s", exc)
        return EXIT_NUMERIC
    except np.linalg.LinAlgError as exc:
        logger.error("Linear algebra failure: %s", exc)
        return EXIT_NUMERIC
    except ValueError as exc:
        logger.error("Invalid input: %s", exc)
        return EXIT_ARGUMENT
    except OSError as exc:
        logger.error("I/O failure: %s", exc)
        return EXIT_ARGUMENT
    except Exception:
        logger.exception("Unexpected failure in %s", config.subcommand)
        return EXIT_NUMERIC

    if written is not None:
        logger.info("Result written to %s", written)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
