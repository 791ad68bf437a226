"""acceptance command: run one acceptance suite and tabulate the outcome."""

from __future__ import annotations

import argparse
import logging

from qml.errors import NumericError
from workbench.acceptance import Suite, run_suite
from workbench.commands.base import Subparsers, add_command, result
from workbench.config import ExperimentConfig
from workbench.persistence import ResultRecord, Table

logger = logging.getLogger(__name__)


def acceptance(config: ExperimentConfig) -> ResultRecord:
    suite = Suite(config.get_str("suite", "all"))
    quick = config.get_bool("quick")
    only = config.get_ints("only", [])
    results = run_suite(suite, quick=quick, seed=config.seed, only=only)
    failed = [r.number for r in results if not r.passed]
    logger.info("acceptance %s: %d/%d passed", suite.value, len(results) - len(failed),
                len(results))
    record = result(
        config,
        {"suite": suite.value, "quick": quick, "passed": len(results) - len(failed),
         "failed": failed, "total_seconds": sum(r.seconds for r in results)},
        tables={"criteria": Table.from_dicts([r.as_dict() for r in results])},
    )
    if failed and config.get_bool("strict"):
        raise NumericError(f"acceptance criteria failed: {', '.join(map(str, failed))}")
    return record


def register(subparsers: Subparsers, parents: list[argparse.ArgumentParser]) -> None:
    p = add_command(subparsers, "acceptance", acceptance, "run the acceptance criteria", parents)
    p.add_argument("--suite", default=None, choices=[s.value for s in Suite],
                   help="criteria group (default: all)")
    p.add_argument("--quick", action="store_const", const=True, default=None,
                   help="reduced sample counts")
    p.add_argument("--only", default=None, help="comma-separated criterion numbers")
    p.add_argument("--strict", action="store_const", const=True, default=None,
                   help="exit 3 when any criterion fails")
