"""Shared plumbing for command handlers."""

from __future__ import annotations

import argparse
from collections.abc import Callable, Mapping
from typing import Any

from workbench.config import ExperimentConfig
from workbench.persistence import ResultRecord, Table

type Handler = Callable[[ExperimentConfig], ResultRecord]
type Subparsers = argparse._SubParsersAction[argparse.ArgumentParser]


def add_command(
    subparsers: Subparsers,
    name: str,
    handler: Handler,
    help_text: str,
    parents: list[argparse.ArgumentParser],
) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(name, help=help_text, description=help_text, parents=parents)
    parser.set_defaults(handler=handler)
    return parser


def result(
    config: ExperimentConfig,
    metrics: Mapping[str, Any],
    artifacts: Mapping[str, Any] | None = None,
    tables: Mapping[str, Table] | None = None,
) -> ResultRecord:
    return ResultRecord(config.to_dict(), dict(metrics), dict(artifacts or {}), dict(tables or {}))
