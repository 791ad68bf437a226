"""Subcommand handlers; each module contributes its parsers through ``register``."""

from __future__ import annotations

import argparse

from workbench.commands import acceptance, blockenc, grover, kernel, learners, sim, transformer
from workbench.commands.base import Handler, Subparsers

_MODULES = (sim, blockenc, kernel, learners, grover, transformer, acceptance)


def register_all(subparsers: Subparsers, parents: list[argparse.ArgumentParser]) -> None:
    for module in _MODULES:
        module.register(subparsers, parents)


__all__ = ["Handler", "register_all"]
