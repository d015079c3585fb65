"""Subcommand implementations; each takes a RunContext and returns the files it wrote."""

from __future__ import annotations

from typing import Callable

from hd_transform.commands.derivatives_command import cmd_derivatives
from hd_transform.commands.fredholm_command import cmd_solve_fredholm
from hd_transform.commands.fuzzy_command import cmd_fuzzy_baseline
from hd_transform.commands.kernels_command import cmd_kernels
from hd_transform.commands.normalize_command import cmd_normalize
from hd_transform.commands.ode_command import cmd_solve_ode
from hd_transform.commands.recover_command import cmd_recover
from hd_transform.commands.run_context import RunContext

COMMAND_HANDLERS: dict[str, Callable[[RunContext], list]] = {
    "normalize": cmd_normalize,
    "kernels": cmd_kernels,
    "recover": cmd_recover,
    "derivatives": cmd_derivatives,
    "solve-ode": cmd_solve_ode,
    "solve-fredholm": cmd_solve_fredholm,
    "fuzzy-baseline": cmd_fuzzy_baseline,
}

__all__ = ["COMMAND_HANDLERS", "RunContext"]
