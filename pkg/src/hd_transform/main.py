"""
hd-transform entrypoint.

CLI:
  hd-transform normalize        -> normalization iterates n_i and 1~_i
  hd-transform kernels          -> expected and normalized kernel slices
  hd-transform recover          -> forward/inverse transform of a named function, D or l sweep
  hd-transform derivatives      -> derivatives of one step and one sigmoid component
  hd-transform solve-ode        -> linear ODE by collocation and ridge regression
  hd-transform solve-fredholm   -> Fredholm equation of the second kind
  hd-transform fuzzy-baseline   -> fuzzy transform next to the hyperdimensional transform

Exit codes: 0 success, 2 configuration or input error, 3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import logging
from pathlib import Path
from typing import Any, Optional

from hd_transform.config import (
    ConfigError,
    RunConfig,
    load_run_config,
    package_version,
    parse_assignments,
)
from hd_transform.core.config._validation import COMMANDS
from hd_transform.core.errors import NumericalError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

_HELP = {
    "normalize": "Iterate the normalization function and write every iterate",
    "kernels": "Write expected and normalized kernel slices for fixed x'",
    "recover": "Transform a named function and back, sweeping D or the length scale",
    "derivatives": "Derivatives of one unnormalized step and sigmoid component",
    "solve-ode": "Solve a linear ODE (preset or custom) by ridge regression",
    "solve-fredholm": "Solve a Fredholm equation of the second kind",
    "fuzzy-baseline": "Fuzzy transform next to the hyperdimensional transform",
}


def _configure_logging(cfg: Optional[dict] = None) -> None:
    """
    Single log level for the whole run.
    Uses cfg["log_level"] if provided, else HDT_LOG_LEVEL env, else INFO.
    """
    from hd_transform.core.log_config import apply_log_level

    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    apply_log_level(cfg)


logger = logging.getLogger(__name__)


def get_version_string() -> str:
    return package_version()


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, metavar="PATH",
                   help="KEY=VALUE file, or a CSV written by an earlier run")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="Override one setting (repeatable)")
    p.add_argument("--dim", type=str, help="Dimensionality D")
    p.add_argument("--seed", type=str, help="Encoder seed")
    p.add_argument("--lambda", dest="length_scale", type=str, help="Length scale")
    p.add_argument("--out", type=str, metavar="DIR", help="Output directory")
    p.add_argument("--svg", action="store_true", default=None, help="Also write SVG plots")
    p.add_argument("--threads", type=str, help="Worker threads (0 = one per CPU)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hd-transform")
    p.add_argument("--version", action="version", version=get_version_string())

    sub = p.add_subparsers(dest="cmd", required=True)
    for name in COMMANDS:
        _add_run_options(sub.add_parser(name, help=_HELP[name]))
    return p


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    out: dict[str, Any] = parse_assignments(args.set)
    for key, value in (
        ("dim", args.dim),
        ("seed", args.seed),
        ("lambda", args.length_scale),
        ("output", args.out),
        ("threads", args.threads),
        ("svg", "true" if args.svg else None),
    ):
        if value is not None:
            out[key] = value
    return out


def run(cfg: RunConfig) -> list[Path]:
    """Execute one resolved run and return the files written."""
    from hd_transform.commands import COMMAND_HANDLERS, RunContext
    from hd_transform.paths import build_paths, ensure_dirs

    paths = build_paths(Path(cfg["output"]) if cfg["output"] else None)
    ensure_dirs(paths)
    return COMMAND_HANDLERS[cfg.command](RunContext(config=cfg, paths=paths))


def run_command(args: argparse.Namespace) -> int:
    """Resolve config, run, map failures to exit codes."""
    try:
        cfg = load_run_config(args.cmd, args.config, _overrides(args))
    except ConfigError as exc:
        _configure_logging(None)
        logger.error("config error: %s", exc)
        return EXIT_CONFIG

    _configure_logging(dict(cfg.values))
    logger.info("hd-transform %s (version %s)", cfg.command, get_version_string())
    logger.debug("resolved config: %s", cfg.as_metadata())
    try:
        written = run(cfg)
    except NumericalError as exc:
        logger.error("numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except OSError as exc:
        logger.error("I/O error: %s", exc)
        return EXIT_IO
    except ValueError as exc:
        logger.error("invalid input: %s", exc)
        return EXIT_CONFIG
    logger.info("%s finished, %d files written", cfg.command, len(written))
    return EXIT_OK


def main(argv: list[str] | None = None) -> None:
    args = build_parser().parse_args(argv)
    raise SystemExit(run_command(args))


if __name__ == "__main__":
    main()
