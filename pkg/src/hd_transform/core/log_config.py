"""
Log level for a CLI run.

One level covers the whole run: the config's log_level, else HDT_LOG_LEVEL, else INFO.
Numerical modules log per-iteration detail at DEBUG and one summary line per solve at INFO.
"""

from __future__ import annotations

import logging
import os
from typing import Any, Mapping, Optional

from hd_transform.core.config._validation import DEFAULT_LOG_LEVEL

LOG_LEVEL_ENV = "HDT_LOG_LEVEL"

_LEVELS = logging.getLevelNamesMapping()


def level_value(raw: Any) -> Optional[int]:
    """Level name (any case) or number; None when blank or unknown."""
    text = str(raw or "").strip().upper()
    if not text:
        return None
    if text.isdigit():
        return int(text)
    return _LEVELS.get(text)


def resolve_log_level(
    cfg: Optional[Mapping[str, Any]], environ: Optional[Mapping[str, str]] = None
) -> int:
    environ = os.environ if environ is None else environ
    for source in ((cfg or {}).get("log_level"), environ.get(LOG_LEVEL_ENV)):
        level = level_value(source)
        if level is not None:
            return level
    return _LEVELS[DEFAULT_LOG_LEVEL]


def apply_log_level(cfg: Optional[Mapping[str, Any]]) -> logging.Logger:
    """Set the resolved level on the root logger and return it."""
    root = logging.getLogger()
    root.setLevel(resolve_log_level(cfg))
    return root
