"""Run configuration schema and validation."""

from hd_transform.core.config._validation import (
    ALLOWED_KEYS,
    COMMAND_DEFAULTS,
    COMMANDS,
    parse_value,
    validate,
)

__all__ = ["ALLOWED_KEYS", "COMMAND_DEFAULTS", "COMMANDS", "parse_value", "validate"]
