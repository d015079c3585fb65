"""
Shared exception base for numerical failures.

Input problems are ValueError subclasses defined next to the code that detects them;
failures of an otherwise valid computation derive from NumericalError so callers
(the CLI in particular) can tell the two apart.
"""

from __future__ import annotations


class NumericalError(RuntimeError):
    """Raised when a well-posed computation fails numerically."""
