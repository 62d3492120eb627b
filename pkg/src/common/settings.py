"""
Runtime settings shared by the CLI and the runner scripts.
"""

import os
from typing import Optional

from common.errors import UsageError

THREADS_ENV_VAR = "CROSSMIN_THREADS"


def resolve_workers(threads: Optional[int] = None) -> int:
    """
    Resolve the worker count.

    Args:
        threads: Explicit value (e.g. from --threads); wins when given

    Returns:
        Number of workers, at least 1
    """
    if threads is not None:
        if threads < 1:
            raise UsageError(f"--threads must be >= 1, got {threads}")
        return threads

    raw = os.environ.get(THREADS_ENV_VAR)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise UsageError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from None
        if value < 1:
            raise UsageError(f"{THREADS_ENV_VAR} must be >= 1, got {value}")
        return value

    return os.cpu_count() or 1
