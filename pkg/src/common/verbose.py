"""
Verbose output control.

This module provides a simple way to control verbose diagnostic output
across the walk engines, the reporting code and the CLI. Diagnostics go
to stderr so that values and CSV written to stdout stay machine-readable.
"""

import sys
import time
from contextlib import contextmanager
from typing import Iterator

# Global verbose flag
VERBOSE = False


def set_verbose(enabled: bool) -> None:
    """
    Enable or disable verbose output.

    Args:
        enabled: True to enable verbose output, False to disable
    """
    global VERBOSE
    VERBOSE = enabled


def is_verbose() -> bool:
    return VERBOSE


def vprint(*args, **kwargs) -> None:
    """
    Print to stderr only if verbose mode is enabled.

    Usage: Same as print()
        vprint("Debug message")
        vprint(f"Value: {value}")
    """
    if VERBOSE:
        kwargs.setdefault("file", sys.stderr)
        print(*args, **kwargs)


@contextmanager
def timed(label: str) -> Iterator[None]:
    """Print a timing line for the wrapped block when verbose."""
    vprint(f"⏱️  Starting {label.lower()}...")
    step_start = time.perf_counter()
    try:
        yield
    finally:
        vprint(f"⏱️  {label}: {time.perf_counter() - step_start:.3f}s")
