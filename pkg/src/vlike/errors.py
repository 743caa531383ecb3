"""Shared exception types.

Engine entry points raise :class:`PreconditionError` when a documented
precondition is violated, so callers (in particular the CLI) can report the
violated condition by name instead of leaking a bare traceback.
"""

from __future__ import annotations


class PreconditionError(ValueError):
    """A named precondition of an operation was violated."""

    def __init__(self, name: str, detail: str = ""):
        self.name = name
        self.detail = detail
        super().__init__(f"{name}: {detail}" if detail else name)


class TruncationOverflowError(PreconditionError):
    """A computation escaped the configured truncation window or band."""

    def __init__(self, detail: str = ""):
        super().__init__("truncation overflow", detail)


class NoValidSignError(RuntimeError):
    """Neither sign choice satisfies the bracket compatibility probes."""


class AmbiguousSignError(RuntimeError):
    """Both sign choices satisfy the probes; the probe set is too small."""
