"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: domain/input problems exit 1, resource
limits exit 2 and invariant violations exit 3.
"""

from __future__ import annotations


class TreeAlphaError(Exception):
    exit_code = 1


class InputError(TreeAlphaError, ValueError):
    """Caller supplied something outside an operation's precondition."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotFound(TreeAlphaError, LookupError):
    """A requested structure does not exist in the graph."""


class ResourceError(TreeAlphaError, RuntimeError):
    exit_code = 2


class InvariantViolation(TreeAlphaError, AssertionError):
    """A bound promised for 3PC-free inputs failed.

    On a graph that really is 3PC-free this indicates a bug; on arbitrary
    input it is the signal the fuzzing workflow looks for.  ``step`` and
    ``trace`` carry whatever diagnostic state the raiser had at hand.
    """

    exit_code = 3

    def __init__(self, message: str, step: object = None, trace: object = None) -> None:
        super().__init__(message)
        self.step = step
        self.trace = trace
