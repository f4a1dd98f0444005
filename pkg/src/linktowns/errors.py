"""Exception types shared across the package.

The CLI maps these onto exit codes: parse/validation problems exit 1,
violated preconditions (disconnected input, undefined measures) exit 2,
and internal invariant violations exit 3.
"""


class LinkTownsError(Exception):
    """Base class for all errors raised by this package."""


class EdgeListParseError(LinkTownsError):
    """A line of an edge-list file could not be parsed."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ValidationError(LinkTownsError):
    """Input is well-formed but violates a structural rule (self-loop,
    duplicate edge, edge or node missing from the graph)."""


class PreconditionError(LinkTownsError):
    """An operation was called on input outside its domain (empty set,
    full edge set where a proper subset is required, disconnected
    community, measure undefined for the given size)."""


class InvariantError(LinkTownsError):
    """An internal consistency check failed; indicates a bug."""
