"""Exception hierarchy shared by every module."""

from __future__ import annotations


class HomLeibnizError(Exception):
    """Base class for all library errors."""


class InputError(HomLeibnizError, ValueError):
    """Malformed input: wrong shapes, bad indices, unparsable scalars."""


class ParseError(InputError):
    """A description file could not be parsed.

    ``line`` and ``column`` are 1-based when known.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 path: str | None = None):
        self.line = line
        self.column = column
        self.path = path
        where = []
        if path:
            where.append(path)
        if line is not None:
            where.append(f"line {line}, column {column}")
        suffix = f" ({'; '.join(where)})" if where else ""
        super().__init__(message + suffix)
        self.message = message


class PreconditionError(HomLeibnizError):
    """An operation was called on data violating its hypotheses.

    ``witness`` carries the offending basis tuple when one exists.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message if witness is None else f"{message}; witness {witness}")
        self.witness = witness


class UnsupportedError(PreconditionError):
    """The construction is not defined for this input (e.g. non-uniform twists)."""
