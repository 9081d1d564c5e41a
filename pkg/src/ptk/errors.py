"""Exception hierarchy shared by every module."""


class PtkError(Exception):
    """Base class for all toolkit errors."""


class AlphabetError(PtkError, ValueError):
    """A word, automaton or formula does not fit the declared alphabet."""


class ParseError(PtkError, ValueError):
    """Malformed textual input (regex, automaton file, grammar, formula)."""


class CapExceeded(PtkError):
    """A configurable resource cap was hit; no partial result is returned."""

    def __init__(self, message, *, cap=None, reached=None):
        super().__init__(message)
        self.cap = cap
        self.reached = reached


class PreconditionError(PtkError, ValueError):
    """An operation was called outside its documented domain."""


class UnsupportedConstruct(PtkError):
    """The input uses a construct the solver cannot handle in this mode."""


class VerificationError(PtkError, AssertionError):
    """An internal self-check failed; this indicates a bug."""
