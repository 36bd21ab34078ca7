"""Exception hierarchy shared by all dfalab modules."""


class DfalabError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(DfalabError):
    """A domain object violates one of its structural invariants."""


class ParseError(DfalabError):
    """A text format could not be parsed; carries a 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownSymbol(DfalabError):
    """An input symbol does not belong to the automaton's alphabet."""


class AlphabetMismatch(DfalabError):
    """Member automata of an instance do not share one alphabet."""


class SizeOverflow(DfalabError):
    """A materialized product would exceed the configured state cap."""


class StateSpaceTooLarge(DfalabError):
    """A machine's configuration space exceeds the configured cap."""


class EncodingOverflow(DfalabError):
    """A trace field would need more than 63 bits."""


class InvalidMachine(DfalabError):
    """A machine is unsuitable for compilation (bad references, disallowed moves)."""


class MalformedTrace(DfalabError):
    """A witness string does not parse as a framed tuple sequence."""


class InvalidStep(DfalabError):
    """A decoded trace step is inconsistent with the machine's transitions."""


class InvalidTarget(DfalabError):
    """An amplification target count is not positive."""
