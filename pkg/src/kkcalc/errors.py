"""Exception hierarchy shared by the engine and the command line."""


class KKCalcError(Exception):
    """Base class for every error raised by kkcalc."""


class IllFormedMap(KKCalcError, ValueError):
    """A matrix does not define a homomorphism between the given groups."""


class InvalidElement(KKCalcError, ValueError):
    """Element coordinates do not match the group they are meant for."""


class HypothesisViolation(KKCalcError):
    """An operation was called outside the hypotheses it is defined under.

    ``hypothesis`` names the failed condition and ``witness`` (when not None)
    is a concrete object demonstrating the failure, e.g. a free generator.
    """

    def __init__(self, message, hypothesis=None, witness=None):
        super().__init__(message)
        self.hypothesis = hypothesis
        self.witness = witness


class NotExact(KKCalcError):
    """A sequence that was required to be exact is not."""

    def __init__(self, message, node=None, witness=None):
        super().__init__(message)
        self.node = node
        self.witness = witness


class DiagramError(KKCalcError):
    """A ladder diagram fails to commute or its rows miss the snake hypotheses."""

    def __init__(self, message, square=None):
        super().__init__(message)
        self.square = square


class ParseError(KKCalcError, ValueError):
    """Syntax error in a group expression; ``position`` is a 0-based offset."""

    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.text = text
        self.position = position


class JobFileError(KKCalcError, ValueError):
    """A job file failed schema validation or references unknown names."""
