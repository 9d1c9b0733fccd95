"""Exception hierarchy shared by every module of the workbench."""


class KctxError(Exception):
    """Base class for all workbench errors."""


class DimensionError(KctxError, ValueError):
    """A set or matrix does not fit the carrier it is used with."""


class ContextMismatch(KctxError, ValueError):
    """Values from different contexts were combined."""


class BudgetExceeded(KctxError):
    """An enumeration would exceed the configured budget."""


class VerificationError(KctxError):
    """A built-in self-check failed; signals a bug or an invalid input."""


class FormatError(KctxError, ValueError):
    """An input file does not follow its documented format."""


class ParseError(KctxError, ValueError):
    """Syntax error in a formula or sequent, with the offending position."""

    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        if text:
            message = f"{message} at position {pos}: {text[:pos]}<<>>{text[pos:]}"
        super().__init__(message)
