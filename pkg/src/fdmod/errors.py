"""Exception types shared across the package."""


class DivisionByZero(ZeroDivisionError):
    pass


class ContextMismatch(ValueError):
    """Raised when values from two different ring contexts are combined."""


class ExponentOverflow(OverflowError):
    pass


class ParseError(ValueError):
    """Syntax error in polynomial or operator text; ``pos`` is a 0-based offset."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class NotMember(ArithmeticError):
    """The polynomial does not lie in the ideal."""


class LevelMismatch(ValueError):
    pass


class EnumerationLimitExceeded(RuntimeError):
    pass
