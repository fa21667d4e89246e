"""Exception hierarchy shared by all modules."""


class LocalZetaError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(LocalZetaError, ValueError):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class BudgetExceeded(LocalZetaError):
    pass


class DivisionByZero(LocalZetaError, ZeroDivisionError):
    pass


class ParseError(LocalZetaError, ValueError):
    """Syntax error in one of the text formats.

    ``line`` and ``column`` are 1-based; either may be ``None`` when the
    offending text did not come from a file.
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if column is not None:
            loc.append(f"column {column}")
        prefix = f"{', '.join(loc)}: " if loc else ""
        super().__init__(prefix + message)


class DegenerateFactor(ParseError):
    pass



class ArityError(LocalZetaError, ValueError):
    pass


class NegativeCount(LocalZetaError):
    pass


class Unstable(LocalZetaError):
    pass


class ZeroEigenvalue(LocalZetaError):
    pass


class NonUniformCount(LocalZetaError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotPolynomialCount(LocalZetaError):
    pass


class NotInM(LocalZetaError):
    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term


class MixedArity(LocalZetaError, ValueError):
    pass


class ExcludedPrime(LocalZetaError):
    pass


class PoleAt(LocalZetaError, ZeroDivisionError):
    pass


class MultipleGenerators(LocalZetaError, ValueError):
    pass


class UnknownName(LocalZetaError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""
