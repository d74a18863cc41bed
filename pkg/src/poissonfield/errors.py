"""Exception hierarchy.

Every error carries a short machine-readable ``code``; the CLI maps
``InputError`` subclasses to exit status 3 and ``UnsupportedError``
subclasses to exit status 2.
"""


class PoissonFieldError(Exception):
    code = "Error"


class InputError(PoissonFieldError, ValueError):
    code = "InputError"


class UnsupportedError(PoissonFieldError):
    code = "Unsupported"


class DivisionByZero(InputError, ZeroDivisionError):
    code = "DivisionByZero"


class IndeterminateResult(InputError):
    code = "IndeterminateResult"


class ExpressionSyntaxError(InputError):
    code = "SyntaxError"

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class UnknownVariable(ExpressionSyntaxError):
    code = "UnknownVariable"


class EmptyProduct(InputError):
    code = "EmptyProduct"


class TooFewRoots(InputError):
    code = "TooFewRoots"


class NotDistinctForms(InputError):
    code = "NotDistinctForms"


class NotMonic(InputError):
    code = "NotMonic"


class NotFlabby(InputError):
    code = "NotFlabby"


class DegreeMismatch(InputError):
    code = "DegreeMismatch"


class DegreeTooSmall(InputError):
    code = "DegreeTooSmall"


class ConstantH(InputError):
    code = "ConstantH"


class IdentityFails(InputError):
    code = "IdentityFails"


class Unsupported(UnsupportedError):
    code = "Unsupported"


class RootsUnavailable(UnsupportedError):
    code = "RootsUnavailable"


class UnfactoredDenominator(UnsupportedError):
    code = "UnfactoredDenominator"


class UnresolvedInput(UnsupportedError):
    code = "UnresolvedInput"
