"""Exception hierarchy shared by all modules."""


class CohnlocError(Exception):
    """Base class for every error raised by the package."""


class InputError(CohnlocError, ValueError):
    pass


class NotABijection(InputError):
    pass


class OrderCapExceeded(CohnlocError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class NotPrime(InputError):
    pass


class NotPGroup(InputError):
    pass


class NotAUnit(CohnlocError, ArithmeticError):
    pass


class NotSquare(InputError):
    pass


class GroupMismatch(CohnlocError):
    pass


class RingMismatch(CohnlocError):
    pass


class ContextMismatch(CohnlocError):
    pass


class NotInvertibleOverZ(NotAUnit):
    pass


class NotCoprimeOrders(InputError):
    pass


class NotPerfect(InputError):
    pass


class NotInWh(InputError):
    pass


class GapHypothesisFails(CohnlocError):
    pass


class BudgetExceeded(CohnlocError):
    pass


class ParseError(InputError):
    pass


class UnknownSuite(InputError):
    pass


class TheoremViolation(CohnlocError, AssertionError):
    """An identity that must hold by the underlying mathematics did not."""
