"""Exception types raised across the package."""


class QClusterError(Exception):
    """Base class for every error raised by qcluster."""


class NotDivisible(QClusterError, ArithmeticError):
    """An exact quotient does not exist in the target ring."""


class RankMismatch(QClusterError, ValueError):
    """Operands live in quantum tori with different skew forms."""


class NotSkewSymmetrizable(QClusterError, ValueError):
    pass


class NotSkewSymmetric(QClusterError, ValueError):
    pass


class BadDirection(QClusterError, ValueError):
    """Mutation direction outside [1, n]."""


class InexactDivision(QClusterError, ArithmeticError):
    """A division in a classical recurrence left a remainder."""


class EpsilonMismatch(QClusterError, AssertionError):
    """The two sign choices of a sign-independent formula disagree."""


class NotCompatible(QClusterError, ValueError):
    pass


class UnsupportedExponent(QClusterError, ValueError):
    pass


class NotInColumnSpan(QClusterError, AssertionError):
    pass


class NegativeExponent(QClusterError, AssertionError):
    pass


class NotProportional(QClusterError, AssertionError):
    pass


class EntriesOutOfRange(QClusterError, ValueError):
    pass


class NotTypeA(QClusterError, ValueError):
    pass
