"""Exception hierarchy shared by every module of the package."""


class MatroidError(Exception):
    """Base class for all errors raised by nscmat."""


class DimensionError(MatroidError, ValueError):
    """Matrix dimensions exceed the supported word budget."""


class RankDeficient(MatroidError, ValueError):
    """A matrix that must have full row rank does not."""


class IndexOutOfRange(MatroidError, IndexError):
    pass


class DuplicateLabel(MatroidError, ValueError):
    pass


class UnknownLabel(MatroidError, KeyError):
    pass


class LengthMismatch(MatroidError, ValueError):
    pass


class ScanLimitExceeded(MatroidError):
    """The codeword scan would visit more than ``2**limit`` coefficient vectors."""


class SizeLimit(MatroidError):
    pass


class BudgetExceeded(MatroidError):
    """A search ran out of its node/candidate budget.

    ``partial`` carries whatever was computed before the budget ran out
    (a checkpointable partial result), or ``None``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class UnknownName(MatroidError, KeyError):
    pass


class BadParams(MatroidError, ValueError):
    pass


class NotSimple(MatroidError, ValueError):
    pass


class RankTooLarge(MatroidError, ValueError):
    pass
