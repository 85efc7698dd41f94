"""Exception hierarchy shared by every module in the package."""


class ZariskiError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(ZariskiError, ValueError):
    pass


class SingularMatrix(ZariskiError, ArithmeticError):
    pass


class NotSymmetric(ZariskiError, ValueError):
    pass


class NegativeOffDiagonal(ZariskiError, ValueError):
    def __init__(self, i, j, value):
        super().__init__(f"off-diagonal entry ({i},{j}) is negative: {value}")
        self.i = i
        self.j = j
        self.value = value


class DuplicateLabel(ZariskiError, ValueError):
    pass


class SupportNotContained(ZariskiError, ValueError):
    pass


class CapExceeded(ZariskiError, ValueError):
    """An exhaustive enumeration was asked to run beyond its configured size."""


class DimensionCapExceeded(CapExceeded):
    pass


class MalformedProgram(ZariskiError, ValueError):
    pass


class NotEffective(ZariskiError, ValueError):
    pass


class NotQuasiEffective(ZariskiError, ValueError):
    pass


class UniquenessViolation(ZariskiError, AssertionError):
    """Raised when the brute-force oracle accepts zero or several supports.

    The decomposition is unique for every effective vector, so this signals a
    bug rather than bad input.
    """


class NonPositiveInput(ZariskiError, ValueError):
    pass


class UnsupportedCase(ZariskiError, ValueError):
    pass
