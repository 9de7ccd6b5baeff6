"""Exception hierarchy shared by all rdpell modules."""


class PellError(Exception):
    """Base class for every error raised by rdpell."""


class DomainError(PellError, ValueError):
    """Input outside the domain of an operation (e.g. D < 2)."""


class PerfectSquare(DomainError):
    """The radicand is a perfect square, so sqrt(D) has no periodic expansion."""


class PeriodTooLong(PellError):
    """The continued fraction did not close within the iteration cap."""


class NotASolution(PellError, ValueError):
    """A pair (X, Y) does not satisfy X^2 - D*Y^2 = 1."""


class NotFundamental(PellError, ValueError):
    pass


class NotFound(PellError):
    """The brute-force search exhausted its range without a hit."""


class ConditionViolation(PellError, ValueError):
    """A closed form was requested for parameters outside its applicability conditions."""


class DivisionInexact(PellError, ArithmeticError):
    """An exact division left a remainder; indicates a classifier bug."""


class VerificationMismatch(PellError):
    pass
