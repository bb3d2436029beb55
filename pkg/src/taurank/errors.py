"""Exception hierarchy shared by all modules."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class SingularCurveError(DomainError):
    """The given coefficients define a singular (discriminant zero) cubic."""


class CMCurveError(DomainError):
    """The curve has complex multiplication; the analysis does not apply."""


class InconsistencyError(RuntimeError):
    """Two independent computations disagree; indicates a bug or bad input."""


class MalformedCurveError(DomainError):
    """Curve input text could not be parsed."""


class UnknownLabelError(DomainError):
    """Curve label not present in the bundled database."""


class DatabaseError(ValueError):
    """Curve database file is missing or malformed."""
