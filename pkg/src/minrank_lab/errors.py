"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Caller violated a documented precondition (bad modulus, size, range)."""


class IntegrityError(RuntimeError):
    """An internally certified quantity failed its own soundness check.

    Raised when a bound or certificate that the library is about to report
    turns out to be inconsistent with an independent recomputation.  This is
    never a user error; it means a construction is wrong and the result must
    not be trusted.
    """
