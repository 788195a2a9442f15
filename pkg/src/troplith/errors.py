"""Exception types shared across troplith."""


class TroplithError(Exception):
    """Base class for all library errors."""


class EmptyPolyhedronError(TroplithError):
    """Raised when a constructor is handed an infeasible description."""


class DimensionMismatch(TroplithError, ValueError):
    pass


class NotAComplexError(TroplithError):
    pass


class NotBalancedError(TroplithError):
    def __init__(self, violations):
        self.violations = violations
        super().__init__(f"cycle is not balanced at {len(violations)} ridge(s)")


class DomainError(TroplithError, ValueError):
    """A point or cycle lies outside the domain of a function or map."""


class NonGenericError(TroplithError):
    """The displacement vector is not generic for the given pair of cycles."""


class OracleIncomplete(TroplithError):
    """The splitting-dimension search could not decide a local profile.

    ``reason`` is a short machine-readable tag, ``detail`` a human string.
    """

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


class LoopGuardExceeded(TroplithError):
    pass


class InternalError(TroplithError):
    """A verified postcondition failed; indicates a bug."""
