"""Exception hierarchy shared across the package."""


class FbarError(Exception):
    """Base class for all package errors."""


class ValidationError(FbarError, ValueError):
    """Invalid input: out-of-range sizes, bad flags, malformed files."""


class SizeLimitError(ValidationError):
    pass


class MembershipError(ValidationError):
    """An element or subgroup does not belong to the claimed parent."""


class ConsistencyError(FbarError, AssertionError):
    """An exact identity that must hold failed; indicates a bug."""


class SolverError(FbarError):
    """Base for failures of the natural-number decomposition."""


class RankDeficient(SolverError):
    pass


class InconsistentSystem(SolverError):
    pass


class NonNaturalSolution(SolverError):
    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution
