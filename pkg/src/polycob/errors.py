"""Exception hierarchy shared by all modules."""


class PolycobError(Exception):
    """Base class for every error raised by this package."""


class InputError(PolycobError, ValueError):
    """Malformed input: nonpositive lengths, bad indices, wrong n."""


class WallError(PolycobError):
    """The length vector lies on a wall, so M_r is singular."""

    def __init__(self, message, partition=None):
        super().__init__(message)
        self.partition = partition


class EmptyModuliError(PolycobError):
    """No closed polygon has the requested side lengths."""


class NoPivotError(PolycobError):
    """Equilateral vector: no pair of distinct lengths to bend along."""


class AdmissibilityError(PolycobError, ValueError):
    """An index set that is not r-admissible was used to build a fixed point."""


class UndefinedActionError(PolycobError):
    """The circle action is undefined because a diagonal has zero length."""


class DegenerateTriangleError(PolycobError):
    """An angle coordinate is undefined because a fan triangle is flat."""

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index
