"""Exception hierarchy shared by all modules.

The CLI maps the three base classes to exit codes (parse 2, domain 3,
resource 4).
"""


class FloorplanError(Exception):
    """Base class for every error raised by the package."""


class ParseError(FloorplanError, ValueError):
    pass


class DomainError(FloorplanError, ValueError):
    """Input parsed fine but violates a combinatorial precondition."""


class ResourceLimit(FloorplanError, RuntimeError):
    def __init__(self, message, last_level=None):
        super().__init__(message)
        self.last_level = last_level


# geometry
class NotAPartition(DomainError):
    pass


class NotGeneric(DomainError):
    pass


class TatamiViolation(DomainError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class SingleBlock(DomainError):
    pass


class InvalidCorner(DomainError):
    pass


# gentree
class VectorNotInLabel(DomainError):
    pass


# dperm / bijection
class BadIndices(DomainError):
    pass


class NotInClassF(DomainError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DimensionNotPowerOfTwo(DomainError):
    pass


class NonPositiveDirection(DomainError):
    pass
