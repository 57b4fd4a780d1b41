"""Exception hierarchy.

Every error raised on bad input derives from :class:`GconeError`, which is a
``ValueError`` so callers that only care about "bad input" can catch that.
"""


class GconeError(ValueError):
    """Base class for all library errors."""


class InvalidLatticeError(GconeError):
    """Singular or malformed lattice basis."""


class DimensionMismatchError(GconeError):
    pass


class ZeroVectorError(GconeError):
    pass


class NotInLatticeError(GconeError):
    pass


class NotSublatticeError(GconeError):
    pass


class NotPointedError(GconeError):
    pass


class NotFullDimensionalError(GconeError):
    pass


class OriginNotInteriorError(GconeError):
    pass


class NotLatticePolytopeError(GconeError):
    """A computed polytope has vertices outside the lattice."""


class UnboundedError(GconeError):
    pass


class NotGorensteinError(GconeError):
    pass


class NotReflexiveError(GconeError):
    pass


class InvalidPartitionError(GconeError):
    pass


class NefPartitionError(GconeError):
    """The data does not form a nef-partition."""


class DocumentError(GconeError):
    """Malformed JSON document.

    ``pointer`` is a JSON pointer to the offending location ("" is the root).
    """

    def __init__(self, message, pointer=""):
        super().__init__(message)
        self.pointer = pointer

    def __str__(self):
        msg = super().__str__()
        return f"{msg} (at {self.pointer or '/'})"
