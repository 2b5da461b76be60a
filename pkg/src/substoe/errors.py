"""Exception hierarchy shared by the whole package.

DomainError covers bad mathematical input (rejected values), CapabilityError
covers honest give-ups when a configured search bound is exhausted, and
InternalError flags broken invariants that indicate a bug upstream.
"""


class SubstoeError(Exception):
    pass


class DomainError(SubstoeError):
    """Input is outside the domain of the requested operation."""


class DimensionError(DomainError):
    """Shape mismatch: non-square matrix, wrong vector length, and so on."""


class RankError(DomainError):
    """A generating set failed to span the expected space."""


class SeedError(DomainError):
    """A fixed-point seed is not admissible for the substitution."""


class PathError(DomainError):
    """A finite path is inconsistent with its diagram."""


class FieldMismatchError(DomainError):
    """Two number-field values do not live in compatible fields."""


class CapabilityError(SubstoeError):
    """A search exceeded its configured cap; the answer is unknown, not 'no'."""


class InternalError(SubstoeError):
    """An internal consistency check failed; this is a bug, not bad input."""


class MalformedInputError(SubstoeError):
    """An input document could not be parsed against its schema."""
