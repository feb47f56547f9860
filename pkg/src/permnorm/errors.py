"""Exception types shared across the library."""


class PermnormError(Exception):
    """Base class for all errors raised by this package."""


class DegreeMismatch(PermnormError):
    """Two objects that must act on the same points do not."""


class NotInOrbit(PermnormError):
    """A point lies outside the orbit being traversed."""


class NotInGroup(PermnormError):
    """An element was expected to lie in a group and does not."""


class IntransitiveInput(PermnormError):
    """The group is not transitive.  Carries the orbit partition as witness."""

    def __init__(self, orbits):
        self.orbits = orbits
        sizes = sorted(len(o) for o in orbits)
        super().__init__(f"group is intransitive (orbit sizes {sizes})")


class ImprimitiveInput(PermnormError):
    """The group preserves a nontrivial block system, given as witness."""

    def __init__(self, blocks):
        self.blocks = blocks
        super().__init__(
            "group is imprimitive (%d blocks of size %d, e.g. %s)"
            % (len(blocks), len(blocks[0]), sorted(p + 1 for p in blocks[0]))
        )


class TrivialInput(PermnormError):
    """The group is trivial where a nontrivial group is required."""


class BudgetExceeded(PermnormError):
    """A configured enumeration cap was hit.  The message names the quantity."""


class ContractViolation(PermnormError):
    """A bound guaranteed by the theory failed to hold; signals a bug upstream."""


class NotAHomomorphism(PermnormError):
    """The generator images do not extend to a homomorphism."""


class GroupFileError(PermnormError):
    """A group file failed to parse.  Carries 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {column}" if column else "")
        super().__init__(message + where)
