"""Exception hierarchy.

Errors are split into three bands that the CLI maps onto exit codes:
input/format problems (exit 2), precondition violations on otherwise
well-formed values (exit 3), and internal invariant breaches (exit 4,
always a bug).
"""


class TracekitError(Exception):
    """Base class for all library errors."""


class InputError(TracekitError):
    """Malformed input text, JSON, or files."""


class PreconditionError(TracekitError):
    """A well-formed value violates an operation's precondition."""


class InternalInvariantError(TracekitError):
    """An internal consistency check failed; always a bug."""


# -- parsing / construction ------------------------------------------------

class MalformedPD(InputError):
    """PD text or JSON does not describe a planar diagram."""


class InconsistentEdges(InputError):
    """An edge id is used a number of times different from two."""


class OrientationConflict(InputError):
    """No consistent orientation exists for the given combinatorics."""


# -- diagram operations ----------------------------------------------------

class BadComponentIndex(PreconditionError):
    """Component index out of range or invalid for the operation."""


class SameComponent(PreconditionError):
    """Band endpoints lie on a single component."""


class UnknownCatalogEntry(PreconditionError):
    """Requested catalog diagram does not exist."""


class IllegalSite(PreconditionError):
    """Reidemeister move site is not legal for the requested move."""


# -- invariants ------------------------------------------------------------

class DisconnectedDiagram(PreconditionError):
    """Operation requires a connected diagram."""


class NotAlternating(PreconditionError):
    """Operation is only licensed on alternating diagrams."""


class ParityViolation(PreconditionError):
    """An integrality condition on invariants fails."""


# -- traces ----------------------------------------------------------------

class InvalidBlockFraming(PreconditionError):
    """Framings violate the per-block planar attachment law."""


class NotAPartition(PreconditionError):
    """Blocks do not partition the link components."""


class BadBands(PreconditionError):
    """Band sequence does not merge the link to one component."""


class MalformedMixedDiagram(InputError):
    """Mixed diagram (dotted circles + attaching circles) is not well formed."""
