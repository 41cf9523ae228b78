"""Exception taxonomy shared across the package."""


class DomainError(ValueError):
    """Input lies outside an operation's mathematical domain."""


class EmptyRegionError(DomainError):
    """The half-spaces have empty intersection."""


class UnboundedRegionError(DomainError):
    """The feasible region has a nontrivial recession cone."""


class DegenerateInputError(DomainError):
    """Constraint data too degenerate to define the requested object."""


class NotDelzantError(DomainError):
    """Polytope is not simple/rational/smooth, so the toric dictionary fails."""


class NotPolarizingError(DomainError):
    """Direction pairs to zero with some edge vector."""


class NotGenericError(DomainError):
    """Evaluation direction annihilates a weight or edge."""


class NonSimpleVertexError(DomainError):
    """Vertex cone has dependent or too many generators."""
