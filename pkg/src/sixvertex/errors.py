"""Exception types shared across the package."""


class SixVertexError(Exception):
    """Base class for all package-specific errors."""


class InvalidLocalPattern(SixVertexError):
    """The four incident edge states around a vertex match none of the six types."""


class DegreeMismatch(SixVertexError):
    """Operation requires a degree-4 internal vertex."""


class OutOfRange(SixVertexError, ValueError):
    """Argument outside the admissible integer range."""


class NotStrictlyIncreasing(SixVertexError, ValueError):
    """Position vector must be strictly increasing."""


class DimensionMismatch(SixVertexError, ValueError):
    """Vector length inconsistent with the domain size."""


class TooLarge(SixVertexError):
    """Enumeration state space exceeds the configured budget."""


class NoValidConfiguration(SixVertexError):
    """Boundary condition admits no configuration (parity/balance failure)."""


class NotDomainWallType(SixVertexError):
    """Side lacks the unique-refinement-position property."""


class ParityMismatch(SixVertexError):
    """Two defect patterns disagree on some face parity."""


class SingularSystem(SixVertexError):
    """The two envelope equations are linearly dependent at this parameter."""


class NonProbabilisticWeights(SixVertexError, ValueError):
    """Weights outside the probabilistic regime for this formula."""


class NegativeDiscriminant(SixVertexError):
    """Square-root argument became negative where it should not."""


class EmptySequence(SixVertexError, ValueError):
    """At least two distinct system sizes are required."""


class NonPositiveZ(SixVertexError, ValueError):
    """Spectral parameter z must be positive."""


class NotMonotone(SixVertexError):
    """Domain lacks a verified monotone height structure for exact sampling."""


class NonIcePoint(SixVertexError, ValueError):
    """Exact sampling is implemented at equal weights only."""


class DegenerateField(SixVertexError):
    """Density field is constant; no level set exists."""
