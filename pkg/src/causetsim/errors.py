"""Exception types shared across the package."""


class CausetSimError(Exception):
    """Base class for all domain errors raised by this package."""


class UnknownElement(CausetSimError):
    """An element id does not exist in the causet."""


class ReflexiveRelation(CausetSimError):
    """Attempted to relate an element to itself."""


class CycleCreated(CausetSimError):
    """Adding the relation would close a directed cycle."""


class CausetTooLarge(CausetSimError):
    """Exact computation refused above the supported element count."""


class DegenerateRegion(CausetSimError):
    """Region has zero volume, bad dimension, or invalid tips/ranges."""


class DimensionMismatch(CausetSimError):
    """Coordinate or operator dimensions are inconsistent."""


class NotNormalized(CausetSimError):
    """Amplitude or weight vector is too far from unit total."""


class NotHermitian(CausetSimError):
    """Matrix is not equal to its conjugate transpose within tolerance."""


class UnknownNode(CausetSimError):
    """A substratum node id does not exist."""


class NotExcited(CausetSimError):
    """Node is not in the excited state."""


class NoCandidates(CausetSimError):
    """No excited emitter or no ground-state absorber is available."""


class MissingPositions(CausetSimError):
    """Operation requires node positions that are absent."""


class CoincidentNodes(CausetSimError):
    """Two nodes share a position where a nonzero distance is required."""


class NoClock(CausetSimError):
    """No clock is configured for this state."""


class Incomparable(CausetSimError):
    """The two elements are not related; no temporal (hence no spatial)
    relationship exists between them."""


class MissingCoordinates(CausetSimError):
    """An element carries no embedding coordinates."""


class InsufficientSamples(CausetSimError):
    """Too few samples for the requested statistical check."""


class ParseError(CausetSimError):
    """Document is not valid JSON or does not match the schema."""


class ValidationFailed(CausetSimError):
    """Imported document is semantically invalid (cycle, reflexive pair,
    unknown ids, or non-dense element list)."""
