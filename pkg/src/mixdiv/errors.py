"""Exception types raised by the library.

Every error derives from :class:`MixdivError` (itself a ``ValueError``), so
callers can catch the whole family or individual conditions.
"""


class MixdivError(ValueError):
    """Base class for all validation and precondition failures."""


# --- measure spaces and densities -------------------------------------------

class EmptySpace(MixdivError):
    """A measure space needs at least one atom."""


class NonpositiveWeight(MixdivError):
    """An atom weight was zero, negative, or not finite."""


class LengthMismatch(MixdivError):
    """Per-atom data does not align with the space's atom count."""


class NonpositiveDensity(MixdivError):
    """A density value was zero, negative, or not finite."""


class NotNormalized(MixdivError):
    """A density was submitted as a probability but does not integrate to 1."""


# --- generators ---------------------------------------------------------------

class InvalidLinear(MixdivError):
    """Linear generator coefficients must be >= 0 and not both zero."""


class NonpositiveArgument(MixdivError):
    """Generators are defined on (0, inf) only."""


class NegativeValue(MixdivError):
    """A custom generator returned a negative value (codomain is [0, inf))."""


# --- divergence functionals ---------------------------------------------------

class SpaceMismatch(MixdivError):
    """Densities from different measure spaces were combined."""


class MixedArityZero(MixdivError):
    """A mixed divergence needs at least one (generator, P, Q) triple."""


class IndexOutOfRange(MixdivError):
    """An index argument (k, m, i, n, ...) fell outside its admissible range."""


class ArityMismatch(MixdivError):
    """A multivariate generator's arity does not match the density vector."""


class RenyiAlphaOne(MixdivError):
    """The Renyi order must differ from 1."""


class ReferenceNotProbability(MixdivError):
    """Reference-measure variants require the base measure to have mass 1."""


# --- audits -------------------------------------------------------------------

class NotProbability(MixdivError):
    """An audit requiring probability-certified densities got uncertified ones."""


class ShapeMismatch(MixdivError):
    """Generator shape metadata does not satisfy a check's preconditions."""


class DegenerateIndices(MixdivError):
    """Interpolation endpoints must be distinct."""


# --- geometry -----------------------------------------------------------------

class UnsupportedDimension(MixdivError):
    """Sphere grids exist for dimensions 2 and 3 only."""


class DimensionMismatch(MixdivError):
    """Body dimension and grid dimension disagree."""


# --- input files --------------------------------------------------------------

class ParseError(MixdivError):
    """An input document could not be parsed; the message locates the problem."""
