"""Exception hierarchy shared by all qsimplex modules."""


class SimplexError(ValueError):
    """Base class for every error raised by qsimplex."""


class NotNormalized(SimplexError):
    pass


class NotInImage(SimplexError):
    """A simplex vector that is not the image of any normalized wavefunction."""


class NotUnitary(SimplexError):
    pass


class NotHermitian(SimplexError):
    pass


class DimensionMismatch(SimplexError):
    pass


class NotBlockStructured(SimplexError):
    """A matrix outside the span of the four block permutation patterns."""


class NotCanonical(SimplexError):
    pass


class OutOfRange(SimplexError):
    pass


class InvalidStep(SimplexError):
    pass


class DegenerateDraw(SimplexError):
    pass
