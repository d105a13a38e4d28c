"""Exception types raised across the package."""


class TruncationError(ValueError):
    """A result would need coefficients beyond the stored truncation order."""


class NonInvertibleSeriesError(ZeroDivisionError):
    """Division by a power series whose constant term vanishes."""


class NotAGenusSeriesError(ValueError):
    """A genus series must have constant term 1."""


class UnboundSymbolError(KeyError):
    """A polynomial was evaluated without a value for one of its symbols."""


class SymmetryViolationError(ValueError):
    """Input to the symmetric-function basis change is not symmetric."""


class WellDefinednessError(ValueError):
    """An integer matrix does not define a homomorphism between the groups."""


class ShapeError(ValueError):
    """Maps in a sequence are not composable."""


class CoordinateError(ValueError):
    """An element does not have one coordinate per group generator."""


class DimensionError(ValueError):
    """Objects of different (or unsupported) dimension were combined."""
