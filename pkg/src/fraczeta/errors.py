"""Exceptions raised on numerical (not argument) failures."""


class NumericalError(ArithmeticError):
    """Base class for failures of an otherwise valid computation."""


class SeriesConvergenceError(NumericalError):
    """A reference series did not reach its tail tolerance within the term cap."""


class PivotBreakdownError(NumericalError):
    """Forward elimination met a pivot too small to divide by."""
