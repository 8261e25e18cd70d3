"""Exception hierarchy shared by every cyclegap module."""

from __future__ import annotations


class CycleGapError(Exception):
    """Base class for all library errors."""


class DataError(CycleGapError):
    """Input data cannot be used as given."""


class InsufficientData(DataError):
    """Too few observations for the requested operation."""


class NoOverlap(DataError):
    """Series ranges do not intersect."""


class RangeError(DataError):
    """A requested quarter window lies outside the series range."""


class NonPositiveValue(DataError):
    """A log transform met a value that is zero or negative."""

    def __init__(self, quarter, value: float):
        self.quarter = quarter
        self.value = value
        super().__init__(f"non-positive value {value!r} at {quarter}")


class DomainError(DataError):
    """An argument lies outside the mathematical domain of a function."""


class ZeroVariance(DataError):
    """A statistic needs variation that the data does not have."""


class LabelMismatch(DataError):
    """Two share vectors do not cover the same sectors."""


class GapError(DataError):
    """Quarters are missing from what must be a contiguous range."""

    def __init__(self, missing, source: str | None = None):
        self.missing = list(missing)
        self.source = source
        where = f" in {source}" if source else ""
        listed = ", ".join(str(q) for q in self.missing)
        super().__init__(f"missing quarters{where}: {listed}")


class ParseError(DataError):
    """A file or payload could not be parsed."""

    def __init__(self, message: str, source: str | None = None, row: int | None = None):
        self.source = source
        self.row = row
        loc = ""
        if source is not None:
            loc = f"{source}"
            if row is not None:
                loc += f", row {row}"
            loc += ": "
        super().__init__(loc + message)


class FetchError(CycleGapError):
    """A remote dataset could not be retrieved and no cached copy exists."""

    def __init__(self, message: str, status: int | None = None):
        self.status = status
        super().__init__(message if status is None else f"{message} (HTTP {status})")


class NumericalError(CycleGapError):
    """A numerical kernel could not produce a reliable answer."""


class RankDeficient(NumericalError):
    """Design matrix columns are linearly dependent."""

    def __init__(self, column: int):
        self.column = column
        super().__init__(f"column {column} is linearly dependent on earlier columns")


class NotPositiveDefinite(NumericalError):
    """A banded factorisation met a non-positive pivot."""

    def __init__(self, index: int, pivot: float):
        self.index = index
        self.pivot = pivot
        super().__init__(f"non-positive pivot {pivot!r} at row {index}")


class DegenerateTrend(NumericalError):
    """The estimated trend is not strictly positive, so a percent gap is undefined."""


class DegenerateFit(NumericalError):
    """The regression fits exactly or its residual moments are degenerate."""
