"""Quarterly time-series containers and the transforms every model step uses.

A :class:`QuarterlySeries` is an immutable, gap-free run of finite doubles
anchored at a start :class:`Quarter`. Index ``i`` of ``values`` belongs to
quarter ``start + i``.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import total_ordering

import numpy as np

from .errors import DataError, InsufficientData, NonPositiveValue, NoOverlap, RangeError

_QUARTER_RE = re.compile(r"^([0-9]{4})Q([1-4])$")


@total_ordering
@dataclass(frozen=True)
class Quarter:
    """A calendar quarter, ordered by ``(year, quarter)``."""

    year: int
    quarter: int

    def __post_init__(self) -> None:
        if self.quarter not in (1, 2, 3, 4):
            raise ValueError(f"quarter must be in 1..4, got {self.quarter}")

    @classmethod
    def parse(cls, text: str) -> Quarter:
        """Parse ``YYYYQn``."""
        m = _QUARTER_RE.match(text.strip())
        if m is None:
            raise ValueError(f"not a quarter label: {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    @property
    def ordinal(self) -> int:
        return self.year * 4 + (self.quarter - 1)

    @classmethod
    def from_ordinal(cls, n: int) -> Quarter:
        return cls(n // 4, n % 4 + 1)

    def __lt__(self, other: Quarter) -> bool:
        if not isinstance(other, Quarter):
            return NotImplemented
        return self.ordinal < other.ordinal

    def __add__(self, k: int) -> Quarter:
        if not isinstance(k, (int, np.integer)):
            return NotImplemented
        return Quarter.from_ordinal(self.ordinal + int(k))

    def __sub__(self, other):
        if isinstance(other, Quarter):
            return self.ordinal - other.ordinal
        if isinstance(other, (int, np.integer)):
            return Quarter.from_ordinal(self.ordinal - int(other))
        return NotImplemented

    def __str__(self) -> str:
        return f"{self.year}Q{self.quarter}"


def as_quarter(q: Quarter | str) -> Quarter:
    return q if isinstance(q, Quarter) else Quarter.parse(q)


@dataclass(frozen=True, eq=False)
class QuarterlySeries:
    """Contiguous quarterly observations.

    Parameters
    ----------
    start : Quarter or str
        Quarter of the first observation.
    values : array_like
        Observations in time order. Must be non-empty and finite.
    """

    start: Quarter
    values: np.ndarray

    def __init__(self, start: Quarter | str, values: Iterable[float]):
        arr = np.array(values, dtype=np.float64).ravel()
        if arr.size == 0:
            raise InsufficientData("a series needs at least one value")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr))[0])
            q = as_quarter(start) + bad
            raise DataError(f"non-finite value at {q}; missing data must be dropped before construction")
        arr.setflags(write=False)
        object.__setattr__(self, "start", as_quarter(start))
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    @property
    def end(self) -> Quarter:
        return self.start + (len(self) - 1)

    def quarters(self) -> list[Quarter]:
        return [self.start + i for i in range(len(self))]

    def __iter__(self) -> Iterator[tuple[Quarter, float]]:
        for i, v in enumerate(self.values):
            yield self.start + i, float(v)

    def at(self, q: Quarter | str) -> float:
        i = as_quarter(q) - self.start
        if not 0 <= i < len(self):
            raise RangeError(f"{q} outside {self.start}..{self.end}")
        return float(self.values[i])

    def with_values(self, values: Iterable[float]) -> QuarterlySeries:
        """Same start quarter, new values."""
        return QuarterlySeries(self.start, values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuarterlySeries):
            return NotImplemented
        return self.start == other.start and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.start, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"QuarterlySeries({self.start}..{self.end}, n={len(self)})"


@dataclass(frozen=True)
class SeriesFrame:
    """Named series sharing one common quarterly range."""

    series: Mapping[str, QuarterlySeries] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.series:
            raise InsufficientData("a frame needs at least one series")
        first = next(iter(self.series.values()))
        for name, s in self.series.items():
            if s.start != first.start or len(s) != len(first):
                raise ValueError(f"series {name!r} is not aligned with the frame")
        object.__setattr__(self, "series", dict(self.series))

    @property
    def start(self) -> Quarter:
        return next(iter(self.series.values())).start

    @property
    def end(self) -> Quarter:
        return next(iter(self.series.values())).end

    def __len__(self) -> int:
        return len(next(iter(self.series.values())))

    def __getitem__(self, name: str) -> QuarterlySeries:
        return self.series[name]

    def __contains__(self, name: object) -> bool:
        return name in self.series

    def names(self) -> list[str]:
        return list(self.series)


def align(*series: QuarterlySeries, names: Iterable[str] | None = None, **named: QuarterlySeries) -> SeriesFrame:
    """Truncate every series to the intersection of their ranges.

    Positional series are named ``s0, s1, ...`` unless ``names`` is given;
    keyword series keep their keyword. Passing a :class:`SeriesFrame` as the
    only positional argument realigns it, which is a no-op.
    """
    if len(series) == 1 and isinstance(series[0], SeriesFrame) and not named:
        return align(**series[0].series)
    members: dict[str, QuarterlySeries] = {}
    labels = list(names) if names is not None else [f"s{i}" for i in range(len(series))]
    if len(labels) != len(series):
        raise ValueError("names must match the number of positional series")
    members.update(zip(labels, series))
    members.update(named)
    if not members:
        raise InsufficientData("align needs at least one series")
    lo = max(s.start for s in members.values())
    hi = min(s.end for s in members.values())
    if lo > hi:
        raise NoOverlap(f"no common quarters (latest start {lo}, earliest end {hi})")
    return SeriesFrame({k: window(s, lo, hi) for k, s in members.items()})


def lag(s: QuarterlySeries, k: int = 1) -> QuarterlySeries:
    """Shift forward by ``k`` quarters: ``result[t] = s[t - k]``."""
    if k < 0:
        raise ValueError("lag order must be non-negative")
    if k >= len(s):
        raise InsufficientData(f"lag {k} needs more than {len(s)} observations")
    if k == 0:
        return s
    return QuarterlySeries(s.start + k, s.values[: len(s) - k])


def diff(s: QuarterlySeries, k: int = 1) -> QuarterlySeries:
    """``result[t] = s[t] - s[t - k]``, starting ``k`` quarters later."""
    if k < 1:
        raise ValueError("difference order must be positive")
    if k >= len(s):
        raise InsufficientData(f"difference of order {k} needs more than {len(s)} observations")
    return QuarterlySeries(s.start + k, s.values[k:] - s.values[:-k])


def log_transform(s: QuarterlySeries) -> QuarterlySeries:
    """Element-wise natural log; every value must be strictly positive."""
    bad = np.flatnonzero(s.values <= 0)
    if bad.size:
        i = int(bad[0])
        raise NonPositiveValue(s.start + i, float(s.values[i]))
    return s.with_values(np.log(s.values))


def window(s: QuarterlySeries, start: Quarter | str, end: Quarter | str) -> QuarterlySeries:
    """Inclusive slice ``[start, end]``."""
    lo, hi = as_quarter(start), as_quarter(end)
    if lo > hi:
        raise RangeError(f"window start {lo} is after end {hi}")
    if lo < s.start or hi > s.end:
        raise RangeError(f"window {lo}..{hi} outside {s.start}..{s.end}")
    i = lo - s.start
    return QuarterlySeries(lo, s.values[i : i + (hi - lo) + 1])


def quarter_range(start: Quarter | str, end: Quarter | str) -> list[Quarter]:
    lo, hi = as_quarter(start), as_quarter(end)
    return [lo + i for i in range((hi - lo) + 1)]
