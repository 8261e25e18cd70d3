"""Reading, caching and light preparation of the input series.

All interchange is CSV: UTF-8, comma separated, a header row
``date,<name>[,<name>...]``, dates written ``YYYYQn``, plain decimals.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import math
import os
import re
import tempfile
import urllib.error
import urllib.parse
import urllib.request
from collections.abc import Mapping
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .convergence import SectorShares
from .errors import DomainError, FetchError, GapError, InsufficientData, ParseError
from .series import Quarter, QuarterlySeries, quarter_range

log = logging.getLogger(__name__)

DATE_RE = re.compile(r"^[0-9]{4}Q[1-4]$")
OFFLINE_ENV = "CYCLEGAP_OFFLINE"
DEFAULT_BASE_URL = "https://ec.europa.eu/eurostat/api/dissemination/sdmx/2.1/data"
APPROXIMATE_SA = "approximate-SA"


# -- plain series --------------------------------------------------------------


def _parse_date(cell: str, source: str, row: int) -> Quarter:
    cell = cell.strip()
    if not DATE_RE.match(cell):
        raise ParseError(f"bad date {cell!r}, expected YYYYQn", source, row)
    return Quarter.parse(cell)


def _parse_number(cell: str, source: str, row: int) -> float:
    try:
        v = float(cell)
    except ValueError:
        raise ParseError(f"not a number: {cell!r}", source, row) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite value {cell!r}", source, row)
    return v


def _read_rows(path: str | os.PathLike) -> tuple[list[str], list[tuple[int, list[str]]]]:
    source = str(path)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = [h.strip() for h in next(reader)]
            except StopIteration:
                raise ParseError("empty file", source) from None
            rows = [(i, r) for i, r in enumerate(reader, start=2) if any(c.strip() for c in r)]
    except FileNotFoundError:
        raise ParseError("file not found", source) from None
    return header, rows


def _contiguous(quarters: list[Quarter], source: str) -> None:
    if len(set(quarters)) != len(quarters):
        dup = sorted({q for q in quarters if quarters.count(q) > 1})
        raise ParseError(f"duplicate quarters: {', '.join(map(str, dup))}", source)
    ordered = sorted(quarters)
    have = set(ordered)
    missing = [q for q in quarter_range(ordered[0], ordered[-1]) if q not in have]
    if missing:
        raise GapError(missing, source)


def read_series_csv(path: str | os.PathLike, date_column: str = "date", value_column: str | None = None) -> QuarterlySeries:
    """Read one column of a quarterly CSV into a series.

    Rows may come in any order. ``value_column`` defaults to the first
    non-date column.

    Raises
    ------
    ParseError
        Unreadable date or number (with its row number), or missing column.
    GapError
        Quarters missing inside the covered range.
    """
    source = str(path)
    header, rows = _read_rows(path)
    if date_column not in header:
        raise ParseError(f"no column {date_column!r}", source)
    if value_column is None:
        others = [h for h in header if h != date_column]
        if not others:
            raise ParseError("no value column", source)
        value_column = others[0]
    if value_column not in header:
        raise ParseError(f"no column {value_column!r}", source)
    di, vi = header.index(date_column), header.index(value_column)
    if not rows:
        raise InsufficientData(f"{source}: no data rows")
    pairs = []
    for lineno, r in rows:
        if len(r) != len(header):
            raise ParseError(f"expected {len(header)} cells, got {len(r)}", source, lineno)
        pairs.append((_parse_date(r[di], source, lineno), _parse_number(r[vi], source, lineno)))
    _contiguous([q for q, _ in pairs], source)
    pairs.sort(key=lambda p: p[0])
    return QuarterlySeries(pairs[0][0], [v for _, v in pairs])


def format_number(v: float) -> str:
    """Shortest text that reads back to the same double."""
    return repr(float(v))


def write_series_csv(path: str | os.PathLike, columns: Mapping[str, QuarterlySeries], fmt=format_number) -> None:
    """Write aligned series side by side under a ``date`` column."""
    series = list(columns.values())
    first = series[0]
    for s in series[1:]:
        if s.start != first.start or len(s) != len(first):
            raise ValueError("columns must share one range")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["date", *columns])
        for i, q in enumerate(first.quarters()):
            w.writerow([str(q), *(fmt(s.values[i]) for s in series)])


# -- share panels --------------------------------------------------------------


@dataclass(frozen=True)
class SharePanel:
    """Per-quarter sector shares for one region and one measure."""

    shares: Mapping[Quarter, SectorShares]
    labels: tuple[str, ...]
    dropped: tuple[Quarter, ...] = ()

    def __post_init__(self) -> None:
        want = frozenset(self.labels)
        for q, s in self.shares.items():
            if s.labels != want:
                raise DomainError(f"{q}: sector labels differ from the panel's")

    def __getitem__(self, q: Quarter) -> SectorShares:
        return self.shares[q]

    def __len__(self) -> int:
        return len(self.shares)

    def quarters(self) -> list[Quarter]:
        return sorted(self.shares)


def read_share_panel_csv(path: str | os.PathLike, normalize: bool = True, date_column: str = "date") -> SharePanel:
    """Read a wide CSV with one column per sector.

    With ``normalize`` each row is divided by its sum, so percent and
    fraction inputs both work. Without it each row must already sum to one.
    A row with an empty cell is dropped and logged.

    Raises
    ------
    DomainError
        Negative share or a row summing to zero.
    """
    source = str(path)
    header, rows = _read_rows(path)
    if date_column not in header:
        raise ParseError(f"no column {date_column!r}", source)
    di = header.index(date_column)
    labels = tuple(h for h in header if h != date_column)
    if not labels:
        raise ParseError("no sector columns", source)
    shares: dict[Quarter, SectorShares] = {}
    dropped = []
    for lineno, r in rows:
        if len(r) != len(header):
            raise ParseError(f"expected {len(header)} cells, got {len(r)}", source, lineno)
        q = _parse_date(r[di], source, lineno)
        if q in shares:
            raise ParseError(f"duplicate quarter {q}", source, lineno)
        cells = {h: c.strip() for h, c in zip(header, r) if h != date_column}
        if any(c == "" for c in cells.values()):
            dropped.append(q)
            continue
        values = {h: _parse_number(c, source, lineno) for h, c in cells.items()}
        neg = [h for h, v in values.items() if v < 0]
        if neg:
            raise DomainError(f"{source}, row {lineno}: negative share in {neg}")
        if math.fsum(values.values()) == 0:
            raise DomainError(f"{source}, row {lineno}: shares sum to zero")
        try:
            shares[q] = SectorShares.normalized(values) if normalize else SectorShares(values)
        except DomainError as exc:
            raise DomainError(f"{source}, row {lineno}: {exc}") from None
    if dropped:
        log.warning("%s: dropped %d quarters with missing sector data: %s",
                    source, len(dropped), ", ".join(map(str, dropped)))
    return SharePanel(shares, labels, tuple(sorted(dropped)))


# -- remote fetch with cache ---------------------------------------------------


def params_hash(dataset_code: str, params: Mapping[str, object]) -> str:
    key = json.dumps({"code": dataset_code, "params": dict(params)}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(key.encode("utf-8")).hexdigest()[:16]


def cache_paths(cache_dir: str | os.PathLike, dataset_code: str, params: Mapping[str, object]) -> tuple[Path, Path]:
    h = params_hash(dataset_code, params)
    base = Path(cache_dir) / dataset_code
    return base / f"{h}.csv", base / f"{h}.meta"


def offline() -> bool:
    return os.environ.get(OFFLINE_ENV, "") == "1"


def sdmx_csv_to_series_csv(payload: str, name: str) -> str:
    """Convert an SDMX-CSV payload (``TIME_PERIOD``, ``OBS_VALUE``) to the local schema."""
    reader = csv.DictReader(payload.splitlines())
    if reader.fieldnames is None or "TIME_PERIOD" not in reader.fieldnames or "OBS_VALUE" not in reader.fieldnames:
        raise ParseError("payload lacks TIME_PERIOD/OBS_VALUE columns", "remote payload")
    obs: dict[Quarter, float] = {}
    for i, row in enumerate(reader, start=2):
        period = row["TIME_PERIOD"].strip().replace("-", "")
        if not DATE_RE.match(period):
            raise ParseError(f"bad period {row['TIME_PERIOD']!r}", "remote payload", i)
        value = row["OBS_VALUE"].strip()
        if value == "":
            continue
        q = Quarter.parse(period)
        if q in obs:
            raise ParseError(f"more than one observation for {q}; narrow the filter", "remote payload", i)
        obs[q] = _parse_number(value, "remote payload", i)
    if not obs:
        raise ParseError("payload has no observations", "remote payload")
    lines = [f"date,{name}"]
    lines += [f"{q},{format_number(obs[q])}" for q in sorted(obs)]
    return "\n".join(lines) + "\n"


def _atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".part")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fetch_remote(
    dataset_code: str,
    filter_params: Mapping[str, object],
    cache_dir: str | os.PathLike,
    base_url: str = DEFAULT_BASE_URL,
    timeout: float = 30.0,
) -> Path:
    """Return a cached local CSV for a remote dataset, downloading on a miss.

    The cache key is ``(dataset_code, filter_params)``; a hit never touches
    the network. With ``CYCLEGAP_OFFLINE=1`` a miss raises instead of
    downloading.

    Raises
    ------
    FetchError
        Download failed (carrying the HTTP status when there was one) or
        offline mode with a cold cache.
    ParseError
        The payload could not be converted.
    """
    csv_path, meta_path = cache_paths(cache_dir, dataset_code, filter_params)
    if csv_path.exists():
        return csv_path
    if offline():
        raise FetchError(f"{dataset_code}: not cached and {OFFLINE_ENV}=1 forbids network access")
    query = {"format": "SDMX-CSV", **{k: str(v) for k, v in sorted(filter_params.items())}}
    url = f"{base_url.rstrip('/')}/{urllib.parse.quote(dataset_code)}?{urllib.parse.urlencode(query)}"
    try:
        with urllib.request.urlopen(url, timeout=timeout) as resp:
            payload = resp.read().decode("utf-8")
    except urllib.error.HTTPError as exc:
        raise FetchError(f"{dataset_code}: server refused the request", exc.code) from None
    except (urllib.error.URLError, OSError) as exc:
        raise FetchError(f"{dataset_code}: network failure: {exc}") from None
    converted = sdmx_csv_to_series_csv(payload, dataset_code)
    meta = {
        "dataset": dataset_code,
        "params": dict(filter_params),
        "retrieved": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "source_url": url,
    }
    _atomic_write(csv_path, converted.encode("utf-8"))
    _atomic_write(meta_path, (json.dumps(meta, indent=2, sort_keys=True) + "\n").encode("utf-8"))
    return csv_path


# -- approximate seasonal adjustment -------------------------------------------


def deseasonalize_ma(s: QuarterlySeries, multiplicative: bool = False) -> QuarterlySeries:
    """Classical moving-average seasonal adjustment (an approximation only).

    A centred 2x4 moving average estimates the trend on interior points; the
    mean deviation (or ratio) from it per calendar quarter, normalised to
    sum to zero (or average one), is removed from every observation. Reports
    built from its output should carry the ``approximate-SA`` label.
    """
    n = len(s)
    if n < 8:
        raise InsufficientData("moving-average seasonal adjustment needs at least 8 quarters")
    y = s.values
    if multiplicative and np.any(y <= 0):
        raise DomainError("multiplicative adjustment needs positive values")
    ma = (0.5 * y[:-4] + y[1:-3] + y[2:-2] + y[3:-1] + 0.5 * y[4:]) / 4.0
    interior = np.arange(2, n - 2)
    dev = y[interior] / ma if multiplicative else y[interior] - ma
    quarters = np.array([(s.start + int(i)).quarter for i in interior])
    factors = np.array([dev[quarters == q].mean() for q in (1, 2, 3, 4)])
    if multiplicative:
        factors = factors / factors.mean()
    else:
        factors = factors - factors.mean()
    per_obs = np.array([factors[(s.start + i).quarter - 1] for i in range(n)])
    return s.with_values(y / per_obs if multiplicative else y - per_obs)


# -- manifest ------------------------------------------------------------------

REQUIRED_VARIABLES = (
    "gdp_ro", "gdp_ea",
    "gva_shares_ro", "gva_shares_ea",
    "wage_shares_ro", "wage_shares_ea",
    "imports_ro", "exports_ro", "gdp_nominal_ro",
    "gdpcap_ro", "gdpcap_ea",
)
SHARE_VARIABLES = frozenset({"gva_shares_ro", "gva_shares_ea", "wage_shares_ro", "wage_shares_ea"})


@dataclass(frozen=True)
class VariableSource:
    """Where one input comes from and how to read it."""

    name: str
    path: str | None = None
    dataset: str | None = None
    params: Mapping[str, object] = field(default_factory=dict)
    column: str | None = None
    unit: str = ""
    share_normalization: bool = True
    deseasonalize: bool = False

    @classmethod
    def from_dict(cls, name: str, d: Mapping) -> VariableSource:
        allowed = {"path", "dataset", "params", "column", "unit", "share_normalization", "deseasonalize"}
        unknown = set(d) - allowed
        if unknown:
            raise ValueError(f"variable {name!r}: unknown keys {sorted(unknown)}")
        if ("path" in d) == ("dataset" in d):
            raise ValueError(f"variable {name!r}: give exactly one of 'path' or 'dataset'")
        return cls(name=name, **d)


@dataclass(frozen=True)
class DatasetManifest:
    """Inputs of the divergence model and the sample they cover."""

    variables: Mapping[str, VariableSource]
    sample_start: Quarter
    sample_end: Quarter
    base_year: str = ""
    note: str = ""
    root: Path = Path(".")

    @classmethod
    def load(cls, path: str | os.PathLike) -> DatasetManifest:
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ParseError("manifest not found", str(path)) from None
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}", str(path)) from None
        unknown = set(raw) - {"variables", "sample", "base_year", "note"}
        if unknown:
            raise ParseError(f"unknown manifest keys {sorted(unknown)}", str(path))
        try:
            variables = {k: VariableSource.from_dict(k, v) for k, v in raw["variables"].items()}
            sample = raw["sample"]
            start, end = Quarter.parse(sample["start"]), Quarter.parse(sample["end"])
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"malformed manifest: {exc}", str(path)) from None
        missing = [v for v in REQUIRED_VARIABLES if v not in variables]
        if missing:
            raise ParseError(f"manifest lacks variables {missing}", str(path))
        return cls(variables, start, end, str(raw.get("base_year", "")), str(raw.get("note", "")), path.parent)

    def resolve(self, name: str, cache_dir: str | os.PathLike | None = None) -> Path:
        v = self.variables[name]
        if v.path is not None:
            p = Path(v.path)
            return p if p.is_absolute() else self.root / p
        cache = Path(cache_dir) if cache_dir is not None else self.root / "cache"
        return fetch_remote(v.dataset, v.params, cache)

    def load_series(self, name: str, cache_dir=None) -> QuarterlySeries:
        v = self.variables[name]
        s = read_series_csv(self.resolve(name, cache_dir), value_column=v.column)
        if v.deseasonalize:
            s = deseasonalize_ma(s)
        return s

    def load_panel(self, name: str, cache_dir=None) -> SharePanel:
        v = self.variables[name]
        return read_share_panel_csv(self.resolve(name, cache_dir), normalize=v.share_normalization)

    def approximate_sa(self) -> list[str]:
        """Variables that went through the moving-average adjustment."""
        return [k for k, v in self.variables.items() if v.deseasonalize]
