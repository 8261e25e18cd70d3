"""Ordinary least squares with the full set of summary statistics.

``k`` counts every estimated parameter, the intercept included. The
information criteria are reported per observation::

    AIC = (-2 LL + 2 k) / n
    SC  = (-2 LL + k ln n) / n
    HQ  = (-2 LL + 2 k ln ln n) / n

with the Gaussian log-likelihood ``LL = -(n/2)(1 + ln 2 pi + ln(SSR/n))``.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateFit, DomainError, InsufficientData
from .numerics.distributions import f_sf, student_t_two_sided
from .numerics.linalg import as_matrix, qr_factor
from .series import Quarter, QuarterlySeries, SeriesFrame, align, lag, log_transform

TRANSFORMS = ("log", "level")


@dataclass(frozen=True)
class Regressor:
    """One right-hand-side term: ``transform(name)`` lagged ``lag`` quarters."""

    name: str
    transform: str = "log"
    lag: int = 0

    def __post_init__(self) -> None:
        if self.transform not in TRANSFORMS:
            raise ValueError(f"unknown transform {self.transform!r}; expected one of {TRANSFORMS}")
        if self.lag < 0:
            raise ValueError("lag must be non-negative")

    @property
    def label(self) -> str:
        inner = self.name.upper()
        if self.lag:
            inner = f"{inner}(-{self.lag})"
        return f"LOG({inner})" if self.transform == "log" else inner

    def build(self, data: Mapping[str, QuarterlySeries] | SeriesFrame) -> QuarterlySeries:
        if self.name not in data:
            raise KeyError(f"variable {self.name!r} not in data")
        s = data[self.name]
        if self.transform == "log":
            s = log_transform(s)
        return lag(s, self.lag)


@dataclass(frozen=True)
class RegressionSpec:
    """Dependent term, ordered regressors, and whether to add an intercept.

    The intercept, when present, is placed last, labelled ``C``.
    """

    dependent: Regressor
    regressors: tuple[Regressor, ...] = ()
    include_intercept: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "regressors", tuple(self.regressors))
        labels = [r.label for r in self.regressors]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate regressors: {labels}")
        if not self.regressors and not self.include_intercept:
            raise ValueError("a regression needs at least one regressor or an intercept")

    @property
    def labels(self) -> list[str]:
        out = [r.label for r in self.regressors]
        if self.include_intercept:
            out.append("C")
        return out

    @classmethod
    def divergence_model(cls) -> RegressionSpec:
        """Log divergence on its own lag and the four convergence drivers."""
        return cls(
            dependent=Regressor("ogdiv"),
            regressors=(
                Regressor("ogdiv", lag=1),
                Regressor("ecstructureconv"),
                Regressor("openness"),
                Regressor("wagestructureconv"),
                Regressor("realgdpcapconv"),
            ),
        )

    def to_dict(self) -> dict:
        def term(r: Regressor) -> dict:
            return {"name": r.name, "transform": r.transform, "lag": r.lag}

        return {
            "dependent": term(self.dependent),
            "regressors": [term(r) for r in self.regressors],
            "include_intercept": self.include_intercept,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> RegressionSpec:
        unknown = set(d) - {"dependent", "regressors", "include_intercept"}
        if unknown:
            raise ValueError(f"unknown regression keys: {sorted(unknown)}")
        return cls(
            dependent=Regressor(**d["dependent"]),
            regressors=tuple(Regressor(**r) for r in d.get("regressors", ())),
            include_intercept=bool(d.get("include_intercept", True)),
        )


@dataclass(frozen=True)
class Coefficient:
    name: str
    estimate: float
    std_error: float
    t_stat: float
    p_value: float


@dataclass(frozen=True)
class SummaryStatistics:
    n: int
    k: int
    r_squared: float
    adj_r_squared: float
    se_of_regression: float
    ssr: float
    log_likelihood: float
    aic: float
    schwarz: float
    hannan_quinn: float
    durbin_watson: float
    f_stat: float | None
    f_prob: float | None
    mean_dep: float
    sd_dep: float


@dataclass(frozen=True)
class RegressionResult:
    """Estimates, standard errors and summary statistics of one fit."""

    dependent: str
    coefficients: tuple[Coefficient, ...]
    stats: SummaryStatistics
    residuals: np.ndarray
    design: np.ndarray
    endog: np.ndarray
    xtx_inv: np.ndarray
    has_intercept: bool
    sample_start: Quarter | None = None
    degenerate: bool = False
    spec: RegressionSpec | None = field(default=None, compare=False)

    def __getattr__(self, name: str):
        # expose summary statistics as attributes: result.r_squared, ...
        stats = self.__dict__.get("stats")
        if stats is not None and name in SummaryStatistics.__dataclass_fields__:
            return getattr(stats, name)
        raise AttributeError(name)

    def __getitem__(self, name: str) -> Coefficient:
        for c in self.coefficients:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.coefficients]

    @property
    def params(self) -> np.ndarray:
        return np.array([c.estimate for c in self.coefficients])

    @property
    def bse(self) -> np.ndarray:
        return np.array([c.std_error for c in self.coefficients])

    @property
    def sample_end(self) -> Quarter | None:
        if self.sample_start is None:
            return None
        return self.sample_start + (self.stats.n - 1)

    @property
    def residual_series(self) -> QuarterlySeries | None:
        if self.sample_start is None:
            return None
        return QuarterlySeries(self.sample_start, self.residuals)

    @property
    def fitted(self) -> np.ndarray:
        return self.endog - self.residuals


# -- scalar summary formulas ------------------------------------------------


def se_of_regression(ssr: float, n: int, k: int) -> float:
    return math.sqrt(ssr / (n - k))


def adjusted_r_squared(r_squared: float, n: int, k: int) -> float:
    return 1.0 - (1.0 - r_squared) * (n - 1) / (n - k)


def gaussian_loglik(ssr: float, n: int) -> float:
    if not ssr > 0:
        raise DegenerateFit("log-likelihood is undefined when SSR = 0")
    return -0.5 * n * (1.0 + math.log(2.0 * math.pi) + math.log(ssr / n))


def information_criteria(log_likelihood: float, n: int, k: int) -> tuple[float, float, float]:
    """Per-observation ``(AIC, Schwarz, Hannan-Quinn)``."""
    m2ll = -2.0 * log_likelihood
    return (
        (m2ll + 2.0 * k) / n,
        (m2ll + k * math.log(n)) / n,
        (m2ll + 2.0 * k * math.log(math.log(n))) / n,
    )


def durbin_watson(residuals) -> float:
    e = np.asarray(residuals, dtype=np.float64)
    den = float(e @ e)
    if den == 0.0:
        raise DegenerateFit("Durbin-Watson is undefined for zero residuals")
    d = np.diff(e)
    return float(d @ d) / den


def f_statistic(r_squared: float, n: int, k: int) -> tuple[float, float]:
    """Overall significance F and its p-value for a model with intercept."""
    if k < 2:
        raise DomainError("the overall F test needs at least one slope")
    if r_squared >= 1.0:
        return math.inf, 0.0
    f = (r_squared / (k - 1)) / ((1.0 - r_squared) / (n - k))
    return f, f_sf(max(f, 0.0), k - 1, n - k)


def t_test(estimate: float, std_error: float, df: int) -> tuple[float, float]:
    if not std_error > 0:
        return math.nan, math.nan
    t = estimate / std_error
    if not math.isfinite(t):
        return t, math.nan
    return t, student_t_two_sided(t, df)


def summary_statistics(coefficients, residuals, X, y, has_intercept: bool = True) -> SummaryStatistics:
    """Every scalar a regression table reports.

    Raises
    ------
    DegenerateFit
        If the sum of squared residuals is zero.
    """
    e = np.asarray(residuals, dtype=np.float64)
    yv = np.asarray(y, dtype=np.float64)
    n, k = np.shape(X)
    ssr = float(e @ e)
    if not ssr > 0:
        raise DegenerateFit("sum of squared residuals is zero")
    mean_dep = float(yv.mean())
    tss = float(((yv - mean_dep) ** 2).sum()) if has_intercept else float(yv @ yv)
    r2 = 1.0 - ssr / tss if tss > 0 else math.nan
    ll = gaussian_loglik(ssr, n)
    aic, sc, hq = information_criteria(ll, n, k)
    if has_intercept and k > 1:
        f, fp = f_statistic(r2, n, k)
    else:
        f, fp = None, None
    return SummaryStatistics(
        n=n,
        k=k,
        r_squared=r2,
        adj_r_squared=adjusted_r_squared(r2, n, k),
        se_of_regression=se_of_regression(ssr, n, k),
        ssr=ssr,
        log_likelihood=ll,
        aic=aic,
        schwarz=sc,
        hannan_quinn=hq,
        durbin_watson=durbin_watson(e),
        f_stat=f,
        f_prob=fp,
        mean_dep=mean_dep,
        sd_dep=float(yv.std(ddof=1)) if n > 1 else math.nan,
    )


def _degenerate_statistics(residuals, X, y, has_intercept: bool) -> SummaryStatistics:
    e = np.asarray(residuals)
    yv = np.asarray(y)
    n, k = np.shape(X)
    ssr = float(e @ e)
    nan = math.nan
    return SummaryStatistics(
        n=n, k=k, r_squared=1.0, adj_r_squared=1.0,
        se_of_regression=se_of_regression(ssr, n, k), ssr=ssr,
        log_likelihood=nan, aic=nan, schwarz=nan, hannan_quinn=nan, durbin_watson=nan,
        f_stat=math.inf if has_intercept and k > 1 else None,
        f_prob=0.0 if has_intercept and k > 1 else None,
        mean_dep=float(yv.mean()), sd_dep=float(yv.std(ddof=1)) if n > 1 else nan,
    )


def _has_constant(X: np.ndarray) -> bool:
    return bool(np.any((np.ptp(X, axis=0) == 0) & (X[0] != 0)))


def fit_matrix(
    X,
    y,
    names: Sequence[str] | None = None,
    has_intercept: bool | None = None,
    sample_start: Quarter | str | None = None,
    dependent: str = "y",
) -> RegressionResult:
    """OLS on raw arrays.

    ``has_intercept`` defaults to whether ``X`` contains a non-zero constant
    column; it decides between centred and uncentred R-squared.
    """
    A = as_matrix(X)
    yv = np.asarray(y, dtype=np.float64).ravel()
    n, k = A.shape
    if yv.size != n:
        raise ValueError(f"y has {yv.size} rows, X has {n}")
    if n <= k:
        raise InsufficientData(f"{n} observations cannot identify {k} parameters")
    if names is None:
        names = [f"x{j}" for j in range(k)]
    if len(names) != k:
        raise ValueError("names must match the number of columns")
    if has_intercept is None:
        has_intercept = _has_constant(A)

    fac = qr_factor(A)
    b = fac.solve(yv)
    e = yv - A @ b
    xtx_inv = fac.xtx_inverse()
    ssr = float(e @ e)
    degenerate = math.sqrt(ssr) <= 1e-12 * max(1.0, float(np.linalg.norm(yv)))
    if degenerate:
        stats = _degenerate_statistics(e, A, yv, has_intercept)
    else:
        stats = summary_statistics(b, e, A, yv, has_intercept)

    s2 = ssr / (n - k)
    se = np.sqrt(s2 * np.diag(xtx_inv))
    coefs = []
    for name, est, sd in zip(names, b, se):
        t, p = t_test(float(est), float(sd), n - k)
        coefs.append(Coefficient(name, float(est), float(sd), t, p))
    start = None
    if sample_start is not None:
        start = sample_start if isinstance(sample_start, Quarter) else Quarter.parse(sample_start)
    return RegressionResult(
        dependent=dependent,
        coefficients=tuple(coefs),
        stats=stats,
        residuals=e,
        design=A,
        endog=yv,
        xtx_inv=xtx_inv,
        has_intercept=bool(has_intercept),
        sample_start=start,
        degenerate=degenerate,
    )


def build_design(spec: RegressionSpec, data: Mapping[str, QuarterlySeries] | SeriesFrame):
    """Transformed, lagged and aligned ``(y, X, start)`` for ``spec``.

    Lags are applied before alignment, so each lag order shortens the sample
    by that many quarters at the start.
    """
    terms = {"__dep__": spec.dependent.build(data)}
    for i, r in enumerate(spec.regressors):
        terms[f"__x{i}__"] = r.build(data)
    frame = align(**terms)
    y = frame["__dep__"].values
    cols = [frame[f"__x{i}__"].values for i in range(len(spec.regressors))]
    if spec.include_intercept:
        cols.append(np.ones(len(frame)))
    X = np.column_stack(cols)
    return y, X, frame.start


def fit(spec: RegressionSpec, data: Mapping[str, QuarterlySeries] | SeriesFrame) -> RegressionResult:
    """Estimate ``spec`` on ``data``.

    Raises
    ------
    RankDeficient
        Regressors are linearly dependent.
    InsufficientData
        The aligned sample has no more observations than parameters.
    NonPositiveValue
        A logged variable is zero or negative somewhere in the sample.
    """
    y, X, start = build_design(spec, data)
    res = fit_matrix(
        X, y, names=spec.labels, has_intercept=spec.include_intercept,
        sample_start=start, dependent=spec.dependent.label,
    )
    object.__setattr__(res, "spec", spec)
    return res
