"""Distribution and survival functions for the test statistics.

Every ``*_sf`` returns the upper-tail probability ``P(X > x)``; every
``*_cdf`` returns ``P(X <= x)``. The pair is evaluated together from the
incomplete gamma/beta functions so neither side suffers cancellation.
"""

from __future__ import annotations

import math

from ..errors import DomainError
from .special import betainc_pair, gammainc_lower, gammainc_upper

_SQRT2 = math.sqrt(2.0)


def _check_df(df: float, name: str = "df") -> float:
    df = float(df)
    if not math.isfinite(df) or df < 1:
        raise DomainError(f"{name} must be a finite number >= 1, got {df}")
    return df


def _check_x(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x}")
    return x


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-_check_x(x) / _SQRT2)


def normal_sf(x: float) -> float:
    return 0.5 * math.erfc(_check_x(x) / _SQRT2)


def _t_tails(x: float, df: float) -> tuple[float, float]:
    # (cdf, sf) of Student's t
    x = _check_x(x)
    df = _check_df(df)
    if x == 0.0:
        return 0.5, 0.5
    t2 = x * x
    denom = df + t2
    # I_{df/(df+t^2)}(df/2, 1/2) is P(|T| > |x|); pick the better-conditioned argument
    z, zc = df / denom, t2 / denom
    if z <= 0.5:
        tail, _ = betainc_pair(df / 2.0, 0.5, z)
    else:
        _, tail = betainc_pair(0.5, df / 2.0, zc)
    half = 0.5 * tail
    if x > 0:
        return 1.0 - half, half
    return half, 1.0 - half


def student_t_sf(x: float, df: float) -> float:
    return _t_tails(x, df)[1]


def student_t_cdf(x: float, df: float) -> float:
    return _t_tails(x, df)[0]


def student_t_two_sided(t: float, df: float) -> float:
    """``P(|T| > |t|)``, the usual regression p-value."""
    return min(1.0, 2.0 * student_t_sf(abs(t), df))


def chi_square_sf(x: float, df: float) -> float:
    x = _check_x(x)
    df = _check_df(df)
    if x < 0:
        raise DomainError(f"chi-square support is x >= 0, got {x}")
    return gammainc_upper(df / 2.0, x / 2.0)


def chi_square_cdf(x: float, df: float) -> float:
    x = _check_x(x)
    df = _check_df(df)
    if x < 0:
        raise DomainError(f"chi-square support is x >= 0, got {x}")
    return gammainc_lower(df / 2.0, x / 2.0)


def _f_tails(x: float, df1: float, df2: float) -> tuple[float, float]:
    x = _check_x(x)
    df1 = _check_df(df1, "df1")
    df2 = _check_df(df2, "df2")
    if x < 0:
        raise DomainError(f"F support is x >= 0, got {x}")
    if x == 0.0:
        return 0.0, 1.0
    num = df1 * x
    denom = num + df2
    z, zc = num / denom, df2 / denom
    if z <= 0.5:
        return betainc_pair(df1 / 2.0, df2 / 2.0, z)
    sf, cdf = betainc_pair(df2 / 2.0, df1 / 2.0, zc)
    return cdf, sf


def f_sf(x: float, df1: float, df2: float) -> float:
    return _f_tails(x, df1, df2)[1]


def f_cdf(x: float, df1: float, df2: float) -> float:
    return _f_tails(x, df1, df2)[0]
