"""Simple log-log regression: OLS slope/intercept, Pearson r, R², t test.

All centered sums are computed in two passes (means first) with
``math.fsum``. Sample vs population normalizers cancel in b1, r and R², so
none is applied.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Sequence

from .errors import (
    DegenerateRegressorError,
    DegenerateSeriesError,
    InfiniteStatisticError,
    NonPositiveValueError,
)
from .special import student_t_sf, t_for_two_sided_p, two_sided_p

__all__ = [
    "SeriesPair",
    "RegressionResult",
    "AuditReport",
    "log_transform",
    "ols_fit",
    "pearson_r",
    "r_squared",
    "t_statistic",
    "student_t_sf",
    "two_sided_p",
    "regress_loglog",
    "audit_reported",
]

# 1 - r² at or below this is indistinguishable from rounding noise in r
PERFECT_FIT_TOL = 1e-14
PERFECT_FIT_P_DISPLAY = "< 1e-15"

UNREPRODUCIBLE_SLOPE_NOTE = (
    "The published 23.9% slope cannot be recomputed: the annual 2011-2022 "
    "Georgia series (vector magnitude, GDP per capita) is not published. "
    "Only the reported (n, R², p) triple is audited."
)


@dataclass(frozen=True)
class SeriesPair:
    x: tuple[float, ...]
    y: tuple[float, ...]
    labels: tuple[Hashable, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        object.__setattr__(self, "y", tuple(float(v) for v in self.y))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(len(self.x))))
        else:
            object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.x) != len(self.y):
            raise ValueError(f"x and y differ in length ({len(self.x)} vs {len(self.y)})")
        if len(self.labels) != len(self.x):
            raise ValueError("labels and series differ in length")
        if len(self.x) < 3:
            raise ValueError(f"need at least 3 points, got {len(self.x)}")
        if not all(map(math.isfinite, self.x + self.y)):
            raise ValueError("series contain non-finite values")

    @property
    def n(self) -> int:
        return len(self.x)


def _centered(values: Sequence[float]) -> tuple[float, list[float]]:
    mean = math.fsum(values) / len(values)
    return mean, [v - mean for v in values]


def _sums(pair: SeriesPair):
    xbar, dx = _centered(pair.x)
    ybar, dy = _centered(pair.y)
    sxy = math.fsum(a * b for a, b in zip(dx, dy))
    sxx = math.fsum(a * a for a in dx)
    syy = math.fsum(b * b for b in dy)
    return xbar, ybar, sxx, syy, sxy


def log_transform(values: Sequence[float]) -> list[float]:
    """Element-wise natural log; every value must be > 0."""
    out = []
    for i, v in enumerate(values):
        if not v > 0:
            raise NonPositiveValueError(i, v)
        out.append(math.log(v))
    return out


def ols_fit(pair: SeriesPair) -> tuple[float, float]:
    """Return ``(slope, intercept)`` of the least-squares line y = b0 + b1 x."""
    xbar, ybar, sxx, _, sxy = _sums(pair)
    if sxx == 0:
        raise DegenerateRegressorError("regressor has zero variance (all x equal)")
    b1 = sxy / sxx
    return b1, ybar - b1 * xbar


def pearson_r(pair: SeriesPair) -> float:
    _, _, sxx, syy, sxy = _sums(pair)
    if sxx == 0 or syy == 0:
        which = "x" if sxx == 0 else "y"
        raise DegenerateSeriesError(f"series {which} has zero variance")
    prod = sxx * syy
    if math.isfinite(prod) and prod > 1e-300:
        r = sxy / math.sqrt(prod)
    else:
        r = sxy / (math.sqrt(sxx) * math.sqrt(syy))
    return max(-1.0, min(1.0, r))


def r_squared(r: float) -> float:
    return r * r


def t_statistic(r: float, n: int) -> float:
    """Slope test statistic t = r sqrt(n-2) / sqrt(1-r²)."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if abs(r) >= 1:
        raise InfiniteStatisticError(f"|r| = {abs(r)}: perfect fit, t is infinite")
    return r * math.sqrt(n - 2) / math.sqrt(1.0 - r * r)


@dataclass(frozen=True)
class RegressionResult:
    slope_b1: float
    intercept_b0: float
    pearson_r: float
    r_squared: float
    t_stat: float
    df: int
    p_value: float
    n: int
    perfect_fit: bool = False
    labels: tuple = field(default=(), compare=False, repr=False)

    @property
    def p_display(self) -> str:
        return PERFECT_FIT_P_DISPLAY if self.perfect_fit else f"{self.p_value:.6g}"


def regress(pair: SeriesPair) -> RegressionResult:
    """OLS + Pearson + t test on an already-transformed pair."""
    b1, b0 = ols_fit(pair)
    r = pearson_r(pair)
    r2 = r_squared(r)
    n = pair.n
    if 1.0 - r2 <= PERFECT_FIT_TOL:
        t, p, perfect = math.copysign(math.inf, r), 0.0, True
    else:
        t = t_statistic(r, n)
        p, perfect = two_sided_p(t, n - 2), False
    return RegressionResult(b1, b0, r, r2, t, n - 2, p, n, perfect, pair.labels)


def regress_loglog(
    x_raw: Sequence[float],
    y_raw: Sequence[float],
    labels: Sequence[Hashable] = (),
    swap_axes: bool = False,
) -> RegressionResult:
    """Regress ln(y) on ln(x); ``swap_axes`` regresses ln(x) on ln(y)."""
    if len(x_raw) != len(y_raw):
        raise ValueError(f"x and y differ in length ({len(x_raw)} vs {len(y_raw)})")
    lx, ly = log_transform(x_raw), log_transform(y_raw)
    if swap_axes:
        lx, ly = ly, lx
    return regress(SeriesPair(lx, ly, tuple(labels)))


@dataclass(frozen=True)
class AuditReport:
    n: int
    df: int
    r_squared_reported: float
    p_reported: float
    implied_t: float
    implied_p: float | None
    ratio: float | None
    rel_diff: float | None
    rel_tol: float
    verdict: str
    perfect_fit: bool
    consistent_r_squared: float
    note: str = UNREPRODUCIBLE_SLOPE_NOTE


def audit_reported(
    n: int, r_squared_reported: float, p_reported: float, rel_tol: float = 0.25
) -> AuditReport:
    """Check whether a reported (n, R², p) triple fits the standard slope t test.

    The implied p comes from |t| = sqrt(R² (n-2) / (1-R²)). The verdict is
    CONSISTENT when |implied - reported| / reported <= ``rel_tol``.
    ``consistent_r_squared`` is the R² that would produce the reported p.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if not 0 <= r_squared_reported <= 1:
        raise ValueError(f"R² must lie in [0, 1], got {r_squared_reported}")
    if not 0 < p_reported <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p_reported}")
    df = n - 2
    t_needed = t_for_two_sided_p(p_reported, df)
    consistent_r2 = t_needed**2 / (t_needed**2 + df)

    if r_squared_reported == 1:
        return AuditReport(
            n, df, r_squared_reported, p_reported, math.inf, None, None, None,
            rel_tol, "PERFECT_FIT", True, consistent_r2,
        )
    t = math.sqrt(r_squared_reported * df / (1.0 - r_squared_reported))
    p = two_sided_p(t, df)
    rel = abs(p - p_reported) / p_reported
    verdict = "CONSISTENT" if rel <= rel_tol else "INCONSISTENT"
    return AuditReport(
        n, df, r_squared_reported, p_reported, t, p, p / p_reported, rel,
        rel_tol, verdict, False, consistent_r2,
    )
