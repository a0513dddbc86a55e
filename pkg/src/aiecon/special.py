"""Regularized incomplete beta function and Student-t tail probabilities.

The continued fraction for I_x(a, b) is evaluated with the modified Lentz
method. Callers that know ``1 - x`` exactly (the t distribution does) pass it
in so the complement branch does not lose digits to cancellation.
"""
from __future__ import annotations

import math

CF_RTOL = 1e-14
CF_MAX_ITER = 300
_TINY = 1e-300


class ConvergenceError(ArithmeticError):
    pass


def _lbeta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction part of I_x(a, b); converges fast for x < (a+1)/(a+b+2)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, CF_MAX_ITER + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < CF_RTOL:
            return h
    raise ConvergenceError(
        f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})"
    )


def betainc(a: float, b: float, x: float, xc: float | None = None) -> float:
    """Regularized incomplete beta I_x(a, b) for a, b > 0 and 0 <= x <= 1.

    ``xc`` is ``1 - x``, computed by the caller if it can do so accurately.
    """
    if not (a > 0 and b > 0):
        raise ValueError(f"betainc needs a, b > 0 (got a={a}, b={b})")
    if xc is None:
        xc = 1.0 - x
    if not (0.0 <= x <= 1.0 and 0.0 <= xc <= 1.0):
        raise ValueError(f"betainc needs 0 <= x <= 1 (got x={x})")
    if x == 0.0:
        return 0.0
    if xc == 0.0:
        return 1.0
    front = math.exp(a * math.log(x) + b * math.log(xc) - _lbeta(a, b))
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, xc) / b


def student_t_sf(t: float, df: float) -> float:
    """P(T > t) for Student's t with ``df`` degrees of freedom."""
    if df <= 0:
        raise ValueError(f"degrees of freedom must be positive, got {df}")
    if math.isnan(t):
        raise ValueError("t is NaN")
    if t == 0:
        return 0.5
    t2 = t * t
    if math.isinf(t2):
        tail = 0.0
    else:
        denom = df + t2
        tail = 0.5 * betainc(0.5 * df, 0.5, df / denom, t2 / denom)
    return tail if t > 0 else 1.0 - tail


def two_sided_p(t: float, df: float) -> float:
    """P = 2 * P(T > |t|)."""
    return min(1.0, 2.0 * student_t_sf(abs(t), df))


def t_for_two_sided_p(p: float, df: float) -> float:
    """Inverse of :func:`two_sided_p` in |t| by bisection (p in (0, 1])."""
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    if p == 1:
        return 0.0
    lo, hi = 0.0, 1.0
    while two_sided_p(hi, df) > p:
        hi *= 2.0
        if hi > 1e300:
            raise ConvergenceError(f"no finite t gives p={p} at df={df}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if two_sided_p(mid, df) > p:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    return 0.5 * (lo + hi)
