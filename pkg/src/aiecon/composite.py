"""Geometric-mean composite index (the per-country technology level)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    EmptyAfterPolicyError,
    MissingIndicatorError,
    NegativeFactorError,
    ZeroFactorError,
)
from .panel import TECH_FACTOR_KEYS, FactorProfile


@dataclass(frozen=True)
class ZeroPolicy:
    """What to do with factors that are exactly zero.

    ``reject`` raises, ``exclude`` drops the factor from the mean, ``epsilon``
    substitutes ``epsilon`` for it.
    """

    mode: str = "reject"
    epsilon: float | None = None

    def __post_init__(self):
        if self.mode not in ("reject", "exclude", "epsilon"):
            raise ValueError(f"unknown zero policy {self.mode!r}")
        if self.mode == "epsilon":
            if self.epsilon is None or not (self.epsilon > 0 and math.isfinite(self.epsilon)):
                raise ValueError("epsilon policy needs a finite epsilon > 0")

    @classmethod
    def parse(cls, text: str) -> "ZeroPolicy":
        """``reject``, ``exclude`` or ``epsilon=<v>``."""
        if text.startswith("epsilon="):
            return cls("epsilon", float(text.split("=", 1)[1]))
        return cls(text)

    def __str__(self) -> str:
        return f"epsilon={self.epsilon!r}" if self.mode == "epsilon" else self.mode


REJECT = ZeroPolicy()


@dataclass(frozen=True)
class TechnologyLevel:
    country: str
    value: float
    n_factors: int
    excluded_factors: tuple[str, ...] = ()


def _apply_policy(factors: Sequence[float], policy: ZeroPolicy) -> tuple[list[float], list[int]]:
    kept, dropped = [], []
    for i, f in enumerate(factors):
        if not math.isfinite(f):
            raise ValueError(f"factor at position {i} is not finite ({f!r})")
        if f < 0:
            raise NegativeFactorError(i, f)
        if f == 0:
            if policy.mode == "reject":
                raise ZeroFactorError(i)
            if policy.mode == "exclude":
                dropped.append(i)
                continue
            f = policy.epsilon
        kept.append(f)
    return kept, dropped


def _log_mean_exp(values: list[float]) -> float:
    # fsum is correctly rounded, so the result does not depend on input order
    g = math.exp(math.fsum(math.log(v) for v in values) / len(values))
    # exp(log(c)) can land one ulp off c; keep the mean inside its inputs
    return min(max(g, min(values)), max(values))


def geometric_mean(factors: Sequence[float], policy: ZeroPolicy = REJECT) -> float:
    """n-th root of the product of ``factors``, evaluated in log space."""
    if len(factors) == 0:
        raise ValueError("geometric mean of an empty list")
    kept, _ = _apply_policy(factors, policy)
    if not kept:
        raise EmptyAfterPolicyError("every factor was excluded by the zero policy")
    return _log_mean_exp(kept)


def technology_level(
    profile: FactorProfile,
    policy: ZeroPolicy = REJECT,
    strict: bool = True,
    keys: Sequence[str] | None = None,
) -> TechnologyLevel:
    """Technology level of one country from its aggregated factor profile.

    Strict mode uses the six canonical technology indicators in their fixed
    order. Lenient mode takes ``keys`` if given, otherwise every factor in the
    profile.
    """
    if strict:
        keys = TECH_FACTOR_KEYS
    elif keys is None:
        keys = sorted(profile.factors)
    if not keys:
        raise MissingIndicatorError("<any factor>", profile.country)
    for key in keys:
        if key not in profile.factors:
            raise MissingIndicatorError(key, profile.country)

    values = [profile.factors[k] for k in keys]
    try:
        kept, dropped = _apply_policy(values, policy)
    except ZeroFactorError as exc:
        raise ZeroFactorError(exc.position, keys[exc.position], profile.country) from None
    if not kept:
        raise EmptyAfterPolicyError(
            f"{profile.country}: every factor was excluded by the zero policy"
        )
    return TechnologyLevel(
        country=profile.country,
        value=_log_mean_exp(kept),
        n_factors=len(kept),
        excluded_factors=tuple(keys[i] for i in dropped),
    )
