"""Six-component AI factor vector and its Euclidean magnitude.

Components are used as given: technology level in index points next to
fractions in [0, 1]. The magnitude is therefore dominated by the technology
level, which is what the published magnitudes show.
"""
from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields
from typing import Sequence

from .composite import TechnologyLevel
from .errors import MissingIndicatorError, RangeError
from .panel import FactorProfile

FRACTION_FIELDS = ("ai_adoption", "ai_productivity", "market_demand", "regulatory_environment")

# vector field -> panel indicator key
PROFILE_KEYS = {
    "ai_adoption": "ai_adoption_rate",
    "ai_workforce": "ai_workforce",
    "ai_productivity": "ai_productivity",
    "market_demand": "ai_market_demand",
    "regulatory_environment": "ai_regulatory_environment",
}


@dataclass(frozen=True)
class AIFactorVector:
    country: str
    technological_development: float
    ai_adoption: float
    ai_workforce: float
    ai_productivity: float
    market_demand: float
    regulatory_environment: float

    def __post_init__(self):
        for f in fields(self)[1:]:
            v = getattr(self, f.name)
            if not math.isfinite(v) or v < 0:
                raise RangeError(f"{self.country}: {f.name} must be finite and >= 0, got {v!r}")
            if f.name in FRACTION_FIELDS and v > 1:
                raise RangeError(
                    f"{self.country}: {f.name} is a fraction and must lie in [0, 1], got {v!r}"
                )

    @property
    def components(self) -> tuple[float, ...]:
        return astuple(self)[1:]


@dataclass(frozen=True)
class VectorMagnitude:
    country: str
    value: float


def build_vector(
    country: str, tech_level: TechnologyLevel | float, ai_factors: FactorProfile
) -> AIFactorVector:
    tech = tech_level.value if isinstance(tech_level, TechnologyLevel) else float(tech_level)
    values = {}
    for name, key in PROFILE_KEYS.items():
        if key not in ai_factors.factors:
            raise MissingIndicatorError(key, country)
        values[name] = ai_factors.factors[key]
    return AIFactorVector(country=country, technological_development=tech, **values)


def euclidean_norm(components: Sequence[float]) -> float:
    # hypot scales internally, so large components do not overflow when squared
    return math.hypot(*components)


def magnitude(v: AIFactorVector) -> VectorMagnitude:
    return VectorMagnitude(v.country, euclidean_norm(v.components))


def minmax_normalize(vectors: Sequence[AIFactorVector]) -> list[AIFactorVector]:
    """Rescale each component to [0, 1] across ``vectors``.

    Optional preprocessing only; constant components map to 0.
    """
    if not vectors:
        return []
    cols = list(zip(*(v.components for v in vectors)))
    spans = [(min(c), max(c)) for c in cols]
    out = []
    for v in vectors:
        scaled = [
            (x - lo) / (hi - lo) if hi > lo else 0.0
            for x, (lo, hi) in zip(v.components, spans)
        ]
        out.append(AIFactorVector(v.country, *scaled))
    return out
