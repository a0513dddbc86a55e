"""Long-format country indicator panels: CSV ingestion and period aggregation."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, TextIO

from .errors import (
    DegenerateWeightsError,
    DuplicateKeyError,
    MissingIndicatorError,
    ParseError,
    SchemaError,
)

HEADER = ("country", "indicator", "year", "value")

# Table 1 input rows, in the order they enter the technology level.
TECH_FACTOR_KEYS = (
    "innovation_index",
    "rnd_expenditure_pct_gdp",
    "it_exports_pct_goods",
    "high_tech_exports_musd",
    "high_tech_exports_pct_manufactured",
    "patent_applications_residents",
)

AI_FACTOR_KEYS = (
    "ai_adoption_rate",
    "ai_workforce",
    "ai_productivity",
    "ai_market_demand",
    "ai_regulatory_environment",
)

GDP_KEY = "gdp_per_capita_usd"
# Precomputed series: a technology level supplied directly, and a vector magnitude
# used as the regressor.
TECH_LEVEL_KEY = "technological_development"
MAGNITUDE_KEY = "vector_magnitude"

CANONICAL_KEYS = frozenset(
    TECH_FACTOR_KEYS + AI_FACTOR_KEYS + (GDP_KEY, TECH_LEVEL_KEY, MAGNITUDE_KEY)
)

MIN_YEAR, MAX_YEAR = 1900, 2100


@dataclass(frozen=True)
class IndicatorObservation:
    country: str
    indicator: str
    year: int
    value: float

    @property
    def key(self) -> tuple[str, str, int]:
        return (self.country, self.indicator, self.year)


@dataclass(frozen=True)
class IndicatorPanel:
    observations: tuple[IndicatorObservation, ...]
    _index: Mapping[tuple[str, str, int], float] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        index: dict[tuple[str, str, int], float] = {}
        for obs in self.observations:
            if obs.key in index:
                raise DuplicateKeyError(obs.key)
            index[obs.key] = obs.value
        object.__setattr__(self, "_index", MappingProxyType(index))

    @property
    def countries(self) -> frozenset[str]:
        return frozenset(o.country for o in self.observations)

    @property
    def year_range(self) -> tuple[int, int] | None:
        if not self.observations:
            return None
        years = [o.year for o in self.observations]
        return min(years), max(years)

    def indicators(self, country: str | None = None) -> frozenset[str]:
        return frozenset(
            o.indicator
            for o in self.observations
            if country is None or o.country == country
        )

    def series(self, country: str, indicator: str) -> dict[int, float]:
        """Year -> value for one country/indicator, sorted by year."""
        return {
            o.year: o.value
            for o in sorted(self.observations, key=lambda o: o.year)
            if o.country == country and o.indicator == indicator
        }

    def __len__(self) -> int:
        return len(self.observations)


@dataclass(frozen=True)
class WeightScheme:
    """Per-year weights for period averaging.

    In ``uniform`` mode every available year counts once. In ``explicit``
    mode a year absent from ``weights`` has weight zero.
    """

    mode: str = "uniform"
    weights: Mapping[int, float] | None = None

    def __post_init__(self):
        if self.mode not in ("uniform", "explicit"):
            raise ValueError(f"unknown weight mode {self.mode!r}")
        if self.mode == "explicit":
            if not self.weights:
                raise DegenerateWeightsError("explicit weight scheme needs weights")
            for year, w in self.weights.items():
                if not math.isfinite(w) or w < 0:
                    raise DegenerateWeightsError(f"weight for {year} must be finite and >= 0, got {w!r}")
            if not any(w > 0 for w in self.weights.values()):
                raise DegenerateWeightsError("all explicit weights are zero")
            object.__setattr__(self, "weights", MappingProxyType(dict(self.weights)))

    @classmethod
    def explicit(cls, weights: Mapping[int, float]) -> "WeightScheme":
        return cls("explicit", weights)

    def weight(self, year: int) -> float:
        if self.mode == "uniform":
            return 1.0
        return self.weights.get(year, 0.0)


UNIFORM = WeightScheme()


@dataclass(frozen=True)
class FactorProfile:
    country: str
    factors: Mapping[str, float]
    years_used: Mapping[str, int]

    def __post_init__(self):
        object.__setattr__(self, "factors", MappingProxyType(dict(self.factors)))
        object.__setattr__(self, "years_used", MappingProxyType(dict(self.years_used)))
        for key, value in self.factors.items():
            if not math.isfinite(value):
                raise ValueError(f"factor {key} is not finite")
            if self.years_used.get(key, 0) < 1:
                raise ValueError(f"factor {key} has no contributing years")


def parse_value(text: str) -> float:
    """Parse a numeric cell; a trailing ``%`` divides by 100."""
    text = text.strip()
    scale = 1.0
    if text.endswith("%"):
        text = text[:-1].rstrip()
        scale = 100.0
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"non-finite value {text!r}")
    return value / scale


def parse_panel_csv(source: str | TextIO, strict: bool = True) -> IndicatorPanel:
    """Read a ``country,indicator,year,value`` CSV into a panel.

    Args:
        source: CSV text or an open text stream.
        strict: reject indicator keys outside :data:`CANONICAL_KEYS`.

    Raises:
        ParseError: bad header, wrong column count, unparseable year or value.
        DuplicateKeyError: a (country, indicator, year) triple appears twice.
        SchemaError: unknown indicator key in strict mode.
    """
    stream = io.StringIO(source) if isinstance(source, str) else source
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError(1, "empty input, expected header 'country,indicator,year,value'")
    if header and header[0].startswith("﻿"):
        header[0] = header[0][1:]
    if tuple(header) != HEADER:
        raise ParseError(1, f"bad header {','.join(header)!r}, expected 'country,indicator,year,value'")

    observations = []
    seen: dict[tuple[str, str, int], int] = {}
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 4:
            raise ParseError(line, f"expected 4 columns, got {len(row)}")
        country, indicator, year_text, value_text = (c.strip() for c in row)
        if not country:
            raise ParseError(line, "empty country")
        try:
            year = int(year_text)
        except ValueError:
            raise ParseError(line, f"unparseable year {year_text!r}") from None
        if not MIN_YEAR <= year <= MAX_YEAR:
            raise ParseError(line, f"year {year} outside [{MIN_YEAR}, {MAX_YEAR}]")
        try:
            value = parse_value(value_text)
        except ValueError:
            raise ParseError(line, f"unparseable value {value_text!r}") from None
        if strict and indicator not in CANONICAL_KEYS:
            raise SchemaError(f"line {line}: unknown indicator key {indicator!r}")
        key = (country, indicator, year)
        if key in seen:
            raise DuplicateKeyError(key, line)
        seen[key] = line
        observations.append(IndicatorObservation(country, indicator, year, value))
    return IndicatorPanel(tuple(observations))


def read_panel(path, strict: bool = True) -> IndicatorPanel:
    with open(path, newline="", encoding="utf-8") as fh:
        return parse_panel_csv(fh, strict=strict)


def panel_to_csv(panel: IndicatorPanel) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADER)
    for o in panel.observations:
        writer.writerow((o.country, o.indicator, o.year, repr(o.value)))
    return out.getvalue()


def read_weights(path) -> WeightScheme:
    """Load an explicit ``year,weight`` CSV."""
    weights: dict[int, float] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["year", "weight"]:
            raise ParseError(1, "weights file needs header 'year,weight'")
        for row in reader:
            if not row:
                continue
            if len(row) != 2:
                raise ParseError(reader.line_num, f"expected 2 columns, got {len(row)}")
            try:
                year, w = int(row[0]), float(row[1])
            except ValueError:
                raise ParseError(reader.line_num, f"unparseable row {row!r}") from None
            if year in weights:
                raise DuplicateKeyError((year,), reader.line_num)
            weights[year] = w
    return WeightScheme.explicit(weights)


def aggregate(
    panel: IndicatorPanel,
    country: str,
    years: tuple[int, int],
    weights: WeightScheme = UNIFORM,
    indicators: Iterable[str] | None = None,
) -> FactorProfile:
    """Weighted period average of each indicator for one country.

    ``years`` is an inclusive ``(start, end)`` interval. Years without an
    observation are skipped and drop out of the normalizer. When
    ``indicators`` is None every indicator the country reports is averaged.
    """
    start, end = years
    if start > end:
        raise ValueError(f"empty year interval {start}:{end}")
    wanted = sorted(panel.indicators(country)) if indicators is None else list(indicators)

    factors: dict[str, float] = {}
    used: dict[str, int] = {}
    for indicator in wanted:
        points = [
            (year, value)
            for year, value in panel.series(country, indicator).items()
            if start <= year <= end
        ]
        if not points:
            raise MissingIndicatorError(indicator, country)
        total_w = math.fsum(weights.weight(y) for y, _ in points)
        if total_w <= 0:
            raise DegenerateWeightsError(
                f"weights sum to zero over the available years for {country}/{indicator}"
            )
        mean = math.fsum(weights.weight(y) * v for y, v in points) / total_w
        # rounding can push a weighted mean a hair outside its inputs
        lo = min(v for y, v in points if weights.weight(y) > 0)
        hi = max(v for y, v in points if weights.weight(y) > 0)
        factors[indicator] = min(max(mean, lo), hi)
        used[indicator] = sum(1 for y, _ in points if weights.weight(y) > 0)
    return FactorProfile(country, factors, used)
