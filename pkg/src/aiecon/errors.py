"""Exception hierarchy.

Everything raised on bad data derives from :class:`DataError`; the CLI maps
that family to exit status 1.
"""


class DataError(ValueError):
    """Base class for input/validation failures."""


class ParseError(DataError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class DuplicateKeyError(DataError):
    def __init__(self, key: tuple, line: int | None = None):
        self.key = key
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate observation {key}{where}")


class SchemaError(DataError):
    pass


class MissingIndicatorError(DataError):
    def __init__(self, indicator: str, country: str | None = None):
        self.indicator = indicator
        self.country = country
        who = f" for country {country}" if country is not None else ""
        super().__init__(f"missing indicator '{indicator}'{who}")


class DegenerateWeightsError(DataError):
    pass


class NegativeFactorError(DataError):
    def __init__(self, position: int, value: float):
        self.position = position
        super().__init__(f"factor at position {position} is negative ({value!r})")


class ZeroFactorError(DataError):
    def __init__(self, position: int, key: str | None = None, country: str | None = None):
        self.position = position
        self.key = key
        self.country = country
        what = f"factor at position {position}"
        if key is not None:
            what += f" ({key})"
        if country is not None:
            what = f"{country}: {what}"
        super().__init__(f"{what} is zero (zero policy 'reject')")


class EmptyAfterPolicyError(DataError):
    pass


class RangeError(DataError):
    pass


class NonPositiveValueError(DataError):
    def __init__(self, index: int, value: float):
        self.index = index
        super().__init__(f"value at index {index} is not positive ({value!r}); log undefined")


class DegenerateRegressorError(DataError):
    pass


class DegenerateSeriesError(DataError):
    pass


class InfiniteStatisticError(DataError):
    """|r| == 1: the t statistic diverges (perfect fit)."""


class EmptyReportError(DataError):
    pass


class IntegrityError(DataError):
    pass
