"""Technology-level composite index, AI factor vector magnitude and log-log regression."""
from .composite import TechnologyLevel, ZeroPolicy, geometric_mean, technology_level
from .panel import (
    FactorProfile,
    IndicatorObservation,
    IndicatorPanel,
    WeightScheme,
    aggregate,
    parse_panel_csv,
)
from .regstats import (
    RegressionResult,
    SeriesPair,
    audit_reported,
    log_transform,
    ols_fit,
    pearson_r,
    r_squared,
    regress_loglog,
    t_statistic,
)
from .special import betainc, student_t_sf, two_sided_p
from .vector import AIFactorVector, VectorMagnitude, build_vector, magnitude

__version__ = "0.1.0"
