import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy import stats

from aiecon.errors import (
    DegenerateRegressorError,
    DegenerateSeriesError,
    InfiniteStatisticError,
    NonPositiveValueError,
)
from aiecon.regstats import (
    SeriesPair,
    audit_reported,
    log_transform,
    ols_fit,
    pearson_r,
    r_squared,
    regress,
    regress_loglog,
    t_statistic,
)

from oracles import naive_fit, random_dataset, sample_std, sse

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


def test_log_transform():
    assert log_transform([1, math.e, math.e**2]) == pytest.approx([0, 1, 2], abs=1e-15)
    assert log_transform([0.5]) == pytest.approx([-0.6931471805599453])
    with pytest.raises(NonPositiveValueError) as exc:
        log_transform([0, 1])
    assert exc.value.index == 0
    with pytest.raises(NonPositiveValueError):
        log_transform([1, -2])


def test_ols_exact_line():
    b1, b0 = ols_fit(SeriesPair([1, 2, 3], [3, 5, 7]))
    assert b1 == pytest.approx(2)
    assert b0 == pytest.approx(1)


def test_ols_hand_computed():
    # sums: Sxy = 1, Sxx = 2
    b1, b0 = ols_fit(SeriesPair([1, 2, 3], [1, 2, 2]))
    assert b1 == pytest.approx(0.5, rel=1e-15)
    assert b0 == pytest.approx(2 / 3, rel=1e-15)


def test_ols_degenerate_regressor():
    with pytest.raises(DegenerateRegressorError):
        ols_fit(SeriesPair([2, 2, 2], [1, 2, 3]))


def test_pearson_examples():
    assert pearson_r(SeriesPair([1, 2, 3, 4], [3, 5, 7, 9])) == 1.0
    assert pearson_r(SeriesPair([1, 2, 3, 4], [-1, -2, -3, -4])) == -1.0
    assert pearson_r(SeriesPair([1, 2, 3], [1, 2, 2])) == pytest.approx(0.8660254037844386, rel=1e-14)
    with pytest.raises(DegenerateSeriesError):
        pearson_r(SeriesPair([1, 2, 3], [4, 4, 4]))


def test_r_squared():
    assert r_squared(1.0) == 1.0
    assert r_squared(-0.5) == 0.25
    assert r_squared(0.8660254037844386) == pytest.approx(0.75, rel=1e-14)


def test_t_statistic():
    assert t_statistic(0.0, 7) == 0.0
    assert t_statistic(0.5, 6) == pytest.approx(1.1547005383792515, rel=1e-14)
    with pytest.raises(InfiniteStatisticError):
        t_statistic(1.0, 10)
    with pytest.raises(InfiniteStatisticError):
        t_statistic(-1.0, 10)


def test_series_pair_validation():
    with pytest.raises(ValueError):
        SeriesPair([1, 2], [1, 2])
    with pytest.raises(ValueError):
        SeriesPair([1, 2, 3], [1, 2])
    with pytest.raises(ValueError):
        SeriesPair([1, 2, math.nan], [1, 2, 3])


def test_loglog_power_law_is_perfect_fit():
    res = regress_loglog([1, 2, 4, 8], [1, 4, 16, 64])
    assert res.slope_b1 == pytest.approx(2, rel=1e-14)
    assert res.pearson_r == pytest.approx(1)
    assert res.r_squared == pytest.approx(1)
    assert res.perfect_fit
    assert res.p_display == "< 1e-15"
    assert res.df == 2 and res.n == 4


def test_loglog_constant_response():
    with pytest.raises(DegenerateSeriesError):
        regress_loglog([1, 2, 3], [5, 5, 5])


def test_loglog_zero_value():
    with pytest.raises(NonPositiveValueError):
        regress_loglog([1, 2, 3], [5, 0, 5])


def test_loglog_synthetic_matches_oracle():
    rng = np.random.default_rng(7)
    x = np.exp(rng.uniform(1.5, 6.0, 12))
    y = 3000 * x**0.0418 * np.exp(rng.normal(0, 0.01, 12))
    res = regress_loglog(list(x), list(y), labels=range(2011, 2023))
    lx, ly = np.log(x).tolist(), np.log(y).tolist()
    slope, intercept, r = naive_fit(lx, ly)
    assert res.slope_b1 == pytest.approx(slope, rel=1e-10)
    assert res.intercept_b0 == pytest.approx(intercept, rel=1e-10)
    assert res.pearson_r == pytest.approx(r, rel=1e-10)
    assert res.slope_b1 == pytest.approx(0.0418, abs=0.01)
    # scipy as a second, independent route to the full result
    ref = stats.linregress(lx, ly)
    assert res.p_value == pytest.approx(ref.pvalue, rel=1e-8)
    assert res.labels == tuple(range(2011, 2023))


def test_swap_axes_reciprocal_for_exact_fit():
    x = [2.0**k for k in range(1, 13)]
    y = [v**0.5 for v in x]
    assert regress_loglog(x, y).slope_b1 == pytest.approx(0.5, rel=1e-12)
    assert regress_loglog(x, y, swap_axes=True).slope_b1 == pytest.approx(2.0, rel=1e-12)


def test_result_invariants_random():
    rng = np.random.default_rng(11)
    for _ in range(200):
        x, y = random_dataset(rng, n=int(rng.integers(3, 60)))
        res = regress(SeriesPair(x, y))
        assert res.r_squared == res.pearson_r**2
        assert -1 <= res.pearson_r <= 1
        assert res.df == res.n - 2
        if res.slope_b1 and res.pearson_r:
            assert math.copysign(1, res.slope_b1) == math.copysign(1, res.pearson_r)
        if not res.perfect_fit:
            assert 0 < res.p_value <= 1


def test_slope_identity():
    rng = np.random.default_rng(5)
    for _ in range(100):
        x, y = random_dataset(rng, n=int(rng.integers(3, 200)))
        pair = SeriesPair(x, y)
        b1, _ = ols_fit(pair)
        assert b1 == pytest.approx(pearson_r(pair) * sample_std(y) / sample_std(x), rel=1e-9)


@settings(max_examples=200, deadline=None)
@given(
    xy=st.lists(st.tuples(finite, finite), min_size=3, max_size=40),
    a=st.floats(-100, 100), b=st.floats(0.01, 100), c=st.floats(-100, 100), d=st.floats(0.01, 100),
    flip_b=st.booleans(), flip_d=st.booleans(),
)
def test_pearson_affine_invariance(xy, a, b, c, d, flip_b, flip_d):
    x = [p[0] for p in xy]
    y = [p[1] for p in xy]
    # keep away from near-degenerate spreads where r is ill-conditioned
    assume(np.std(x) > 1e-3 * (1 + np.max(np.abs(x))))
    assume(np.std(y) > 1e-3 * (1 + np.max(np.abs(y))))
    b = -b if flip_b else b
    d = -d if flip_d else d
    r = pearson_r(SeriesPair(x, y))
    r2 = pearson_r(SeriesPair([a + b * v for v in x], [c + d * v for v in y]))
    assert r2 == pytest.approx(math.copysign(1, b * d) * r, abs=1e-9)


def test_determinism():
    rng = np.random.default_rng(3)
    x, y = random_dataset(rng, n=50)
    assert regress(SeriesPair(x, y)) == regress(SeriesPair(x, y))


class TestAudit:
    def test_reported_triple_inconsistent(self):
        rep = audit_reported(12, 0.773, 0.0435)
        assert rep.implied_t == pytest.approx(5.835483136478363, rel=1e-12)
        # frozen from scipy.stats.t.sf(5.835483136478363, 10) * 2
        assert rep.implied_p == pytest.approx(1.6481947415472508e-4, rel=1e-9)
        assert rep.verdict == "INCONSISTENT"
        assert "23.9%" in rep.note

    def test_consistent_r_squared(self):
        rep = audit_reported(12, 0.342, 0.0435)
        assert rep.implied_p == pytest.approx(0.045799912860762786, rel=1e-9)
        assert rep.verdict == "CONSISTENT"
        # R² that reproduces p = 0.0435 exactly, via scipy's quantile function
        t = stats.t.isf(0.0435 / 2, 10)
        assert rep.consistent_r_squared == pytest.approx(t * t / (t * t + 10), rel=1e-9)

    def test_zero_r_squared(self):
        rep = audit_reported(3, 0.0, 1.0)
        assert rep.implied_t == 0.0
        assert rep.implied_p == 1.0
        assert rep.verdict == "CONSISTENT"

    def test_perfect_fit(self):
        rep = audit_reported(12, 1.0, 0.0435)
        assert rep.perfect_fit
        assert rep.implied_p is None
        assert rep.verdict == "PERFECT_FIT"

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            audit_reported(2, 0.5, 0.1)
        with pytest.raises(ValueError):
            audit_reported(12, 1.5, 0.1)
        with pytest.raises(ValueError):
            audit_reported(12, 0.5, 0.0)

    def test_tolerance_is_configurable(self):
        assert audit_reported(12, 0.342, 0.0435, rel_tol=0.01).verdict == "INCONSISTENT"
