import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from aiecon.special import betainc, student_t_sf, t_for_two_sided_p, two_sided_p


def test_sf_at_zero_is_half():
    for df in (1, 2, 5, 30, 10**6):
        assert student_t_sf(0.0, df) == 0.5


def test_cauchy_quartile():
    # df=1 is Cauchy: P(T > 1) = 1/2 - atan(1)/pi
    assert student_t_sf(1.0, 1) == pytest.approx(0.25, abs=1e-12)
    assert two_sided_p(1.0, 1) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("t", [0.1, 0.5, 1.0, math.sqrt(2), 3.0, 17.0, 250.0])
def test_df2_closed_form(t):
    expected = 0.5 - t / (2 * math.sqrt(2 + t * t))
    assert student_t_sf(t, 2) == pytest.approx(expected, abs=1e-13)


def test_df2_sqrt2():
    assert student_t_sf(math.sqrt(2), 2) == pytest.approx(0.1464466094067262, abs=1e-12)
    assert two_sided_p(math.sqrt(2), 2) == pytest.approx(0.2928932188134524, abs=1e-12)


def test_large_df_approaches_normal():
    assert abs(student_t_sf(1.959964, 10**6) - 0.025) <= 1e-5
    normal = 0.5 * math.erfc(1.959964 / math.sqrt(2))
    assert student_t_sf(1.959964, 10**6) == pytest.approx(normal, abs=1e-6)


def test_negative_t_reflects():
    for df in (1, 3, 10):
        for t in (0.3, 1.7, 6.0):
            assert student_t_sf(-t, df) == pytest.approx(1 - student_t_sf(t, df), abs=1e-15)
            assert two_sided_p(-t, df) == two_sided_p(t, df)


def test_infinite_t():
    assert student_t_sf(math.inf, 4) == 0.0
    assert student_t_sf(-math.inf, 4) == 1.0


@pytest.mark.parametrize("df", [1, 2, 3, 5, 10, 29, 100, 1000])
@pytest.mark.parametrize("t", [0.01, 0.4, 1.0, 2.2, 5.8, 12.0, 40.0])
def test_matches_scipy(df, t):
    assert student_t_sf(t, df) == pytest.approx(stats.t.sf(t, df), rel=1e-10, abs=1e-15)


def test_betainc_edges():
    assert betainc(2.0, 3.0, 0.0) == 0.0
    assert betainc(2.0, 3.0, 1.0) == 1.0
    # I_x(1, 1) = x
    assert betainc(1.0, 1.0, 0.3) == pytest.approx(0.3, abs=1e-15)
    # I_x(a, 1) = x^a
    assert betainc(3.5, 1.0, 0.6) == pytest.approx(0.6**3.5, rel=1e-13)
    with pytest.raises(ValueError):
        betainc(0.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        betainc(1.0, 1.0, 1.5)


@settings(max_examples=300, deadline=None)
@given(
    a=st.floats(0.05, 200.0),
    b=st.floats(0.05, 200.0),
    x=st.floats(0.0, 1.0),
)
def test_betainc_matches_mpmath(a, b, x):
    expected = float(mpmath.betainc(a, b, 0, x, regularized=True))
    assert betainc(a, b, x) == pytest.approx(expected, rel=1e-9, abs=1e-13)


@settings(max_examples=300, deadline=None)
@given(a=st.floats(0.05, 200.0), b=st.floats(0.05, 200.0), x=st.floats(0.0, 1.0))
def test_betainc_reflection(a, b, x):
    # pass the complement explicitly: 1 - x in floating point can swallow a tiny x
    total = betainc(a, b, x, 1 - x) + betainc(b, a, 1 - x, x)
    assert total == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(p=st.floats(1e-12, 1.0), df=st.integers(1, 500))
def test_inverse_round_trip(p, df):
    t = t_for_two_sided_p(p, df)
    assert two_sided_p(t, df) == pytest.approx(p, rel=1e-9)
