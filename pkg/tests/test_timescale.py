from datetime import date

import pytest
from hypothesis import given, strategies as st

from oracles import jdn_julian_count, jdn_julian_integer
from orbkin.sexa import sex
from orbkin.timescale import (
    DAMASCUS_LONGITUDE, EPOCH_JD, EPOCH_JD_GMT, LAMBDA_M_AT_EQUINOX, CalendarDateTime, DateError,
    TimescaleSample, days_to_years, epoch_gmt, equation_of_time, from_julian_day, jd_to_years,
    julian_day, parse_date, sidereal_offsets, years_to_days, years_to_jd,
)

degs = st.floats(-400, 400, allow_nan=False)


def test_equinox_constant():
    assert LAMBDA_M_AT_EQUINOX == pytest.approx(-(2 + 1 / 60 + 7 / 3600))


def test_equation_of_time_vanishes_at_equinox():
    assert equation_of_time(TimescaleSample(10.0, 10.0 + sex("2;1,7"))) == pytest.approx(0.0, abs=1e-15)
    assert equation_of_time(TimescaleSample(-sex("2;1,7"), 0.0)) == pytest.approx(0.0, abs=1e-15)


def test_equation_of_time_example():
    e = equation_of_time(TimescaleSample(0.0, 1.0))
    assert e == pytest.approx((1 - 2.018611) / 15, abs=1e-6)
    assert e * 60 == pytest.approx(-4.07, abs=0.01)


def test_sidereal_offsets():
    assert sidereal_offsets(15.0, 0.0)[0] == 1.0
    assert sidereal_offsets(0.0, LAMBDA_M_AT_EQUINOX)[1] == 0.0
    civil, mean = sidereal_offsets(30.0, 28.0)
    assert civil == 2.0
    assert mean == pytest.approx((28 + 2.018611) / 15, abs=1e-6)


@given(degs, degs)
def test_equation_of_time_identity(lam, alpha):
    civil, mean = sidereal_offsets(alpha, lam)
    assert equation_of_time(TimescaleSample(lam, alpha)) == pytest.approx(civil - mean, abs=1e-12)


def test_epoch_gmt():
    g = epoch_gmt()
    assert (g.year, g.month, g.day, g.calendar) == (1331, 12, 24, "julian")
    minutes = g.hour * 60 + g.minute + g.second / 60
    assert abs(minutes - (9 * 60 + 43)) <= 1.0


def test_damascus_offset():
    hours = DAMASCUS_LONGITUDE / 15
    h, rem = divmod(hours * 3600, 3600)
    m, s = divmod(rem, 60)
    assert (int(h), int(m), round(s)) == (2, 25, 14)


def test_epoch_gmt_without_corrections():
    g = epoch_gmt(eot_minutes=0.0, longitude=0.0)
    assert (g.hour, g.minute, g.second) == (12, 0, 0.0)


def test_days_years():
    assert days_to_years(365) == 1.0
    assert days_to_years(1) == 1 / 365
    assert days_to_years(1825) == 5.0


@given(st.floats(-1e6, 1e6, allow_nan=False))
def test_days_years_inverse(d):
    assert years_to_days(days_to_years(d)) == pytest.approx(d, abs=1e-12 * max(1, abs(d)))


def test_j2000():
    assert julian_day(CalendarDateTime(2000, 1, 1, 12, calendar="gregorian")) == 2451545.0


def test_epoch_jd_two_algorithms():
    assert jdn_julian_count(1331, 12, 24) == jdn_julian_integer(1331, 12, 24) == 2207563
    assert EPOCH_JD == 2207563.0


def test_epoch_plus_a_year():
    assert years_to_jd(1.0) - years_to_jd(0.0) == 365.0
    assert jd_to_years(EPOCH_JD_GMT + 365) == pytest.approx(1.0, abs=1e-12)
    assert EPOCH_JD - EPOCH_JD_GMT == pytest.approx((12 - 9 - 42 / 60 - 46.5 / 3600) / 24, abs=1e-5)


@given(st.integers(1, 3000), st.integers(1, 12), st.integers(1, 28))
def test_julian_calendar_matches_oracle(y, m, d):
    assert julian_day(CalendarDateTime(y, m, d, 12, calendar="julian")) == jdn_julian_integer(y, m, d)


@given(st.integers(1, 3000), st.integers(1, 12), st.integers(1, 28))
def test_gregorian_matches_stdlib(y, m, d):
    assert julian_day(CalendarDateTime(y, m, d, calendar="gregorian")) == date(y, m, d).toordinal() + 1721424.5


@given(st.floats(1_000_000, 3_000_000, allow_nan=False), st.sampled_from(["julian", "gregorian"]))
def test_from_julian_day_inverse(jd, cal):
    dt = from_julian_day(jd, cal)
    assert julian_day(dt) == pytest.approx(jd, abs=2e-8)


def test_reform_boundary():
    assert julian_day(CalendarDateTime(1582, 10, 4, 12, calendar="julian")) + 1 == \
        julian_day(CalendarDateTime(1582, 10, 15, 12, calendar="gregorian"))


@pytest.mark.parametrize("args", [(1331, 2, 29, "julian"), (1300, 2, 29, "gregorian"), (1331, 13, 1, "julian"),
                                  (1331, 4, 31, "julian")])
def test_invalid_dates(args):
    y, m, d, cal = args
    with pytest.raises(DateError):
        CalendarDateTime(y, m, d, calendar=cal)


def test_julian_leap_century_valid():
    CalendarDateTime(1300, 2, 29, calendar="julian")


def test_parse_date():
    dt = parse_date("1331-12-24T09:42:46.5", "julian")
    assert (dt.hour, dt.minute, dt.second) == (9, 42, 46.5)
    assert parse_date("2000-01-01", "gregorian").day_fraction == 0.0
    assert dt.isoformat() == "1331-12-24T09:42:46.5"
    with pytest.raises(DateError):
        parse_date("24/12/1331")
