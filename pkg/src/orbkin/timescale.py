"""Persian years, mean solar time, equation of time and Julian Days.

The model's time argument ``t`` counts Persian years of exactly 365 mean
solar days from the epoch, noon of 24 December 1331 (Julian calendar),
Damascus mean time.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .sexa import sex

DAYS_PER_YEAR = 365.0
HOURS_PER_DEGREE = 1.0 / 15.0
# mean solar longitude at the spring equinox preceding the epoch
LAMBDA_M_AT_EQUINOX = -sex("2;1,7")
DAMASCUS_LONGITUDE = sex("36;18,23")
# equation of time of Greenwich mean time at the spring equinox, minutes
GMT_EOT_AT_EQUINOX = 8.0

CALENDARS = ("julian", "gregorian")


class DateError(ValueError):
    pass


@dataclass(frozen=True)
class TimescaleSample:
    lambda_m: float
    alpha: float
    lambda_m_at_equinox: float = LAMBDA_M_AT_EQUINOX


def equation_of_time(sample: TimescaleSample) -> float:
    """Mean minus true solar time since the equinox, in hours (French sign convention)."""
    return (-sample.lambda_m + sample.lambda_m_at_equinox + sample.alpha) * HOURS_PER_DEGREE


def sidereal_offsets(alpha: float, lambda_m: float,
                     lambda_m_at_equinox: float = LAMBDA_M_AT_EQUINOX) -> tuple[float, float]:
    """Sidereal time gained over civil time and over mean time, both in hours."""
    civil_gap = alpha * HOURS_PER_DEGREE
    mean_gap = (lambda_m - lambda_m_at_equinox) * HOURS_PER_DEGREE
    return civil_gap, mean_gap


def days_to_years(days: float) -> float:
    return days / DAYS_PER_YEAR


def years_to_days(t: float) -> float:
    return t * DAYS_PER_YEAR


# -- calendar ---------------------------------------------------------------

def is_leap(year: int, calendar: str) -> bool:
    if calendar == "julian":
        return year % 4 == 0
    return year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)


def month_length(year: int, month: int, calendar: str) -> int:
    if month == 2:
        return 29 if is_leap(year, calendar) else 28
    return 30 if month in (4, 6, 9, 11) else 31


@dataclass(frozen=True)
class CalendarDateTime:
    year: int
    month: int
    day: int
    hour: int = 0
    minute: int = 0
    second: float = 0.0
    calendar: str = "julian"

    def __post_init__(self):
        if self.calendar not in CALENDARS:
            raise DateError(f"unknown calendar {self.calendar!r}")
        if not 1 <= self.month <= 12:
            raise DateError(f"month {self.month} out of range")
        if not 1 <= self.day <= month_length(self.year, self.month, self.calendar):
            raise DateError(f"day {self.day} invalid for {self.year}-{self.month:02d} ({self.calendar})")
        if not (0 <= self.hour < 24 and 0 <= self.minute < 60 and 0 <= self.second < 60):
            raise DateError("time of day out of range")

    @property
    def day_fraction(self) -> float:
        return (self.hour + self.minute / 60.0 + self.second / 3600.0) / 24.0

    def isoformat(self) -> str:
        sec = f"{self.second:06.3f}".rstrip("0").rstrip(".")
        if "." not in sec:
            sec = sec.zfill(2)
        return f"{self.year:04d}-{self.month:02d}-{self.day:02d}T{self.hour:02d}:{self.minute:02d}:{sec}"


_ISO = re.compile(
    r"^(?P<y>-?\d{1,6})-(?P<m>\d{1,2})-(?P<d>\d{1,2})"
    r"(?:[T ](?P<H>\d{1,2}):(?P<M>\d{2})(?::(?P<S>\d{2}(?:\.\d+)?))?)?$"
)


def parse_date(text: str, calendar: str = "julian") -> CalendarDateTime:
    """``YYYY-MM-DD[THH:MM[:SS]]`` in the given calendar (no timezone; GMT assumed)."""
    m = _ISO.match(text.strip())
    if m is None:
        raise DateError(f"cannot parse date {text!r}")
    return CalendarDateTime(
        int(m["y"]), int(m["m"]), int(m["d"]),
        int(m["H"] or 0), int(m["M"] or 0), float(m["S"] or 0.0), calendar,
    )


def julian_day(dt: CalendarDateTime) -> float:
    """Astronomical Julian Day (days from noon, 1 January 4713 BC, Julian)."""
    y, m = dt.year, dt.month
    if m <= 2:
        y -= 1
        m += 12
    if dt.calendar == "gregorian":
        a = math.floor(y / 100)
        b = 2 - a + math.floor(a / 4)
    else:
        b = 0
    return (math.floor(365.25 * (y + 4716)) + math.floor(30.6001 * (m + 1))
            + dt.day + dt.day_fraction + b - 1524.5)


def from_julian_day(jd: float, calendar: str = "julian") -> CalendarDateTime:
    """Inverse of :func:`julian_day`, rounded to the millisecond."""
    # round first so the day never rolls over to 24:00:00
    jd = round(jd * 86400000.0) / 86400000.0
    z = math.floor(jd + 0.5)
    f = jd + 0.5 - z
    if calendar == "gregorian":
        alpha = math.floor((z - 1867216.25) / 36524.25)
        a = z + 1 + alpha - math.floor(alpha / 4)
    else:
        a = z
    b = a + 1524
    c = math.floor((b - 122.1) / 365.25)
    d = math.floor(365.25 * c)
    e = math.floor((b - d) / 30.6001)
    day = b - d - math.floor(30.6001 * e)
    month = e - 1 if e < 14 else e - 13
    year = c - 4716 if month > 2 else c - 4715
    ms = round(f * 86400000.0)
    hour, ms = divmod(ms, 3600000)
    minute, ms = divmod(ms, 60000)
    return CalendarDateTime(int(year), int(month), int(day), int(hour), int(minute), ms / 1000.0, calendar)


EPOCH_LOCAL = CalendarDateTime(1331, 12, 24, 12, 0, 0.0, "julian")
EPOCH_JD = julian_day(EPOCH_LOCAL)


def epoch_gmt(local_hour: float = 12.0, eot_minutes: float = GMT_EOT_AT_EQUINOX,
              longitude: float = DAMASCUS_LONGITUDE) -> CalendarDateTime:
    """The epoch as Greenwich mean time: local noon + equation of time - longitude / 15."""
    hours = local_hour + eot_minutes / 60.0 - longitude * HOURS_PER_DEGREE
    jd = julian_day(CalendarDateTime(1331, 12, 24, calendar="julian")) + hours / 24.0
    return from_julian_day(jd, "julian")


EPOCH_JD_GMT = julian_day(epoch_gmt())


def jd_to_years(jd: float) -> float:
    """Persian years since the epoch for a Julian Day counted in GMT."""
    return days_to_years(jd - EPOCH_JD_GMT)


def years_to_jd(t: float) -> float:
    return EPOCH_JD_GMT + years_to_days(t)
