"""Calendar rules and civil-date <-> UNIX timestamp conversion.

Timestamps are signed second counts since 1970-01-01T00:00:00 UTC; dates
before 1970 map to negative values. Date intervals are half-open
[start, end) and both endpoints always fall on UTC midnights, i.e. they
are multiples of 86400.
"""

from __future__ import annotations

from dataclasses import dataclass

SECONDS_PER_DAY = 86400

# Years before the Gregorian reform are rejected rather than interpreted
# proleptically; the far bound keeps every midnight inside 64-bit seconds.
MIN_YEAR = 1583
MAX_YEAR = 9999

# Two-digit years below the pivot are read as 20xx, the rest as 19xx.
TWO_DIGIT_PIVOT = 40

MONTH_NAMES = (
    "January",
    "February",
    "March",
    "April",
    "May",
    "June",
    "July",
    "August",
    "September",
    "October",
    "November",
    "December",
)

ORDINAL_SUFFIXES = ("st", "nd", "rd", "th")

_DAYS_IN_MONTH = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)

# Days between 0000-03-01 and 1970-01-01 in the proleptic Gregorian
# calendar; used by the era-based day-count conversion below.
_EPOCH_SHIFT = 719468
_DAYS_PER_ERA = 146097


class InvalidDateError(ValueError):
    """A date expression that fails calendar or range validation."""


def is_leap_year(year: int) -> bool:
    """True for Gregorian leap years: divisible by 4, except centuries
    not divisible by 400."""
    return year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)


def days_in_month(month: int, year: int) -> int:
    """Day count of `month` in `year` (29 for February of a leap year)."""
    if not 1 <= month <= 12:
        raise ValueError(f"month must be 1..12, got {month}")
    if month == 2 and is_leap_year(year):
        return 29
    return _DAYS_IN_MONTH[month - 1]


def resolve_two_digit_year(yy: int) -> int:
    """Expand a two-digit year: below the pivot -> 2000s, else 1900s.

    resolve_two_digit_year(96) == 1996, resolve_two_digit_year(7) == 2007.
    """
    if not 0 <= yy <= 99:
        raise ValueError(f"two-digit year must be 0..99, got {yy}")
    if yy < TWO_DIGIT_PIVOT:
        return 2000 + yy
    return 1900 + yy


def month_from_name(text: str) -> int:
    """Month number (1..12) for a month-name prefix of length >= 3.

    Matching is case-insensitive; the prefix must select exactly one
    month. Raises ValueError for prefixes shorter than 3 letters or that
    name no month.
    """
    if len(text) < 3:
        raise ValueError(f"month prefix {text!r} is shorter than 3 letters")
    lowered = text.lower()
    hits = [
        number
        for number, name in enumerate(MONTH_NAMES, start=1)
        if name.lower().startswith(lowered)
    ]
    if len(hits) != 1:
        raise ValueError(f"{text!r} does not name a month")
    return hits[0]


def ordinal_for(day: int) -> str:
    """English ordinal suffix for a day number: 1st, 2nd, 3rd, 4th, 11th."""
    if not 1 <= day <= 31:
        raise ValueError(f"day must be 1..31, got {day}")
    if day % 100 in (11, 12, 13):
        return "th"
    return {1: "st", 2: "nd", 3: "rd"}.get(day % 10, "th")


def ordinal_suffix_valid(day: int, suffix: str) -> bool:
    """True when `suffix` is the correct English ordinal for `day`."""
    if not 1 <= day <= 31:
        raise ValueError(f"day must be 1..31, got {day}")
    return suffix == ordinal_for(day)


@dataclass(frozen=True, slots=True, order=True)
class CivilDate:
    """A Gregorian calendar date; validated on construction."""

    year: int
    month: int
    day: int

    def __post_init__(self) -> None:
        if not MIN_YEAR <= self.year <= MAX_YEAR:
            raise InvalidDateError(
                f"year {self.year} outside supported span "
                f"{MIN_YEAR}..{MAX_YEAR}"
            )
        if not 1 <= self.month <= 12:
            raise InvalidDateError(f"month {self.month} outside 1..12")
        if not 1 <= self.day <= days_in_month(self.month, self.year):
            raise InvalidDateError(
                f"day {self.day} invalid for {self.year}-{self.month:02d}"
            )


def _days_from_civil(year: int, month: int, day: int) -> int:
    # Era-based conversion; an era is a 400-year cycle of 146097 days.
    y = year - (month <= 2)
    era = y // 400
    yoe = y - era * 400
    doy = (153 * (month + (9 if month <= 2 else -3)) + 2) // 5 + day - 1
    doe = yoe * 365 + yoe // 4 - yoe // 100 + doy
    return era * _DAYS_PER_ERA + doe - _EPOCH_SHIFT


def _civil_from_days(days: int) -> tuple[int, int, int]:
    z = days + _EPOCH_SHIFT
    era = z // _DAYS_PER_ERA
    doe = z - era * _DAYS_PER_ERA
    yoe = (doe - doe // 1460 + doe // 36524 - doe // 146096) // 365
    year = yoe + era * 400
    doy = doe - (365 * yoe + yoe // 4 - yoe // 100)
    mp = (5 * doy + 2) // 153
    day = doy - (153 * mp + 2) // 5 + 1
    month = mp + 3 if mp < 10 else mp - 9
    return year + (month <= 2), month, day


def civil_to_epoch_midnight(date: CivilDate) -> int:
    """Timestamp of 00:00:00 UTC on `date`; negative before 1970."""
    return _days_from_civil(date.year, date.month, date.day) * SECONDS_PER_DAY


def epoch_to_civil(ts: int, floor: bool = False) -> CivilDate:
    """Civil date whose UTC midnight is `ts`.

    `ts` must be a multiple of 86400 unless `floor` is set, in which
    case it is rounded down to the previous midnight first.
    """
    if ts % SECONDS_PER_DAY != 0:
        if not floor:
            raise ValueError(f"timestamp {ts} is not a UTC midnight")
        ts -= ts % SECONDS_PER_DAY
    year, month, day = _civil_from_days(ts // SECONDS_PER_DAY)
    return CivilDate(year, month, day)


@dataclass(frozen=True, slots=True)
class TimestampRange:
    """Half-open [start, end) interval between two UTC midnights."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start % SECONDS_PER_DAY or self.end % SECONDS_PER_DAY:
            raise ValueError("range endpoints must be UTC midnights")
        if self.start >= self.end:
            raise ValueError(f"empty range: start {self.start} >= end {self.end}")


DayField = int | tuple[int, int] | None
MonthField = int | tuple[int, int]


@dataclass(frozen=True, slots=True)
class DateParts:
    """Decomposed date expression: scalar or range parts.

    `day` may be absent (whole-month expressions) or a (first, second)
    pair; `month` may be a pair; at most one of the two is a pair. An
    ordinal suffix only accompanies a scalar day.
    """

    month: MonthField
    year: int
    day: DayField = None
    ordinal_suffix: str | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.year, int):
            raise InvalidDateError("year must be a single integer")
        day_is_pair = isinstance(self.day, tuple)
        month_is_pair = isinstance(self.month, tuple)
        for label, value, is_pair in (
            ("day", self.day, day_is_pair),
            ("month", self.month, month_is_pair),
        ):
            if is_pair:
                if len(value) != 2:
                    raise InvalidDateError(f"{label} range must have 2 ends")
                if value[0] >= value[1]:
                    raise InvalidDateError(
                        f"{label} range {value} must run low to high"
                    )
        if day_is_pair and month_is_pair:
            raise InvalidDateError("day range and month range together")
        if self.ordinal_suffix is not None:
            if self.ordinal_suffix not in ORDINAL_SUFFIXES:
                raise InvalidDateError(
                    f"unknown ordinal suffix {self.ordinal_suffix!r}"
                )
            if not isinstance(self.day, int):
                raise InvalidDateError("ordinal suffix without a single day")


def _month_start(year: int, month: int) -> int:
    """Midnight of the first day of (year, month), rolling over December."""
    if month == 13:
        year, month = year + 1, 1
    return civil_to_epoch_midnight(CivilDate(year, month, 1))


def range_of(parts: DateParts) -> TimestampRange:
    """Half-open timestamp interval denoted by `parts`.

    A full date spans one day, a day pair (a, b) spans [a, b + 1 day), a
    dayless month spans the whole month, and a month pair (m1, m2) spans
    the first of m1 to the first of the month after m2. Calendar-invalid
    parts (day 31 in February, month 13, unsupported years, a mismatched
    ordinal suffix) raise InvalidDateError.
    """
    if not MIN_YEAR <= parts.year <= MAX_YEAR:
        raise InvalidDateError(
            f"year {parts.year} outside supported span {MIN_YEAR}..{MAX_YEAR}"
        )
    if isinstance(parts.month, tuple):
        if parts.day is not None:
            raise InvalidDateError("day with a month range has no meaning")
        first, last = parts.month
        if not (1 <= first <= 12 and 1 <= last <= 12):
            raise InvalidDateError(f"month range {parts.month} outside 1..12")
        return TimestampRange(
            _month_start(parts.year, first), _month_start(parts.year, last + 1)
        )
    if not 1 <= parts.month <= 12:
        raise InvalidDateError(f"month {parts.month} outside 1..12")
    if parts.day is None:
        return TimestampRange(
            _month_start(parts.year, parts.month),
            _month_start(parts.year, parts.month + 1),
        )
    limit = days_in_month(parts.month, parts.year)
    days = parts.day if isinstance(parts.day, tuple) else (parts.day, parts.day)
    for day in days:
        if not 1 <= day <= limit:
            raise InvalidDateError(
                f"day {day} invalid for {parts.year}-{parts.month:02d}"
            )
    if parts.ordinal_suffix is not None and not ordinal_suffix_valid(
        days[0], parts.ordinal_suffix
    ):
        raise InvalidDateError(
            f"suffix {parts.ordinal_suffix!r} does not fit day {days[0]}"
        )
    start = civil_to_epoch_midnight(CivilDate(parts.year, parts.month, days[0]))
    end = (
        civil_to_epoch_midnight(CivilDate(parts.year, parts.month, days[1]))
        + SECONDS_PER_DAY
    )
    return TimestampRange(start, end)
