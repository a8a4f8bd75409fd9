"""Civil dates in, half-open timestamp intervals out.

Every date expression the toolkit understands resolves to a pair of
UNIX timestamps [start, end): midnights UTC, end exclusive. A plain
day covers one day, a dayless month covers the whole month, and pairs
of days or months cover the span between them. Two-digit years pivot
at 40: below it means 2000s, at or above it means 1900s.
"""

from datespan import (
    CivilDate,
    DateParts,
    TimestampRange,
    civil_to_epoch_midnight,
    epoch_to_civil,
    range_of,
    resolve_two_digit_year,
)


def show(label: str, parts: DateParts) -> None:
    interval = range_of(parts)
    days = (interval.end - interval.start) // 86_400
    print(f"{label:32} [{interval.start:>12}, {interval.end:>12})  {days:>3} day(s)")


def main() -> None:
    print("== scalar days ==")
    show("3 June 1970", DateParts(month=6, year=1970, day=3))
    show("1 Jan 1970 (the epoch)", DateParts(month=1, year=1970, day=1))
    show("31 Dec 1969 (before it)", DateParts(month=12, year=1969, day=31))

    print("\n== whole months ==")
    show("June 1970", DateParts(month=6, year=1970))
    show("February 1972 (leap)", DateParts(month=2, year=1972))

    print("\n== ranges ==")
    show("12-14 June 1970", DateParts(month=6, year=1970, day=(12, 14)))
    show("Jan-Mar 1970", DateParts(month=(1, 3), year=1970))

    print("\n== two-digit years pivot at 40 ==")
    for yy in (39, 40, 70, 99):
        print(f"  '{yy:02}' is read as {resolve_two_digit_year(yy)}")

    print("\n== conversions round-trip ==")
    date = CivilDate(1961, 4, 12)
    ts = civil_to_epoch_midnight(date)
    back = epoch_to_civil(ts)
    print(f"  {date} -> {ts} -> {back}")

    print("\n== intervals are exact integers, no clock libraries ==")
    june = range_of(DateParts(month=6, year=1970))
    third = range_of(DateParts(month=6, year=1970, day=3))
    assert june.start <= third.start and third.end <= june.end
    print(f"  3 June 1970 {TimestampRange(third.start, third.end)}")
    print(f"  sits inside June 1970 {TimestampRange(june.start, june.end)}")


if __name__ == "__main__":
    main()
