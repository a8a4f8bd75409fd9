/**
 * Calendar rules and civil-date <-> UNIX timestamp conversion.
 *
 * Timestamps are signed second counts since 1970-01-01T00:00:00 UTC;
 * dates before 1970 map to negative values. Date intervals are
 * half-open [start, end) and both endpoints always fall on UTC
 * midnights, i.e. they are multiples of 86400. Every value the module
 * handles stays far inside Number.MAX_SAFE_INTEGER, so plain numbers
 * are exact.
 */

export const SECONDS_PER_DAY = 86_400;

// Years before the Gregorian reform are rejected rather than
// interpreted proleptically; the far bound keeps every midnight well
// inside exact integer arithmetic.
export const MIN_YEAR = 1583;
export const MAX_YEAR = 9999;

/** Two-digit years below the pivot are read as 20xx, the rest as 19xx. */
export const TWO_DIGIT_PIVOT = 40;

export const MONTH_NAMES = [
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
] as const;

export const ORDINAL_SUFFIXES = ["st", "nd", "rd", "th"] as const;

const DAYS_IN_MONTH = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31] as const;

// Days between 0000-03-01 and 1970-01-01 in the proleptic Gregorian
// calendar; used by the era-based day-count conversion below.
const EPOCH_SHIFT = 719_468;
const DAYS_PER_ERA = 146_097;

/** A date expression that fails calendar or range validation. */
export class InvalidDateError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "InvalidDateError";
  }
}

/** Floor division, unlike `/` also correct for negative dividends. */
function floorDiv(a: number, b: number): number {
  return Math.floor(a / b);
}

/**
 * True for Gregorian leap years: divisible by 4, except centuries not
 * divisible by 400.
 */
export function isLeapYear(year: number): boolean {
  return year % 4 === 0 && (year % 100 !== 0 || year % 400 === 0);
}

/** Day count of `month` in `year` (29 for February of a leap year). */
export function daysInMonth(month: number, year: number): number {
  if (!Number.isInteger(month) || month < 1 || month > 12) {
    throw new InvalidDateError(`month must be 1..12, got ${month}`);
  }
  if (month === 2 && isLeapYear(year)) {
    return 29;
  }
  return DAYS_IN_MONTH[month - 1] as number;
}

/**
 * Expand a two-digit year: below the pivot -> 2000s, else 1900s.
 *
 * resolveTwoDigitYear(96) === 1996, resolveTwoDigitYear(7) === 2007.
 */
export function resolveTwoDigitYear(yy: number): number {
  if (!Number.isInteger(yy) || yy < 0 || yy > 99) {
    throw new InvalidDateError(`two-digit year must be 0..99, got ${yy}`);
  }
  return yy < TWO_DIGIT_PIVOT ? 2000 + yy : 1900 + yy;
}

/**
 * Month number (1..12) for a month-name prefix of length >= 3.
 *
 * Matching is case-insensitive; the prefix must select exactly one
 * month. Throws for prefixes shorter than 3 letters or that name no
 * month.
 */
export function monthFromName(text: string): number {
  if (text.length < 3) {
    throw new InvalidDateError(
      `month prefix '${text}' is shorter than 3 letters`
    );
  }
  const lowered = text.toLowerCase();
  const hits: number[] = [];
  MONTH_NAMES.forEach((name, index) => {
    if (name.toLowerCase().startsWith(lowered)) {
      hits.push(index + 1);
    }
  });
  if (hits.length !== 1) {
    throw new InvalidDateError(`'${text}' does not name a month`);
  }
  return hits[0] as number;
}

/** English ordinal suffix for a day number: 1st, 2nd, 3rd, 4th, 11th. */
export function ordinalFor(day: number): string {
  if (!Number.isInteger(day) || day < 1 || day > 31) {
    throw new InvalidDateError(`day must be 1..31, got ${day}`);
  }
  if ([11, 12, 13].includes(day % 100)) {
    return "th";
  }
  return { 1: "st", 2: "nd", 3: "rd" }[day % 10] ?? "th";
}

/** True when `suffix` is the correct English ordinal for `day`. */
export function ordinalSuffixValid(day: number, suffix: string): boolean {
  return suffix === ordinalFor(day);
}

/** A Gregorian calendar date. */
export interface CivilDate {
  year: number;
  month: number;
  day: number;
}

function validateCivil(date: CivilDate): void {
  if (!Number.isInteger(date.year) || date.year < MIN_YEAR || date.year > MAX_YEAR) {
    throw new InvalidDateError(
      `year ${date.year} outside supported span ${MIN_YEAR}..${MAX_YEAR}`
    );
  }
  if (!Number.isInteger(date.month) || date.month < 1 || date.month > 12) {
    throw new InvalidDateError(`month ${date.month} outside 1..12`);
  }
  const limit = daysInMonth(date.month, date.year);
  if (!Number.isInteger(date.day) || date.day < 1 || date.day > limit) {
    throw new InvalidDateError(
      `day ${date.day} invalid for ${date.year}-${String(date.month).padStart(2, "0")}`
    );
  }
}

// Era-based conversion; an era is a 400-year cycle of 146097 days.
function daysFromCivil(year: number, month: number, day: number): number {
  const y = year - (month <= 2 ? 1 : 0);
  const era = floorDiv(y, 400);
  const yoe = y - era * 400;
  const doy = floorDiv(153 * (month + (month <= 2 ? 9 : -3)) + 2, 5) + day - 1;
  const doe = yoe * 365 + floorDiv(yoe, 4) - floorDiv(yoe, 100) + doy;
  return era * DAYS_PER_ERA + doe - EPOCH_SHIFT;
}

function civilFromDays(days: number): CivilDate {
  const z = days + EPOCH_SHIFT;
  const era = floorDiv(z, DAYS_PER_ERA);
  const doe = z - era * DAYS_PER_ERA;
  const yoe = floorDiv(
    doe - floorDiv(doe, 1460) + floorDiv(doe, 36524) - floorDiv(doe, 146096),
    365
  );
  const year = yoe + era * 400;
  const doy = doe - (365 * yoe + floorDiv(yoe, 4) - floorDiv(yoe, 100));
  const mp = floorDiv(5 * doy + 2, 153);
  const day = doy - floorDiv(153 * mp + 2, 5) + 1;
  const month = mp < 10 ? mp + 3 : mp - 9;
  return { year: year + (month <= 2 ? 1 : 0), month, day };
}

/** Timestamp of 00:00:00 UTC on `date`; negative before 1970. */
export function civilToEpochMidnight(date: CivilDate): number {
  validateCivil(date);
  return daysFromCivil(date.year, date.month, date.day) * SECONDS_PER_DAY;
}

/**
 * Civil date whose UTC midnight is `ts`.
 *
 * `ts` must be a multiple of 86400 unless `floor` is set, in which
 * case it is rounded down to the previous midnight first.
 */
export function epochToCivil(ts: number, floor = false): CivilDate {
  let remainder = ts % SECONDS_PER_DAY;
  if (remainder < 0) {
    remainder += SECONDS_PER_DAY;
  }
  if (remainder !== 0) {
    if (!floor) {
      throw new InvalidDateError(`timestamp ${ts} is not a UTC midnight`);
    }
    ts -= remainder;
  }
  return civilFromDays(floorDiv(ts, SECONDS_PER_DAY));
}

/** Half-open [start, end) interval between two UTC midnights. */
export interface TimestampRange {
  start: number;
  end: number;
}

/** Validate and build a timestamp range; throws when it is not one. */
export function timestampRange(start: number, end: number): TimestampRange {
  if (
    !Number.isInteger(start) ||
    !Number.isInteger(end) ||
    start % SECONDS_PER_DAY !== 0 ||
    end % SECONDS_PER_DAY !== 0
  ) {
    throw new InvalidDateError("range endpoints must be UTC midnights");
  }
  if (start >= end) {
    throw new InvalidDateError(`empty range: start ${start} >= end ${end}`);
  }
  return { start, end };
}

export function sameRange(a: TimestampRange, b: TimestampRange): boolean {
  return a.start === b.start && a.end === b.end;
}

/** A low-to-high pair of day numbers or month numbers. */
export type PartPair = readonly [number, number];

/**
 * Decomposed date expression: scalar or range parts.
 *
 * `day` may be absent (whole-month expressions) or a (first, second)
 * pair; `month` may be a pair; at most one of the two is a pair. The
 * year is always a single integer, and an ordinal suffix only
 * accompanies a scalar day. Fields are typed loosely so records read
 * straight off the wire can be handed to `validateParts`; the
 * validators enforce the real invariants.
 */
export interface DateParts {
  month: number | PartPair | null;
  year: number | PartPair | null;
  day?: number | PartPair | null;
  suffix?: string | null;
}

function isPair(value: unknown): value is PartPair {
  return Array.isArray(value) && value.length === 2;
}

/**
 * Enforce the structural invariants of a parts record; throws
 * InvalidDateError on the first violation. Calendar validity (day 31
 * in February and the like) is the business of `rangeOf`.
 */
export function validateParts(parts: DateParts): void {
  if (!Number.isInteger(parts.year)) {
    throw new InvalidDateError("year must be a single integer");
  }
  if (parts.month === null || parts.month === undefined) {
    throw new InvalidDateError("month is required");
  }
  const day = parts.day ?? null;
  const pairs: Array<[string, number | PartPair | null]> = [
    ["day", day],
    ["month", parts.month],
  ];
  for (const [label, value] of pairs) {
    if (isPair(value)) {
      if (!Number.isInteger(value[0]) || !Number.isInteger(value[1])) {
        throw new InvalidDateError(`${label} range must hold two integers`);
      }
      if (value[0] >= value[1]) {
        throw new InvalidDateError(
          `${label} range [${value[0]}, ${value[1]}] must run low to high`
        );
      }
    } else if (value !== null && !Number.isInteger(value)) {
      throw new InvalidDateError(`${label} must be an integer`);
    }
  }
  if (isPair(day) && isPair(parts.month)) {
    throw new InvalidDateError("day range and month range together");
  }
  const suffix = parts.suffix ?? null;
  if (suffix !== null) {
    if (!(ORDINAL_SUFFIXES as readonly string[]).includes(suffix)) {
      throw new InvalidDateError(`unknown ordinal suffix '${suffix}'`);
    }
    if (typeof day !== "number") {
      throw new InvalidDateError("ordinal suffix without a single day");
    }
  }
}

/** Midnight of the first day of (year, month), rolling over December. */
function monthStart(year: number, month: number): number {
  if (month === 13) {
    year += 1;
    month = 1;
  }
  return civilToEpochMidnight({ year, month, day: 1 });
}

/**
 * Half-open timestamp interval denoted by `parts`.
 *
 * A full date spans one day, a day pair (a, b) spans [a, b + 1 day), a
 * dayless month spans the whole month, and a month pair (m1, m2) spans
 * the first of m1 to the first of the month after m2. Calendar-invalid
 * parts (day 31 in February, month 13, unsupported years, a mismatched
 * ordinal suffix) throw InvalidDateError.
 */
export function rangeOf(parts: DateParts): TimestampRange {
  validateParts(parts);
  const year = parts.year as number;
  if (year < MIN_YEAR || year > MAX_YEAR) {
    throw new InvalidDateError(
      `year ${year} outside supported span ${MIN_YEAR}..${MAX_YEAR}`
    );
  }
  const day = parts.day ?? null;
  if (isPair(parts.month)) {
    if (day !== null) {
      throw new InvalidDateError("day with a month range has no meaning");
    }
    const [first, last] = parts.month;
    if (first < 1 || first > 12 || last < 1 || last > 12) {
      throw new InvalidDateError(
        `month range [${first}, ${last}] outside 1..12`
      );
    }
    return { start: monthStart(year, first), end: monthStart(year, last + 1) };
  }
  const month = parts.month as number;
  if (month < 1 || month > 12) {
    throw new InvalidDateError(`month ${month} outside 1..12`);
  }
  if (day === null) {
    return { start: monthStart(year, month), end: monthStart(year, month + 1) };
  }
  const limit = daysInMonth(month, year);
  const [dayLo, dayHi] = isPair(day) ? day : [day as number, day as number];
  for (const value of [dayLo, dayHi]) {
    if (value < 1 || value > limit) {
      throw new InvalidDateError(
        `day ${value} invalid for ${year}-${String(month).padStart(2, "0")}`
      );
    }
  }
  const suffix = parts.suffix ?? null;
  if (suffix !== null && !ordinalSuffixValid(dayLo, suffix)) {
    throw new InvalidDateError(`suffix '${suffix}' does not fit day ${dayLo}`);
  }
  const start = civilToEpochMidnight({ year, month, day: dayLo });
  const end =
    civilToEpochMidnight({ year, month, day: dayHi }) + SECONDS_PER_DAY;
  return { start, end };
}
