"""Prioritized regex banks and the maps that turn matches into parts.

A bank is an ordered list of patterns. Entries may carry extraction
rules (see `families.PartRule`) that decompose a matched string into
day, month, and year; entries without rules only locate spans. Stored
patterns are context-free; the scanner compiles them with boundary
guards so a match can never sit flush against a letter or digit.
"""

import re
from dataclasses import dataclass, field
from functools import cached_property

from .civil import (
    ORDINAL_SUFFIXES,
    DateParts,
    InvalidDateError,
    month_from_name,
    ordinal_suffix_valid,
    resolve_two_digit_year,
)
from .families import PartRule
from .fragments import Fragment

__all__ = [
    "BOUNDARY_PREFIX",
    "BOUNDARY_SUFFIX",
    "DecompositionError",
    "RegexEntry",
    "RegexBank",
    "compile_guarded",
    "run_extraction_map",
    "builtin_community_bank",
    "builtin_bespoke_bank",
]

BOUNDARY_PREFIX = "(?<![0-9A-Za-z])(?:"
BOUNDARY_SUFFIX = ")(?![0-9A-Za-z])"


class DecompositionError(Exception):
    """A matched string did not break apart the way its map expects."""


def compile_guarded(pattern: str) -> "re.Pattern[str]":
    return re.compile(BOUNDARY_PREFIX + pattern + BOUNDARY_SUFFIX)


@dataclass(frozen=True, slots=True)
class RegexEntry:
    """One bank pattern with its priority and optional extraction map."""

    priority: int
    pattern: str
    label: str = ""
    rules: tuple[PartRule, ...] = ()
    fragment: Fragment | None = field(default=None, compare=False)


@dataclass(frozen=True)
class RegexBank:
    provenance: str
    entries: tuple[RegexEntry, ...]

    def __post_init__(self) -> None:
        for i, entry in enumerate(self.entries):
            if entry.priority != i:
                raise ValueError(
                    f"entry {i} carries priority {entry.priority}"
                )

    @cached_property
    def guarded(self) -> tuple["re.Pattern[str]", ...]:
        return tuple(compile_guarded(e.pattern) for e in self.entries)


def _over(state, fn):
    """Apply fn elementwise over a range pair, or directly to a scalar."""
    if isinstance(state, tuple):
        return tuple(fn(v) for v in state)
    return fn(state)


def _to_int(text: str) -> int:
    try:
        return int(text, 10)
    except (TypeError, ValueError):
        raise DecompositionError(f"expected digits, got {text!r}") from None


def _to_year(text: str) -> int:
    value = _to_int(text)
    if len(text) == 2:
        return resolve_two_digit_year(value)
    return value


def _to_month(text: str) -> int:
    if not isinstance(text, str):
        raise DecompositionError(f"expected a month name, got {text!r}")
    try:
        return month_from_name(text)
    except ValueError as exc:
        # The pattern admitted a word that is not a month.
        raise InvalidDateError(str(exc)) from None


_ORDINAL_SHAPE = re.compile(r"([0-9]+)([A-Za-z]+)?")


def _strip_ordinal(text: str) -> tuple[int, str | None]:
    if not isinstance(text, str):
        raise DecompositionError(f"not an ordinal day: {text!r}")
    m = _ORDINAL_SHAPE.fullmatch(text)
    if m is None:
        raise DecompositionError(f"not an ordinal day: {text!r}")
    day = int(m.group(1), 10)
    suffix = m.group(2)
    if suffix is not None:
        suffix = suffix.lower()
        if suffix not in ORDINAL_SUFFIXES:
            raise InvalidDateError(f"unknown ordinal suffix {suffix!r}")
        try:
            fits = ordinal_suffix_valid(day, suffix)
        except ValueError as exc:
            raise InvalidDateError(str(exc)) from None
        if not fits:
            raise InvalidDateError(f"suffix {suffix!r} does not fit {day}")
    return day, suffix


def _hyphen_pair(state):
    if not isinstance(state, str) or "-" not in state:
        return state
    pieces = [p.strip() for p in state.split("-")]
    if len(pieces) != 2 or not all(pieces):
        raise DecompositionError(f"not a two-ended range: {state!r}")
    return tuple(pieces)


def run_extraction_map(text: str, rules: tuple[PartRule, ...]) -> DateParts:
    """Decompose a matched string into DateParts via its rules.

    Structural surprises (bad split counts, non-digits where digits
    belong) raise DecompositionError; values that parse but make no
    calendar sense raise InvalidDateError.
    """
    values: dict[str, object] = {}
    ordinal_suffix: str | None = None
    for rule in rules:
        state: object = text
        absent = False
        for op in rule.ops:
            name = op[0]
            if name == "split":
                if not isinstance(state, str):
                    raise DecompositionError("split applies to text")
                state = [
                    p
                    for p in re.split("[" + re.escape(op[1]) + "]", state)
                    if p
                ]
            elif name == "index":
                if not isinstance(state, list):
                    raise DecompositionError("index applies to a split")
                try:
                    state = state[op[1]]
                except IndexError:
                    if rule.optional:
                        absent = True
                        break
                    raise DecompositionError(
                        f"no token at {op[1]} in {state!r}"
                    ) from None
            elif name == "int":
                state = _over(state, _to_int)
            elif name == "year":
                state = _over(state, _to_year)
            elif name == "month_name":
                state = _over(state, _to_month)
            elif name == "ordinal":
                stripped = _over(state, _strip_ordinal)
                if isinstance(stripped, tuple) and stripped and isinstance(
                    stripped[0], tuple
                ):
                    state = tuple(day for day, _ in stripped)
                else:
                    state, ordinal_suffix = stripped
            elif name == "hyphen_pair":
                state = _hyphen_pair(state)
            else:
                raise DecompositionError(f"unknown op {name!r}")
        if absent:
            continue
        values[rule.part] = state
    if "month" not in values or "year" not in values:
        raise DecompositionError("map yielded no month and year")
    return DateParts(
        month=values["month"],
        year=values["year"],
        day=values.get("day"),
        ordinal_suffix=ordinal_suffix,
    )


def _rule(part: str, split: str, index: int, *tail, optional: bool = False):
    ops: list[tuple] = [("split", split), ("index", index)]
    ops.extend(tail)
    return PartRule(part, tuple(ops), optional)


def builtin_community_bank() -> RegexBank:
    """Four patterns collected from shared snippet archives.

    Locate-only: no extraction maps, so their hits are judged by span
    alone.
    """
    months = (
        "January|February|March|April|May|June|July|August"
        "|September|October|November|December"
    )
    patterns = (
        ("day-fullmonth-year", f"[0-9]+ ({months}) [0-9]{{4}}"),
        ("slashed-numeric", "[0-9]{1,2}/[0-9]{1,2}/[0-9]{4}"),
        (
            "bounded-numeric",
            "(30|[12][0-9]|0?[1-9])[ /-](1[0-2]|0?[1-9])[ /-]"
            "([0-9]{4}|[0-9]{2})",
        ),
        (
            "century-numeric",
            "(\\d{1,2}[-\\./](0?[1-9]|1[012])[-\\./]((19|20)\\d{2}))",
        ),
    )
    entries = tuple(
        RegexEntry(priority=i, pattern=p, label=label)
        for i, (label, p) in enumerate(patterns)
    )
    return RegexBank(provenance="community", entries=entries)


def builtin_bespoke_bank() -> RegexBank:
    """Hand-written patterns with extraction maps.

    Deliberately loose on bounds (any 1..31-shaped number, any word of
    3..9 letters, any 2- or 4-digit year) and strict on shape; the
    decomposition step supplies the calendar judgement.
    """
    year = "([0-9]{4}|[0-9]{2})"
    entries = (
        RegexEntry(
            priority=0,
            pattern=f"[0-9]{{1,2}} ?- ?[0-9]{{1,2}}[./][0-9]{{1,2}}[./]{year}",
            label="numeric-day-range",
            rules=(
                _rule("day", "./", -3, ("hyphen_pair",), ("int",)),
                _rule("month", "./", -2, ("int",)),
                _rule("year", "./", -1, ("year",)),
            ),
        ),
        RegexEntry(
            priority=1,
            pattern=f"[A-Za-z]{{3,9}}-[A-Za-z]{{3,9}}[ ./]{year}",
            label="month-range",
            rules=(
                _rule("month", " ./", -2, ("hyphen_pair",), ("month_name",)),
                _rule("year", " ./", -1, ("year",)),
            ),
        ),
        RegexEntry(
            priority=2,
            pattern=(
                "(the )?[0-9]{1,2}(st|nd|rd|th)?"
                "(-[0-9]{1,2}(st|nd|rd|th)?)?"
                " [A-Za-z]{3,9}(-[A-Za-z]{3,9})?"
                f",? {year}"
            ),
            label="longform",
            rules=(
                _rule("day", " ,", -3, ("hyphen_pair",), ("ordinal",)),
                _rule("month", " ,", -2, ("hyphen_pair",), ("month_name",)),
                _rule("year", " ,", -1, ("year",)),
            ),
        ),
        RegexEntry(
            priority=3,
            pattern=f"[0-9]{{1,2}}[ ./-][A-Za-z]{{3,9}}[ ./-]{year}",
            label="monthname-day",
            rules=(
                _rule("day", " ./-", -3, ("int",)),
                _rule("month", " ./-", -2, ("month_name",)),
                _rule("year", " ./-", -1, ("year",)),
            ),
        ),
        RegexEntry(
            priority=4,
            pattern=f"[A-Za-z]{{3,9}}[ ./-]{year}",
            label="monthname-dayless",
            rules=(
                _rule("month", " ./-", -2, ("month_name",)),
                _rule("year", " ./-", -1, ("year",)),
            ),
        ),
        RegexEntry(
            priority=5,
            pattern=f"([0-9]{{1,2}}[./-])?[0-9]{{1,2}}[./-]{year}",
            label="numeric",
            rules=(
                _rule("day", "./-", -3, ("int",), optional=True),
                _rule("month", "./-", -2, ("int",)),
                _rule("year", "./-", -1, ("year",)),
            ),
        ),
    )
    return RegexBank(provenance="bespoke", entries=entries)
