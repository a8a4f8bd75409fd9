"""Normalization, page scanning, and cross-line date assembly."""

import re
from dataclasses import dataclass, replace

from .banks import DecompositionError, RegexBank, run_extraction_map
from .civil import DateParts, InvalidDateError, TimestampRange, month_from_name, range_of

__all__ = [
    "preprocess_text",
    "Detection",
    "scan",
    "assemble_multiline",
    "scan_multiline",
]

_TO_THE = re.compile(r"\bto\s+the\b", re.IGNORECASE)
_OF = re.compile(r"\bof\b", re.IGNORECASE)
_SPACES = re.compile(r" {2,}")


def preprocess_text(text: str) -> str:
    """Normalize transcribed phrasing ahead of scanning.

    "to the" becomes a range hyphen, filler "of" drops out, and runs
    of spaces collapse to one. Newlines survive untouched. Applying
    the function twice changes nothing.
    """
    text = _TO_THE.sub("-", text)
    text = _OF.sub("", text)
    return _SPACES.sub(" ", text)


@dataclass(frozen=True, slots=True)
class Detection:
    """One accepted match: where it sat and what date it names.

    `parts` and `range` stay None for locate-only bank entries.
    `lines` is set when the match came from tokens reassembled across
    page lines; its span then indexes lines, not characters.
    """

    page_id: str
    span: tuple[int, int]
    matched_text: str
    bank_entry: int
    label: str
    parts: DateParts | None = None
    range: TimestampRange | None = None
    lines: tuple[int, int] | None = None


def scan(text: str, bank: RegexBank, page_id: str = "") -> tuple[Detection, ...]:
    """Find every date expression in `text` using `bank`.

    Matches are taken leftmost first, longest next, lowest entry
    priority last. An accepted span is masked out so nothing inside it
    can match again. A match whose decomposition fails is skipped and
    the search resumes one character past its start.
    """
    guarded = bank.guarded
    work = text
    detections: list[Detection] = []
    pos = 0
    while True:
        best = None
        for idx, rx in enumerate(guarded):
            m = rx.search(work, pos)
            if m is None:
                continue
            key = (m.start(), m.start() - m.end(), idx)
            if best is None or key < best[0]:
                best = (key, idx, m)
        if best is None:
            break
        _, idx, m = best
        start, end = m.start(), m.end()
        entry = bank.entries[idx]
        matched = work[start:end]
        parts = None
        span_range = None
        if entry.rules:
            try:
                parts = run_extraction_map(matched, entry.rules)
                span_range = range_of(parts)
            except (DecompositionError, InvalidDateError):
                pos = start + 1
                continue
        detections.append(
            Detection(
                page_id=page_id,
                span=(start, end),
                matched_text=matched,
                bank_entry=idx,
                label=entry.label,
                parts=parts,
                range=span_range,
            )
        )
        work = work[:start] + "\x00" * (end - start) + work[end:]
        pos = start
    return tuple(detections)


_DAY_TOKEN = re.compile(r"([0-9]{1,2})(st|nd|rd|th)?", re.IGNORECASE)
_YEAR_TOKEN = re.compile(r"[0-9]{2}|[0-9]{4}")
_NAME_TOKEN = re.compile(r"[A-Za-z]{3,9}")


def _classify(line: str) -> tuple[str, frozenset[str]]:
    token = line.strip()
    kinds = set()
    if token and not any(ch.isspace() for ch in token):
        if _DAY_TOKEN.fullmatch(token):
            kinds.add("day")
        if _YEAR_TOKEN.fullmatch(token):
            kinds.add("year")
        if token.isdigit() and len(token) <= 2:
            kinds.add("month")
        if _NAME_TOKEN.fullmatch(token):
            try:
                month_from_name(token)
            except ValueError:
                pass
            else:
                kinds.add("month")
                kinds.add("named-month")
    return token, frozenset(kinds)


def _strip_day(token: str) -> str:
    return _DAY_TOKEN.fullmatch(token).group(1)


def assemble_multiline(lines) -> tuple[tuple[str, tuple[int, int]], ...]:
    """Rebuild dates whose parts landed on consecutive lines.

    A run of lines each holding one bare token is read greedily:
    day/month/year triplets first, then month/year pairs, but a pair
    only counts when it cannot be something else (a named month, or a
    four-digit year). Ordinal suffixes are dropped from the rebuilt
    text. Returns (candidate, (first_line, last_line)) tuples.
    """
    classified = [_classify(line) for line in lines]
    candidates: list[tuple[str, tuple[int, int]]] = []
    i = 0
    n = len(classified)
    while i < n:
        token, kinds = classified[i]
        if not kinds:
            i += 1
            continue
        if (
            i + 2 < n
            and "day" in kinds
            and "month" in classified[i + 1][1]
            and "year" in classified[i + 2][1]
        ):
            day = _strip_day(token)
            candidate = f"{day}/{classified[i + 1][0]}/{classified[i + 2][0]}"
            candidates.append((candidate, (i, i + 2)))
            i += 3
            continue
        if i + 1 < n and "month" in kinds and "year" in classified[i + 1][1]:
            year_token = classified[i + 1][0]
            if "named-month" in kinds or len(year_token) == 4:
                candidates.append(
                    (f"{token}/{year_token}", (i, i + 1))
                )
                i += 2
                continue
        i += 1
    return tuple(candidates)


def scan_multiline(lines, bank: RegexBank, page_id: str = "") -> tuple[Detection, ...]:
    """Scan candidates rebuilt from split lines; tags hits with the
    line span they came from."""
    out: list[Detection] = []
    for candidate, line_span in assemble_multiline(lines):
        for det in scan(candidate, bank, page_id):
            out.append(replace(det, lines=line_span))
    return tuple(out)
