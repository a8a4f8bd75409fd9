"""Pattern fragments: a small algebra compiled to portable regexes.

A fragment describes a finite set of strings. The rendered patterns use
only literals, character sets, alternation, grouping, bounded repetition
and optionality, so they run unchanged on any mainstream regex engine;
there is no unbounded repetition.

`count_strings` sizes a fragment's language exactly by dynamic counting
over the tree. Combining counts assumes what holds for fragments built
here by construction: alternation branches are distinct and
concatenations are uniquely decodable (adjacent parts never blur into
each other, which token-structured columns guarantee).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True, slots=True)
class Literal:
    """Exactly one string."""

    text: str


@dataclass(frozen=True, slots=True)
class AnyDigit:
    """Any digit run between min_len and max_len characters long."""

    min_len: int
    max_len: int


@dataclass(frozen=True, slots=True)
class AnyAlpha:
    """Any ASCII letter run between min_len and max_len characters."""

    min_len: int
    max_len: int


@dataclass(frozen=True, slots=True)
class NumericRange:
    """Decimal integers low..high; padded also admits 0-padded units.

    The language holds str(v) for each v in [low, high], plus "0" + str(v)
    for the single-digit members when `padded` is set.
    """

    low: int
    high: int
    padded: bool


@dataclass(frozen=True, slots=True)
class Alternation:
    """Union of the branch languages; branches must be distinct."""

    branches: tuple["Fragment", ...]


@dataclass(frozen=True, slots=True)
class Opt:
    """The child language plus the empty string."""

    child: "Fragment"


@dataclass(frozen=True, slots=True)
class Concat:
    """Concatenation of the part languages, in order."""

    parts: tuple["Fragment", ...]


Fragment = Literal | AnyDigit | AnyAlpha | NumericRange | Alternation | Opt | Concat


def size(fragment: Fragment) -> int:
    """Node count of the fragment tree."""
    if isinstance(fragment, (Literal, AnyDigit, AnyAlpha, NumericRange)):
        return 1
    if isinstance(fragment, Alternation):
        return 1 + sum(size(b) for b in fragment.branches)
    if isinstance(fragment, Opt):
        return 1 + size(fragment.child)
    if isinstance(fragment, Concat):
        return 1 + sum(size(p) for p in fragment.parts)
    raise TypeError(f"not a fragment: {fragment!r}")


def _numeric_strings_by_length(fragment: NumericRange) -> dict[int, int]:
    counts: dict[int, int] = {}
    for value in range(fragment.low, fragment.high + 1):
        width = len(str(value))
        counts[width] = counts.get(width, 0) + 1
    if fragment.padded:
        padded = sum(1 for v in range(fragment.low, fragment.high + 1) if 0 <= v <= 9)
        if padded:
            counts[2] = counts.get(2, 0) + padded
    return counts


def _length_counts(fragment: Fragment, max_len: int) -> list[int]:
    """counts[L] = number of language strings of length L, L <= max_len."""
    counts = [0] * (max_len + 1)
    if isinstance(fragment, Literal):
        if len(fragment.text) <= max_len:
            counts[len(fragment.text)] = 1
    elif isinstance(fragment, AnyDigit):
        for length in range(fragment.min_len, min(fragment.max_len, max_len) + 1):
            counts[length] = 10**length
    elif isinstance(fragment, AnyAlpha):
        for length in range(fragment.min_len, min(fragment.max_len, max_len) + 1):
            counts[length] = 52**length
    elif isinstance(fragment, NumericRange):
        for length, n in _numeric_strings_by_length(fragment).items():
            if length <= max_len:
                counts[length] += n
    elif isinstance(fragment, Alternation):
        for branch in fragment.branches:
            for length, n in enumerate(_length_counts(branch, max_len)):
                counts[length] += n
    elif isinstance(fragment, Opt):
        counts = _length_counts(fragment.child, max_len)
        counts[0] += 1
    elif isinstance(fragment, Concat):
        counts[0] = 1
        for part in fragment.parts:
            part_counts = _length_counts(part, max_len)
            merged = [0] * (max_len + 1)
            for have, n in enumerate(counts):
                if n == 0:
                    continue
                for extra in range(max_len - have + 1):
                    if part_counts[extra]:
                        merged[have + extra] += n * part_counts[extra]
            counts = merged
    else:
        raise TypeError(f"not a fragment: {fragment!r}")
    return counts


def count_strings(fragment: Fragment, max_len: int) -> int:
    """Exact number of distinct language strings of length <= max_len."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    return sum(_length_counts(fragment, max_len))


def _char_set(chars: str) -> str:
    """Character-set expression; '-' is escaped, members sorted."""
    members = sorted(set(chars))
    if len(members) == 1:
        return re.escape(members[0])
    rendered = "".join(
        "\\" + ch if ch in "-]^\\" else ch for ch in members
    )
    return f"[{rendered}]"


def _fixed_width_range(low: str, high: str) -> list[str]:
    """Alternatives covering decimal strings low..high of equal width."""
    if len(low) == 1:
        if low == high:
            return [low]
        return [f"[{low}-{high}]"]
    width = len(low)
    rest = width - 1
    tail_any = f"[0-9]{{{rest}}}" if rest > 1 else "[0-9]"
    if low[0] == high[0]:
        inner = _fixed_width_range(low[1:], high[1:])
        return [low[0] + _join_alternatives(inner)]
    pieces: list[str] = []
    if low[1:] == "0" * rest and high[1:] == "9" * rest:
        return [f"[{low[0]}-{high[0]}]" + tail_any]
    if low[1:] == "0" * rest:
        low_head = int(low[0]) - 1  # fold the low block into the middle span
    else:
        low_head = int(low[0])
        pieces.append(low[0] + _join_alternatives(_fixed_width_range(low[1:], "9" * rest)))
    if high[1:] == "9" * rest:
        high_head = int(high[0]) + 1
        high_piece = None
    else:
        high_head = int(high[0])
        high_piece = high[0] + _join_alternatives(_fixed_width_range("0" * rest, high[1:]))
    if high_head - low_head >= 2:
        first, last = low_head + 1, high_head - 1
        head = str(first) if first == last else f"[{first}-{last}]"
        pieces.append(head + tail_any)
    if high_piece is not None:
        pieces.append(high_piece)
    return pieces


def _join_alternatives(pieces: list[str]) -> str:
    if len(pieces) == 1:
        return pieces[0] if _is_atom(pieces[0]) else f"({pieces[0]})"
    return "(" + "|".join(pieces) + ")"


_ATOM = re.compile(
    r"""(?x)^(?:
        \\.                      # one escaped character
      | [^\\()\[\]|?{}]          # one plain character
      | \[(?:\\.|[^\]])+\]       # one character set
    )$"""
)


def _is_atom(pattern: str) -> bool:
    """True when `pattern` is safe to quantify or embed without a group."""
    if _ATOM.match(pattern):
        return True
    # A whole bracket set or group followed by a bounded repetition.
    m = re.match(r"^(\[(?:\\.|[^\]])+\]|\((?:[^()]|\\.)*\))(\{\d+(,\d+)?\})?$", pattern)
    return m is not None


def _numeric_range_regex(fragment: NumericRange) -> str:
    by_width: dict[int, list[str]] = {}
    low, high = fragment.low, fragment.high
    for width in range(len(str(low)), len(str(high)) + 1):
        lo = max(low, 10 ** (width - 1) if width > 1 else 0)
        hi = min(high, 10**width - 1)
        if lo > hi:
            continue
        by_width.setdefault(width, []).extend(
            _fixed_width_range(str(lo).zfill(width), str(hi))
        )
    if fragment.padded:
        lo = max(low, 0)
        hi = min(high, 9)
        if lo <= hi:
            padded = "0" + (str(lo) if lo == hi else f"[{lo}-{hi}]")
            by_width.setdefault(2, []).append(padded)
    pieces: list[str] = []
    for width in sorted(by_width, reverse=True):  # longest alternatives first
        pieces.extend(by_width[width])
    return "|".join(pieces)


def to_regex(fragment: Fragment) -> str:
    """Portable pattern for the fragment; may have top-level alternation."""
    if isinstance(fragment, Literal):
        return re.escape(fragment.text)
    if isinstance(fragment, AnyDigit):
        return "[0-9]" + _bounds(fragment.min_len, fragment.max_len)
    if isinstance(fragment, AnyAlpha):
        return "[A-Za-z]" + _bounds(fragment.min_len, fragment.max_len)
    if isinstance(fragment, NumericRange):
        return _numeric_range_regex(fragment)
    if isinstance(fragment, Alternation):
        if all(
            isinstance(b, Literal) and len(b.text) == 1 for b in fragment.branches
        ):
            return _char_set("".join(b.text for b in fragment.branches))
        rendered = sorted(
            (to_regex(b) for b in fragment.branches),
            key=lambda p: (-len(p), p),
        )
        return "|".join(rendered)
    if isinstance(fragment, Opt):
        inner = to_regex(fragment.child)
        if not _is_atom(inner):
            inner = f"({inner})"
        return inner + "?"
    if isinstance(fragment, Concat):
        rendered = []
        for part in fragment.parts:
            piece = to_regex(part)
            # Opt already renders as an atom plus "?"; anything else
            # with a top-level alternation needs its own group.
            if (
                not isinstance(part, Opt)
                and "|" in piece
                and not _is_atom(piece)
            ):
                piece = f"({piece})"
            rendered.append(piece)
        return "".join(rendered)
    raise TypeError(f"not a fragment: {fragment!r}")


def _bounds(min_len: int, max_len: int) -> str:
    if min_len == max_len:
        return "" if min_len == 1 else f"{{{min_len}}}"
    return f"{{{min_len},{max_len}}}"


@lru_cache(maxsize=4096)
def _compiled(pattern: str) -> re.Pattern[str]:
    return re.compile(pattern)


def matches(fragment: Fragment, text: str) -> bool:
    """True when `text` is in the fragment's language."""
    return _compiled(to_regex(fragment)).fullmatch(text) is not None
