"""Shape templates for the date expressions the toolkit understands.

A family describes one surface shape as a sequence of token columns
(digit runs, letter runs, single punctuation marks) plus the recipe for
pulling day, month, and year back out of a matched string. Columns that
come and go together (an optional day with its trailing separator, the
spaces around a range hyphen) share a group id.
"""

from dataclasses import dataclass, field

__all__ = [
    "ALPHA",
    "DIGITS",
    "PUNCT",
    "Column",
    "PartRule",
    "Family",
    "FAMILIES",
    "family_named",
]

DIGITS = "digits"
ALPHA = "alpha"
PUNCT = "punct"

Op = tuple
Ops = tuple[Op, ...]


@dataclass(frozen=True, slots=True)
class Column:
    """One token position in a family template.

    `chars` restricts punctuation columns to a set of allowed single
    characters; digit and letter columns leave it None. Columns sharing
    a `group` id are present or absent together.
    """

    name: str
    kind: str
    chars: str | None = None
    group: int | None = None

    def accepts(self, token: str) -> bool:
        if self.kind == DIGITS:
            return token.isdigit()
        if self.kind == ALPHA:
            return token.isalpha()
        return len(token) == 1 and token in self.chars


@dataclass(frozen=True, slots=True)
class PartRule:
    """How to recover one date part from a matched string.

    `ops` is a pipeline over the matched text; see the extraction
    module for the op vocabulary. An optional rule yields no part when
    its index step runs off the end of the split.
    """

    part: str
    ops: Ops
    optional: bool = False


@dataclass(frozen=True, slots=True)
class Family:
    name: str
    columns: tuple[Column, ...]
    rules: tuple[PartRule, ...] = field(repr=False)

    def group_members(self) -> dict[int, tuple[int, ...]]:
        """Column indexes per optional group, in template order."""
        members: dict[int, list[int]] = {}
        for i, col in enumerate(self.columns):
            if col.group is not None:
                members.setdefault(col.group, []).append(i)
        return {g: tuple(ix) for g, ix in members.items()}


def _rules(split: str, *specs: tuple) -> tuple[PartRule, ...]:
    out = []
    for part, index, tail, optional in specs:
        ops: list[Op] = [("split", split), ("index", index)]
        ops.extend(tail)
        out.append(PartRule(part, tuple(ops), optional))
    return tuple(out)


NUMERIC_SHORT = Family(
    name="numeric-short",
    columns=(
        Column("day", DIGITS, group=0),
        Column("sep1", PUNCT, "-./", group=0),
        Column("month", DIGITS),
        Column("sep2", PUNCT, "-./"),
        Column("year", DIGITS),
    ),
    rules=_rules(
        "-./",
        ("day", -3, (("int",),), True),
        ("month", -2, (("int",),), False),
        ("year", -1, (("year",),), False),
    ),
)

MONTHNAME_DAY = Family(
    name="monthname-day",
    columns=(
        Column("day", DIGITS),
        Column("sep1", PUNCT, " -./"),
        Column("month", ALPHA),
        Column("sep2", PUNCT, " -./"),
        Column("year", DIGITS),
    ),
    rules=_rules(
        " -./",
        ("day", -3, (("int",),), False),
        ("month", -2, (("month_name",),), False),
        ("year", -1, (("year",),), False),
    ),
)

MONTHNAME_DAYLESS = Family(
    name="monthname-dayless",
    columns=(
        Column("month", ALPHA),
        Column("sep", PUNCT, " -./"),
        Column("year", DIGITS),
    ),
    rules=_rules(
        " -./",
        ("month", -2, (("month_name",),), False),
        ("year", -1, (("year",),), False),
    ),
)

LONGFORM_ORDINAL = Family(
    name="longform-ordinal",
    columns=(
        Column("day", DIGITS),
        Column("ord", ALPHA),
        Column("sp1", PUNCT, " "),
        Column("month", ALPHA),
        Column("comma", PUNCT, ",", group=0),
        Column("sp2", PUNCT, " "),
        Column("year", DIGITS),
    ),
    rules=_rules(
        " ,",
        ("day", -3, (("ordinal",),), False),
        ("month", -2, (("month_name",),), False),
        ("year", -1, (("year",),), False),
    ),
)

DAY_RANGE = Family(
    name="day-range",
    columns=(
        Column("day_a", DIGITS),
        Column("sp1", PUNCT, " ", group=0),
        Column("hyphen", PUNCT, "-"),
        Column("sp2", PUNCT, " ", group=1),
        Column("day_b", DIGITS),
        Column("sep1", PUNCT, "./"),
        Column("month", DIGITS),
        Column("sep2", PUNCT, "./"),
        Column("year", DIGITS),
    ),
    rules=_rules(
        "./",
        ("day", -3, (("hyphen_pair",), ("int",)), False),
        ("month", -2, (("int",),), False),
        ("year", -1, (("year",),), False),
    ),
)

FAMILIES: tuple[Family, ...] = (
    NUMERIC_SHORT,
    MONTHNAME_DAY,
    MONTHNAME_DAYLESS,
    LONGFORM_ORDINAL,
    DAY_RANGE,
)

_BY_NAME = {family.name: family for family in FAMILIES}


def family_named(name: str) -> Family:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}") from None
