"""Pattern synthesis from positive examples.

Examples are tokenized, aligned to their family's column template, and
each column's value set is summarized by the cheapest fragment under a
description-length cost: fragment size plus lambda times the log of how
many strings the fragment can produce. Larger lambda punishes broad
languages and favors tight enumerations of the observed values; smaller
lambda favors short general classes, down to pure shortest-description
at zero. Column choices combine exhaustively (templates are short), so
the produced pattern is exactly the cost minimum, with ties broken by
the shortest, then lexicographically smallest, per-column spelling.
"""

import itertools
import math
import re
from dataclasses import dataclass

from .banks import RegexBank, RegexEntry
from .extraction import preprocess_text
from .families import FAMILIES, Family, family_named
from .families import ALPHA as KIND_ALPHA
from .families import DIGITS as KIND_DIGITS
from .fragments import (
    Alternation,
    AnyAlpha,
    AnyDigit,
    Concat,
    Fragment,
    Literal,
    NumericRange,
    Opt,
    count_strings,
    matches,
    size,
    to_regex,
)

__all__ = [
    "CostParams",
    "Cluster",
    "SynthesizedPattern",
    "tokenize",
    "align_to_family",
    "cluster_by_shape",
    "candidate_fragments",
    "fragment_cost",
    "spelling_key",
    "segment_candidates",
    "synthesize_cluster",
    "synthesize_bank",
]


@dataclass(frozen=True, slots=True)
class CostParams:
    lam: float = 1.0
    max_len: int = 24

    def __post_init__(self) -> None:
        if self.lam < 0:
            raise ValueError("lambda must be non-negative")
        if self.max_len < 1:
            raise ValueError("max_len must be positive")


_TOKEN_RX = re.compile(r"[0-9]+|[A-Za-z]+|[^0-9A-Za-z]")


def tokenize(text: str) -> list[str]:
    """Digit runs, letter runs, and single other characters."""
    return _TOKEN_RX.findall(text)


def _units(family: Family) -> list[tuple[int | None, list[int]]]:
    """Column indexes grouped into alignment units, template order.

    A unit is one mandatory column, or the maximal run of columns
    sharing an optional-group id.
    """
    cols = family.columns
    units: list[tuple[int | None, list[int]]] = []
    i = 0
    while i < len(cols):
        group = cols[i].group
        if group is None:
            units.append((None, [i]))
            i += 1
            continue
        j = i
        while j < len(cols) and cols[j].group == group:
            j += 1
        units.append((group, list(range(i, j))))
        i = j
    return units


def align_to_family(
    family: Family, tokens: list[str]
) -> tuple[dict[int, str], dict[int, bool]] | None:
    """Assign tokens to template columns, right to left.

    Optional groups are taken greedily when their columns fit.
    Returns (column index -> token, group id -> present) or None when
    the tokens do not fit the template.
    """
    cols = family.columns
    values: dict[int, str] = {}
    present: dict[int, bool] = {}
    t = len(tokens) - 1
    for group, members in reversed(_units(family)):
        if group is None:
            ci = members[0]
            if t < 0 or not cols[ci].accepts(tokens[t]):
                return None
            values[ci] = tokens[t]
            t -= 1
            continue
        k = t
        tentative: dict[int, str] = {}
        for ci in reversed(members):
            if k < 0 or not cols[ci].accepts(tokens[k]):
                tentative = {}
                break
            tentative[ci] = tokens[k]
            k -= 1
        if tentative:
            values.update(tentative)
            t = k
            present[group] = True
        else:
            present[group] = False
    if t != -1:
        return None
    return values, present


@dataclass(frozen=True)
class Cluster:
    """Aggregated column values for one family across many examples."""

    family: Family
    size: int
    column_values: tuple[frozenset[str], ...]
    group_present: frozenset[int]
    group_absent: frozenset[int]


class _ClusterBuilder:
    def __init__(self, family: Family):
        self.family = family
        self.count = 0
        self.values: list[set[str]] = [set() for _ in family.columns]
        self.present: set[int] = set()
        self.absent: set[int] = set()

    def add(self, values: dict[int, str], present: dict[int, bool]) -> None:
        self.count += 1
        for ci, token in values.items():
            self.values[ci].add(token)
        for group, had in present.items():
            (self.present if had else self.absent).add(group)

    def freeze(self) -> Cluster:
        return Cluster(
            family=self.family,
            size=self.count,
            column_values=tuple(frozenset(v) for v in self.values),
            group_present=frozenset(self.present),
            group_absent=frozenset(self.absent),
        )


def _text_family(item) -> tuple[str, str]:
    if isinstance(item, tuple):
        text, family_name = item
        return text, family_name
    return item.text, item.family


def cluster_by_shape(examples) -> dict[str, Cluster]:
    """Group examples by family and collect per-column value sets.

    Example text is normalized first, so surface phrasing like the
    longform "of" never reaches the templates.
    """
    builders: dict[str, _ClusterBuilder] = {}
    for item in examples:
        raw, family_name = _text_family(item)
        text = preprocess_text(raw)
        family = family_named(family_name)
        aligned = align_to_family(family, tokenize(text))
        if aligned is None:
            raise ValueError(
                f"{text!r} does not fit the {family.name!r} template"
            )
        values, present = aligned
        builder = builders.get(family.name)
        if builder is None:
            builder = builders[family.name] = _ClusterBuilder(family)
        builder.add(values, present)
    return {name: b.freeze() for name, b in builders.items()}


def _numeric_range_for(values: frozenset[str]) -> NumericRange | None:
    padded = False
    numbers = []
    for v in values:
        n = int(v, 10)
        if v == str(n):
            numbers.append(n)
        elif len(v) == 2 and v[0] == "0" and n <= 9:
            padded = True
            numbers.append(n)
        else:
            return None
    return NumericRange(min(numbers), max(numbers), padded)


def candidate_fragments(values: frozenset[str], kind: str) -> tuple[Fragment, ...]:
    """The fragment alternatives considered for one column."""
    ordered = sorted(values)
    out: list[Fragment] = []
    if len(ordered) == 1:
        out.append(Literal(ordered[0]))
    else:
        out.append(Alternation(tuple(Literal(v) for v in ordered)))
    lengths = {len(v) for v in ordered}
    if kind == KIND_DIGITS:
        out.append(AnyDigit(min(lengths), max(lengths)))
        numeric = _numeric_range_for(values)
        if numeric is not None:
            out.append(numeric)
    elif kind == KIND_ALPHA:
        out.append(AnyAlpha(min(lengths), max(lengths)))
    return tuple(out)


def fragment_cost(fragment: Fragment, values, params: CostParams) -> float:
    """size + lambda * log2(universe); infinite if a value is missed."""
    for v in values:
        if not matches(fragment, v):
            return math.inf
    universe = count_strings(fragment, params.max_len)
    if universe < 1:
        return math.inf
    return size(fragment) + params.lam * math.log2(universe)


def spelling_key(pattern: str) -> tuple[int, str]:
    """Tie-break order for equal-cost patterns: shortest, then lex."""
    return (len(pattern), pattern)


def segment_candidates(
    values: frozenset[str], kind: str, params: CostParams
) -> list[tuple[float, str, Fragment]]:
    """All viable candidates for one column, cheapest first."""
    out = []
    for fragment in candidate_fragments(values, kind):
        cost = fragment_cost(fragment, values, params)
        if cost != math.inf:
            out.append((cost, to_regex(fragment), fragment))
    out.sort(key=lambda item: (item[0], spelling_key(item[1])))
    return out


@dataclass(frozen=True)
class SynthesizedPattern:
    family: Family
    fragment: Fragment
    pattern: str
    universe: int
    cost: float


def _column_candidates(
    cluster: Cluster, ci: int, params: CostParams
) -> list[Fragment]:
    column = cluster.family.columns[ci]
    candidates = segment_candidates(
        cluster.column_values[ci], column.kind, params
    )
    if not candidates:
        raise ValueError(f"no fragment covers column {column.name!r}")
    return [fragment for _, _, fragment in candidates]


def _optional_unit_options(
    cluster: Cluster, members: list[int], params: CostParams
) -> list[Fragment]:
    per_column = [_column_candidates(cluster, ci, params) for ci in members]
    options = []
    for combo in itertools.product(*per_column):
        inner = combo[0] if len(combo) == 1 else Concat(tuple(combo))
        options.append(Opt(inner))
    return options


def synthesize_cluster(
    cluster: Cluster, params: CostParams | None = None
) -> SynthesizedPattern:
    """Minimum-cost pattern for one cluster.

    Unit choices are combined exhaustively; the winner is the least
    cost, with ties resolved by the shortest (then lexicographically
    smallest) per-unit spelling, so a degenerate cluster collapses to
    its exact literal.
    """
    params = params or CostParams()
    option_lists: list[list[Fragment]] = []
    for group, members in _units(cluster.family):
        if group is not None and group not in cluster.group_present:
            continue
        if group is not None and group in cluster.group_absent:
            option_lists.append(
                _optional_unit_options(cluster, members, params)
            )
        else:
            for ci in members:
                option_lists.append(_column_candidates(cluster, ci, params))
    best = None
    for combo in itertools.product(*option_lists):
        fragment = combo[0] if len(combo) == 1 else Concat(tuple(combo))
        universe = count_strings(fragment, params.max_len)
        if universe < 1:
            continue
        cost = size(fragment) + params.lam * math.log2(universe)
        key = (
            cost,
            tuple(spelling_key(to_regex(piece)) for piece in combo),
        )
        if best is None or key < best[0]:
            best = (key, fragment, universe)
    if best is None:
        raise ValueError(f"no pattern covers cluster {cluster.family.name!r}")
    key, fragment, universe = best
    return SynthesizedPattern(
        family=cluster.family,
        fragment=fragment,
        pattern=to_regex(fragment),
        universe=universe,
        cost=key[0],
    )


def synthesize_bank(
    examples,
    params: CostParams | None = None,
    provenance: str = "synthesized",
) -> RegexBank:
    """One bank entry per family seen in `examples`.

    Entries are ordered by ascending universe size, so the scanner's
    priority tie-break prefers the most specific pattern. Accepts
    rendered examples or bare (text, family) pairs; may be fed from a
    generator, the examples are never materialized.
    """
    params = params or CostParams()
    clusters = cluster_by_shape(examples)
    if not clusters:
        raise ValueError("no examples to synthesize from")
    patterns = [
        synthesize_cluster(cluster, params) for cluster in clusters.values()
    ]
    patterns.sort(key=lambda p: (p.universe, p.pattern))
    entries = tuple(
        RegexEntry(
            priority=i,
            pattern=p.pattern,
            label=p.family.name,
            rules=p.family.rules,
            fragment=p.fragment,
        )
        for i, p in enumerate(patterns)
    )
    return RegexBank(provenance=provenance, entries=entries)
