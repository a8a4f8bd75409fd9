"""Tests for pattern synthesis from positive examples."""

import itertools
import math
import re

import pytest

from datespan.banks import run_extraction_map
from datespan.civil import CivilDate
from datespan.corpus import GenerationConfig, generate_examples
from datespan.extraction import preprocess_text, scan
from datespan.families import ALPHA, DIGITS, PUNCT, family_named
from datespan.fragments import (
    Alternation,
    AnyAlpha,
    AnyDigit,
    Concat,
    Literal,
    NumericRange,
    Opt,
    count_strings,
    size,
    to_regex,
)
from datespan.synthesis import (
    Cluster,
    CostParams,
    align_to_family,
    candidate_fragments,
    cluster_by_shape,
    fragment_cost,
    segment_candidates,
    spelling_key,
    synthesize_bank,
    synthesize_cluster,
    tokenize,
)


class TestTokenize:
    def test_splits_digit_alpha_punct_runs(self):
        assert tokenize("3rd June - 2nd July 1970") == [
            "3", "rd", " ", "June", " ", "-", " ", "2", "nd", " ",
            "July", " ", "1970",
        ]

    def test_punctuation_is_single_characters(self):
        assert tokenize("01/02/2001") == ["01", "/", "02", "/", "2001"]
        assert tokenize("--") == ["-", "-"]

    def test_lossless(self):
        for text in ("03 - 05.06.1970", "June 1970", "a1!b2?"):
            assert "".join(tokenize(text)) == text

    def test_empty(self):
        assert tokenize("") == []


class TestAlignToFamily:
    def test_numeric_full(self):
        family = family_named("numeric-short")
        values, present = align_to_family(family, tokenize("01/02/2001"))
        assert values == {0: "01", 1: "/", 2: "02", 3: "/", 4: "2001"}
        assert present == {0: True}

    def test_numeric_dayless(self):
        family = family_named("numeric-short")
        values, present = align_to_family(family, tokenize("06/1970"))
        assert values == {2: "06", 3: "/", 4: "1970"}
        assert present == {0: False}

    def test_longform_with_comma(self):
        family = family_named("longform-ordinal")
        values, present = align_to_family(family, tokenize("3rd June, 1970"))
        assert values[0] == "3"
        assert values[1] == "rd"
        assert values[3] == "June"
        assert values[4] == ","
        assert values[6] == "1970"
        assert present == {0: True}

    def test_longform_without_comma(self):
        family = family_named("longform-ordinal")
        values, present = align_to_family(family, tokenize("3rd June 1970"))
        assert 4 not in values
        assert present == {0: False}

    def test_day_range_spacing_variants(self):
        family = family_named("day-range")
        spaced, spaced_present = align_to_family(
            family, tokenize("03 - 05.06.1970")
        )
        tight, tight_present = align_to_family(family, tokenize("3-5.6.1970"))
        assert spaced[0] == "03" and spaced[4] == "05"
        assert spaced_present == {0: True, 1: True}
        assert tight[0] == "3" and tight[4] == "5"
        assert tight_present == {0: False, 1: False}

    def test_misfit_returns_none(self):
        numeric = family_named("numeric-short")
        assert align_to_family(numeric, tokenize("June/1970")) is None
        assert align_to_family(numeric, tokenize("01/02/03/2001")) is None
        assert align_to_family(numeric, tokenize("")) is None

    def test_leftover_tokens_fail(self):
        family = family_named("monthname-dayless")
        assert align_to_family(family, tokenize("on June 1970")) is None


class TestClusterByShape:
    def test_groups_by_family(self):
        clusters = cluster_by_shape(
            [
                ("01/02/2001", "numeric-short"),
                ("3-4-1999", "numeric-short"),
                ("06/1970", "numeric-short"),
                ("June 1970", "monthname-dayless"),
            ]
        )
        assert set(clusters) == {"numeric-short", "monthname-dayless"}
        numeric = clusters["numeric-short"]
        assert numeric.size == 3
        assert numeric.column_values[0] == {"01", "3"}
        assert numeric.column_values[2] == {"02", "4", "06"}
        assert numeric.column_values[4] == {"2001", "1999", "1970"}
        assert numeric.group_present == {0}
        assert numeric.group_absent == {0}

    def test_mandatory_group_when_always_present(self):
        clusters = cluster_by_shape(
            [("01/02/2001", "numeric-short"), ("3-4-1999", "numeric-short")]
        )
        cluster = clusters["numeric-short"]
        assert cluster.group_present == {0}
        assert cluster.group_absent == frozenset()

    def test_text_is_normalized_first(self):
        clusters = cluster_by_shape([("3rd of June, 1970", "longform-ordinal")])
        cluster = clusters["longform-ordinal"]
        assert cluster.column_values[3] == {"June"}

    def test_accepts_rendered_examples(self):
        cfg = GenerationConfig(
            CivilDate(1970, 6, 3), CivilDate(1970, 6, 3), pad_variants=False
        )
        clusters = cluster_by_shape(generate_examples(cfg))
        assert "numeric-short" in clusters
        assert "longform-ordinal" in clusters

    def test_misfit_raises(self):
        with pytest.raises(ValueError):
            cluster_by_shape([("June 1970", "numeric-short")])


class TestCandidateFragments:
    def test_single_digit_value(self):
        frags = candidate_fragments(frozenset({"01"}), DIGITS)
        assert Literal("01") in frags
        assert AnyDigit(2, 2) in frags
        assert NumericRange(1, 1, True) in frags

    def test_multiple_digit_values(self):
        frags = candidate_fragments(frozenset({"1", "12", "31"}), DIGITS)
        alts = [f for f in frags if isinstance(f, Alternation)]
        assert len(alts) == 1
        assert AnyDigit(1, 2) in frags
        assert NumericRange(1, 31, False) in frags

    def test_long_leading_zero_blocks_numeric_range(self):
        frags = candidate_fragments(frozenset({"0123"}), DIGITS)
        assert not any(isinstance(f, NumericRange) for f in frags)

    def test_alpha_values(self):
        frags = candidate_fragments(frozenset({"Jun", "June"}), ALPHA)
        assert AnyAlpha(3, 4) in frags
        assert not any(isinstance(f, (AnyDigit, NumericRange)) for f in frags)

    def test_punct_values(self):
        frags = candidate_fragments(frozenset({"/", "-"}), PUNCT)
        assert len(frags) == 1
        assert isinstance(frags[0], Alternation)


class TestFragmentCost:
    def test_formula(self):
        params = CostParams(lam=1.0, max_len=24)
        cost = fragment_cost(AnyDigit(2, 2), {"03"}, params)
        assert cost == pytest.approx(1 + math.log2(100))

    def test_unmatched_value_is_infinite(self):
        params = CostParams()
        assert fragment_cost(Literal("01"), {"01", "02"}, params) == math.inf

    def test_lambda_zero_ignores_universe(self):
        params = CostParams(lam=0.0)
        assert fragment_cost(AnyDigit(2, 2), {"03"}, params) == 1.0
        assert fragment_cost(Literal("03"), {"03"}, params) == 1.0

    def test_rejects_bad_params(self):
        with pytest.raises(ValueError):
            CostParams(lam=-1.0)
        with pytest.raises(ValueError):
            CostParams(max_len=0)


class TestSegmentCandidates:
    def test_sorted_cheapest_first(self):
        params = CostParams()
        ranked = segment_candidates(frozenset({"st", "nd", "rd", "th"}), ALPHA, params)
        assert to_regex(ranked[0][2]) == "nd|rd|st|th"
        costs = [cost for cost, _, _ in ranked]
        assert costs == sorted(costs)

    def test_tie_breaks_on_shortest_spelling(self):
        params = CostParams(lam=0.0)
        ranked = segment_candidates(frozenset({"01"}), DIGITS, params)
        assert [entry[1] for entry in ranked] == ["01", "01|1", "[0-9]{2}"]
        assert spelling_key("01") < spelling_key("01|1") < spelling_key("[0-9]{2}")


def _exhaustive_minimum(cluster, params):
    """Re-derive the winning pattern by brute-force combination."""
    option_lists = []
    columns = cluster.family.columns
    grouped: dict[int | None, list[int]] = {}
    order: list[tuple[int | None, list[int]]] = []
    i = 0
    while i < len(columns):
        group = columns[i].group
        if group is None:
            order.append((None, [i]))
            i += 1
            continue
        members = []
        while i < len(columns) and columns[i].group == group:
            members.append(i)
            i += 1
        order.append((group, members))
    for group, members in order:
        if group is not None and group not in cluster.group_present:
            continue
        member_options = [
            [
                frag
                for frag in candidate_fragments(
                    cluster.column_values[ci], columns[ci].kind
                )
                if fragment_cost(frag, cluster.column_values[ci], params)
                != math.inf
            ]
            for ci in members
        ]
        if group is not None and group in cluster.group_absent:
            combos = []
            for combo in itertools.product(*member_options):
                inner = combo[0] if len(combo) == 1 else Concat(tuple(combo))
                combos.append(Opt(inner))
            option_lists.append(combos)
        else:
            option_lists.extend(member_options)
    best = None
    for combo in itertools.product(*option_lists):
        fragment = combo[0] if len(combo) == 1 else Concat(tuple(combo))
        universe = count_strings(fragment, params.max_len)
        if universe < 1:
            continue
        cost = size(fragment) + params.lam * math.log2(universe)
        key = (cost, tuple(spelling_key(to_regex(piece)) for piece in combo))
        if best is None or key < best[0]:
            best = (key, fragment)
    return best


class TestSynthesizeCluster:
    def _cluster(self, pairs):
        clusters = cluster_by_shape(pairs)
        assert len(clusters) == 1
        return next(iter(clusters.values()))

    def test_matches_exhaustive_minimum(self):
        params = CostParams()
        pairs = [
            (f"{day:02d}/{month:02d}/{1960 + month}", "numeric-short")
            for day in (1, 9, 17, 28)
            for month in (1, 6, 12)
        ] + [("06/1970", "numeric-short")]
        cluster = self._cluster(pairs)
        expected = _exhaustive_minimum(cluster, params)
        got = synthesize_cluster(cluster, params)
        assert got.pattern == to_regex(expected[1])
        assert got.cost == pytest.approx(expected[0][0])

    def test_matches_exhaustive_minimum_monthname(self):
        params = CostParams()
        pairs = [
            ("June 1970", "monthname-dayless"),
            ("Jun 1970", "monthname-dayless"),
            ("July-70", "monthname-dayless"),
            ("Jul.1970", "monthname-dayless"),
        ]
        cluster = self._cluster(pairs)
        expected = _exhaustive_minimum(cluster, params)
        got = synthesize_cluster(cluster, params)
        assert got.pattern == to_regex(expected[1])

    def test_matches_exhaustive_minimum_lambda_sweep(self):
        pairs = [
            ("01/02/2001", "numeric-short"),
            ("1.2.01", "numeric-short"),
            ("12/2001", "numeric-short"),
        ]
        cluster = self._cluster(pairs)
        for lam in (0.0, 0.5, 1.0, 2.0, 5.0):
            params = CostParams(lam=lam)
            expected = _exhaustive_minimum(cluster, params)
            got = synthesize_cluster(cluster, params)
            assert got.pattern == to_regex(expected[1]), f"lam={lam}"

    def test_single_example_lambda_zero_is_exact_literal(self):
        cluster = self._cluster([("01/02/2001", "numeric-short")])
        got = synthesize_cluster(cluster, CostParams(lam=0.0))
        assert got.pattern == "01/02/2001"

    def test_larger_lambda_buys_precision(self):
        pairs = [(f"{d:02d}/06/1970", "numeric-short") for d in range(1, 31)]
        cluster = self._cluster(pairs)
        tight = synthesize_cluster(cluster, CostParams(lam=100.0))
        loose = synthesize_cluster(cluster, CostParams(lam=0.0))
        assert "|" in tight.pattern
        assert tight.universe <= loose.universe
        # At lambda 100 the day column pays for a full enumeration.
        assert "01|02|" in tight.pattern

    def test_absent_group_is_dropped(self):
        cluster = self._cluster([("06/1970", "numeric-short")])
        got = synthesize_cluster(cluster, CostParams(lam=0.0))
        assert got.pattern == "06/1970"

    def test_universe_is_exact_at_cap(self):
        cfg = GenerationConfig(
            CivilDate(1970, 6, 1), CivilDate(1970, 7, 31), pad_variants=False
        )
        clusters = cluster_by_shape(generate_examples(cfg))
        for cluster in clusters.values():
            got = synthesize_cluster(cluster)
            assert count_strings(got.fragment, 40) == got.universe


class TestMonotonicity:
    def test_universe_never_shrinks_as_values_accumulate(self):
        params = CostParams()
        chains = [
            (DIGITS, ["03", "07", "12", "1", "28", "31"]),
            (ALPHA, ["Jun", "June", "Jul", "July", "January"]),
            (PUNCT, ["/", "-", "."]),
        ]
        for kind, chain in chains:
            seen: set[str] = set()
            last = 0
            for value in chain:
                seen.add(value)
                ranked = segment_candidates(frozenset(seen), kind, params)
                universe = count_strings(ranked[0][2], params.max_len)
                assert universe >= last
                last = universe


_FULL_YEAR = GenerationConfig(
    CivilDate(1970, 1, 1), CivilDate(1970, 12, 31), pad_variants=False
)


@pytest.fixture(scope="module")
def year_bank():
    return synthesize_bank(
        (e.text, e.family) for e in generate_examples(_FULL_YEAR)
    )


class TestSynthesizeBank:
    def test_entry_order_and_priorities(self, year_bank):
        assert year_bank.provenance == "synthesized"
        assert [e.priority for e in year_bank.entries] == [0, 1, 2, 3]
        universes = [
            count_strings(e.fragment, 24) for e in year_bank.entries
        ]
        assert universes == sorted(universes)

    def test_all_twelve_months_generalize_to_alpha_class(self, year_bank):
        by_label = {e.label: e for e in year_bank.entries}
        assert by_label["monthname-dayless"].pattern == (
            "[A-Za-z]{3,9}[ \\-./](1970|70)"
        )
        assert "[A-Za-z]{3,9}" in by_label["longform-ordinal"].pattern
        assert "(nd|rd|st|th)" in by_label["longform-ordinal"].pattern

    def test_rules_come_from_family(self, year_bank):
        for entry in year_bank.entries:
            family = family_named(entry.label)
            assert entry.rules == family.rules

    def test_soundness_every_example_fullmatches_and_decomposes(self, year_bank):
        compiled = {
            e.label: re.compile(e.pattern) for e in year_bank.entries
        }
        checked = 0
        for example in generate_examples(_FULL_YEAR):
            text = preprocess_text(example.text)
            rx = compiled[example.family]
            assert rx.fullmatch(text), example.text
            entry = next(
                e for e in year_bank.entries if e.label == example.family
            )
            parts = run_extraction_map(text, entry.rules)
            assert parts == example.parts, example.text
            checked += 1
        assert checked > 1000

    def test_scan_round_trip_with_boundary_guards(self, year_bank):
        cfg = GenerationConfig(
            CivilDate(1970, 6, 1), CivilDate(1970, 6, 30), pad_variants=False
        )
        for example in generate_examples(cfg):
            text = preprocess_text(example.text)
            found = scan(text, year_bank)
            assert len(found) == 1, example.text
            assert found[0].span == (0, len(text))
            assert found[0].parts == example.parts

    def test_deterministic(self, year_bank):
        again = synthesize_bank(
            (e.text, e.family) for e in generate_examples(_FULL_YEAR)
        )
        assert [e.pattern for e in again.entries] == [
            e.pattern for e in year_bank.entries
        ]
        assert [e.label for e in again.entries] == [
            e.label for e in year_bank.entries
        ]

    def test_empty_examples_rejected(self):
        with pytest.raises(ValueError):
            synthesize_bank([])

    def test_distractors_find_nothing(self, year_bank):
        for text in (
            "99/99/9999",
            "31/02/2001",
            "123/456/78910",
            "01234/567890",
            "12/3456",
            "21nd May, 2001",
        ):
            assert not scan(preprocess_text(text), year_bank)
