"""Preprocessing, scanning, and multiline assembly behavior."""

import pytest

from datespan.banks import builtin_bespoke_bank, builtin_community_bank
from datespan.civil import (
    SECONDS_PER_DAY,
    CivilDate,
    DateParts,
    civil_to_epoch_midnight,
)
from datespan.extraction import (
    assemble_multiline,
    preprocess_text,
    scan,
    scan_multiline,
)


def midnight(year, month, day):
    return civil_to_epoch_midnight(CivilDate(year, month, day))


class TestPreprocess:
    def test_range_phrase(self):
        assert (
            preprocess_text("3rd of June to the 2nd of July")
            == "3rd June - 2nd July"
        )

    def test_idempotent(self):
        once = preprocess_text("3rd of June to the 2nd of July")
        assert preprocess_text(once) == once

    def test_case_insensitive(self):
        assert preprocess_text("3rd OF June TO THE 4th") == "3rd June - 4th"

    def test_word_boundaries_respected(self):
        assert preprocess_text("offered often") == "offered often"
        assert preprocess_text("tooth the comb") == "tooth the comb"

    def test_newlines_survive(self):
        assert preprocess_text("June 1970\nJuly 1971") == "June 1970\nJuly 1971"

    def test_space_runs_collapse(self):
        assert preprocess_text("a    b") == "a b"


@pytest.fixture(scope="module")
def bespoke():
    return builtin_bespoke_bank()


@pytest.fixture(scope="module")
def community():
    return builtin_community_bank()


class TestScanBespoke:
    @pytest.fixture
    def bank(self, bespoke):
        return bespoke

    def test_numeric(self, bank):
        dets = scan("filed 01/02/2001 here", bank, page_id="p1")
        assert len(dets) == 1
        det = dets[0]
        assert det.page_id == "p1"
        assert det.span == (6, 16)
        assert det.matched_text == "01/02/2001"
        assert det.parts == DateParts(month=2, year=2001, day=1)
        assert det.range.start == midnight(2001, 2, 1)
        assert det.range.end == midnight(2001, 2, 2)

    def test_longform(self, bank):
        dets = scan("the ledger shows 3rd June, 1970 plainly", bank)
        assert len(dets) == 1
        assert dets[0].parts == DateParts(
            month=6, year=1970, day=3, ordinal_suffix="rd"
        )

    def test_day_range(self, bank):
        dets = scan("3 - 5.6.1970", bank)
        assert len(dets) == 1
        det = dets[0]
        assert det.span == (0, 12)
        assert det.parts.day == (3, 5)
        assert det.range.start == midnight(1970, 6, 3)
        assert det.range.end == midnight(1970, 6, 6)

    def test_dayless_month(self, bank):
        dets = scan("June 1970", bank)
        assert len(dets) == 1
        assert dets[0].parts == DateParts(month=6, year=1970)
        assert dets[0].range.start == midnight(1970, 6, 1)
        assert dets[0].range.end == midnight(1970, 7, 1)

    def test_month_pair(self, bank):
        dets = scan("June-July 1970", bank)
        assert len(dets) == 1
        assert dets[0].parts == DateParts(month=(6, 7), year=1970)
        assert dets[0].range.end == midnight(1970, 8, 1)

    def test_comma_less_longform_wins_over_dayless(self, bank):
        dets = scan("3rd June 1970", bank)
        assert len(dets) == 1
        assert dets[0].label == "longform"
        assert dets[0].span == (0, 13)

    def test_rejected_match_does_not_leak_shifted_day(self, bank):
        # "1/02/2001" must never surface from inside "31/02/2001"; the
        # resume-one-char guard blocks any start flush with a digit.
        dets = scan("31/02/2001 and 01/02/2001", bank)
        texts = [d.matched_text for d in dets]
        assert "1/02/2001" not in texts
        assert texts.count("01/02/2001") == 1

    @pytest.mark.parametrize(
        "text",
        [
            "99/99/9999",
            "123/456/78910",
            "01234/567890",
            "21nd May, 2001",
        ],
    )
    def test_distractors_rejected(self, bank, text):
        assert scan(text, bank) == ()

    def test_known_lookalike_slips_through(self, bank):
        # Loose year bounds admit this one by design.
        dets = scan("12/3456", bank)
        assert len(dets) == 1
        assert dets[0].parts == DateParts(month=12, year=3456)

    def test_interior_month_year_slips_through(self, bank):
        # After "31/02/2001" is rejected, "02/2001" (preceded by a
        # slash, so the guard allows it) reads as February 2001. Loose
        # bounds accept it; tighter banks reject the year instead.
        dets = scan("31/02/2001", bank)
        assert [d.matched_text for d in dets] == ["02/2001"]
        assert dets[0].parts == DateParts(month=2, year=2001)

    def test_two_dates_one_line(self, bank):
        dets = scan("from 01/02/2001 until 03/04/2005", bank)
        assert [d.matched_text for d in dets] == ["01/02/2001", "03/04/2005"]

    def test_leftmost_beats_priority(self, bank):
        dets = scan("June 1970 then 01/02/2001", bank)
        assert [d.label for d in dets] == ["monthname-dayless", "numeric"]


class TestScanCommunity:
    @pytest.fixture
    def bank(self, community):
        return community

    def test_locate_only(self, bank):
        dets = scan("sent 01/02/2001 today", bank)
        assert len(dets) == 1
        det = dets[0]
        assert det.span == (5, 15)
        assert det.parts is None
        assert det.range is None
        assert det.bank_entry == 1

    def test_dayless_not_covered(self, bank):
        assert scan("June 1970", bank) == ()

    def test_false_positives_on_lookalikes(self, bank):
        assert len(scan("99/99/9999", bank)) == 1
        assert len(scan("31/02/2001", bank)) == 1

    def test_full_month_name_form(self, bank):
        dets = scan("3 June 1970", bank)
        assert len(dets) == 1
        assert dets[0].bank_entry == 0


class TestAssembleMultiline:
    def test_triplet(self):
        assert assemble_multiline(["3rd", "June", "1970"]) == (
            ("3/June/1970", (0, 2)),
        )

    def test_named_pair(self):
        assert assemble_multiline(["June", "1970"]) == (("June/1970", (0, 1)),)

    def test_numeric_pair_needs_full_year(self):
        assert assemble_multiline(["6", "1970"]) == (("6/1970", (0, 1)),)
        assert assemble_multiline(["6", "70"]) == ()

    def test_numeric_triplet_allows_short_year(self):
        assert assemble_multiline(["3", "6", "70"]) == (("3/6/70", (0, 2)),)

    def test_interior_run(self):
        got = assemble_multiline(["ledger", "3", "6", "1970", "words"])
        assert got == (("3/6/1970", (1, 3)),)

    def test_greedy_consumption(self):
        got = assemble_multiline(["3", "6", "1970", "June", "1971"])
        assert got == (("3/6/1970", (0, 2)), ("June/1971", (3, 4)))

    def test_lone_year_ignored(self):
        assert assemble_multiline(["1970"]) == ()

    def test_multiword_lines_break_runs(self):
        assert assemble_multiline(["3 jars", "June", "1970"]) == (
            ("June/1970", (1, 2)),
        )


class TestScanMultiline:
    def test_detection_carries_line_span(self):
        bank = builtin_bespoke_bank()
        dets = scan_multiline(["3rd", "June", "1970"], bank, page_id="p9")
        assert len(dets) == 1
        det = dets[0]
        assert det.lines == (0, 2)
        assert det.parts == DateParts(month=6, year=1970, day=3)
        assert det.page_id == "p9"

    def test_no_candidates_no_detections(self):
        bank = builtin_bespoke_bank()
        assert scan_multiline(["nothing", "here"], bank) == ()
