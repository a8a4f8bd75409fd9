"""Tests for detection scoring."""

import csv
import io

import pytest

from datespan.civil import TimestampRange
from datespan.corpus import Annotation
from datespan.evaluation import (
    ConfusionMatrix,
    match_detections,
    report,
    spans_overlap,
)
from datespan.extraction import Detection


def _detection(page_id="p", span=(0, 10), range_=None):
    return Detection(
        page_id=page_id,
        span=span,
        matched_text="x" * (span[1] - span[0]),
        bank_entry=0,
        label="numeric-short",
        parts=None,
        range=range_,
    )


def _range(day_start: int, days: int = 1) -> TimestampRange:
    return TimestampRange(day_start * 86400, (day_start + days) * 86400)


class TestSpansOverlap:
    def test_overlapping(self):
        assert spans_overlap((0, 5), (4, 9))
        assert spans_overlap((4, 9), (0, 5))
        assert spans_overlap((2, 3), (0, 10))

    def test_touching_half_open_edges_do_not_overlap(self):
        assert not spans_overlap((0, 5), (5, 9))
        assert not spans_overlap((5, 9), (0, 5))

    def test_disjoint(self):
        assert not spans_overlap((0, 2), (7, 9))


class TestConfusionMatrix:
    def test_precision_recall(self):
        m = ConfusionMatrix(true_positives=8, false_positives=2, false_negatives=8)
        assert m.precision() == pytest.approx(0.8)
        assert m.recall() == pytest.approx(0.5)

    def test_zero_denominators_are_none(self):
        assert ConfusionMatrix().precision() is None
        assert ConfusionMatrix().recall() is None
        only_fn = ConfusionMatrix(false_negatives=3)
        assert only_fn.precision() is None
        assert only_fn.recall() == 0.0


class TestTimestampMode:
    def test_exact_range_pairs(self):
        detections = [_detection(range_=_range(100))]
        annotations = [Annotation(page_id="p", span=(0, 10), range=_range(100))]
        m = match_detections(detections, annotations, "timestamp")
        assert m == ConfusionMatrix(1, 0, 0)

    def test_end_must_match_too(self):
        detections = [_detection(range_=_range(100, days=2))]
        annotations = [Annotation(page_id="p", span=(0, 10), range=_range(100))]
        m = match_detections(detections, annotations, "timestamp")
        assert m == ConfusionMatrix(0, 1, 1)

    def test_rangeless_detection_is_false_positive(self):
        detections = [_detection(range_=None)]
        annotations = [Annotation(page_id="p", span=(0, 10), range=_range(100))]
        m = match_detections(detections, annotations, "timestamp")
        assert m == ConfusionMatrix(0, 1, 1)

    def test_rangeless_annotation_is_false_negative(self):
        detections = [_detection(range_=_range(100))]
        annotations = [Annotation(page_id="p", span=(0, 10))]
        m = match_detections(detections, annotations, "timestamp")
        assert m == ConfusionMatrix(0, 1, 1)


class TestSpanMode:
    def test_overlap_pairs(self):
        detections = [_detection(span=(3, 8))]
        annotations = [Annotation(page_id="p", span=(5, 12))]
        m = match_detections(detections, annotations, "span")
        assert m == ConfusionMatrix(1, 0, 0)

    def test_disjoint_spans_do_not_pair(self):
        detections = [_detection(span=(0, 4))]
        annotations = [Annotation(page_id="p", span=(4, 9))]
        m = match_detections(detections, annotations, "span")
        assert m == ConfusionMatrix(0, 1, 1)

    def test_spanless_annotation_is_false_negative(self):
        detections = [_detection(span=(0, 4))]
        annotations = [Annotation(page_id="p", range=_range(3))]
        m = match_detections(detections, annotations, "span")
        assert m == ConfusionMatrix(0, 1, 1)


class TestGreedyOneToOne:
    def test_second_detection_of_same_fact_is_false_positive(self):
        detections = [
            _detection(span=(0, 10), range_=_range(7)),
            _detection(span=(0, 10), range_=_range(7)),
        ]
        annotations = [Annotation(page_id="p", span=(0, 10), range=_range(7))]
        m = match_detections(detections, annotations, "timestamp")
        assert m == ConfusionMatrix(1, 1, 0)

    def test_two_annotations_two_detections(self):
        detections = [
            _detection(span=(0, 10), range_=_range(7)),
            _detection(span=(20, 30), range_=_range(9)),
        ]
        annotations = [
            Annotation(page_id="p", span=(0, 10), range=_range(7)),
            Annotation(page_id="p", span=(20, 30), range=_range(9)),
        ]
        m = match_detections(detections, annotations, "timestamp")
        assert m == ConfusionMatrix(2, 0, 0)

    def test_pages_are_isolated(self):
        detections = [_detection(page_id="a", range_=_range(7))]
        annotations = [Annotation(page_id="b", span=(0, 10), range=_range(7))]
        m = match_detections(detections, annotations, "timestamp")
        assert m == ConfusionMatrix(0, 1, 1)

    def test_duplicate_ranges_pair_one_each(self):
        detections = [
            _detection(span=(0, 10), range_=_range(7)),
            _detection(span=(20, 30), range_=_range(7)),
        ]
        annotations = [
            Annotation(page_id="p", span=(0, 10), range=_range(7)),
            Annotation(page_id="p", span=(20, 30), range=_range(7)),
        ]
        m = match_detections(detections, annotations, "timestamp")
        assert m == ConfusionMatrix(2, 0, 0)

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            match_detections([], [], "fuzzy")

    def test_empty_inputs(self):
        assert match_detections([], [], "timestamp") == ConfusionMatrix()


class TestReport:
    def test_text_and_csv(self):
        rows = [
            ("synthesized", ConfusionMatrix(8, 2, 8)),
            ("community", ConfusionMatrix(0, 0, 3)),
        ]
        text, csv_text = report(rows)
        lines = text.splitlines()
        assert lines[0].split() == ["bank", "tp", "fp", "fn", "precision", "recall"]
        assert "0.8000" in lines[1]
        assert "0.5000" in lines[1]
        assert "n/a" in lines[2]
        assert "0.0000" in lines[2]
        assert text.endswith("\n")

        parsed = list(csv.reader(io.StringIO(csv_text)))
        assert parsed[0] == ["bank", "tp", "fp", "fn", "precision", "recall"]
        assert parsed[1] == ["synthesized", "8", "2", "8", "0.8000", "0.5000"]
        assert parsed[2] == ["community", "0", "0", "3", "n/a", "0.0000"]

    def test_deterministic(self):
        rows = [("only", ConfusionMatrix(1, 0, 0))]
        assert report(rows) == report(rows)

    def test_empty_rows(self):
        text, csv_text = report([])
        assert text == "bank  tp  fp  fn  precision  recall\n"
        assert csv_text == "bank,tp,fp,fn,precision,recall\n"
