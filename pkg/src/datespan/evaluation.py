"""Scoring detections against annotated ground truth.

Detections and annotations pair up greedily, one to one, within each
page. "timestamp" mode demands the exact same half-open range on both
sides; "span" mode accepts any character overlap. Unpaired detections
count as false positives, unpaired annotations as false negatives.
"""

import csv
import io
from dataclasses import dataclass

__all__ = [
    "MATCH_MODES",
    "ConfusionMatrix",
    "spans_overlap",
    "match_detections",
    "report",
]

MATCH_MODES = ("timestamp", "span")


@dataclass(frozen=True, slots=True)
class ConfusionMatrix:
    true_positives: int = 0
    false_positives: int = 0
    false_negatives: int = 0

    def precision(self) -> float | None:
        denominator = self.true_positives + self.false_positives
        if denominator == 0:
            return None
        return self.true_positives / denominator

    def recall(self) -> float | None:
        denominator = self.true_positives + self.false_negatives
        if denominator == 0:
            return None
        return self.true_positives / denominator


def spans_overlap(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """True when the half-open character spans share any position."""
    return a[0] < b[1] and b[0] < a[1]


def _pairs_up(detection, annotation, mode: str) -> bool:
    if mode == "timestamp":
        return (
            detection.range is not None
            and annotation.range is not None
            and detection.range == annotation.range
        )
    if detection.span is None or annotation.span is None:
        return False
    return spans_overlap(detection.span, annotation.span)


def match_detections(detections, annotations, mode: str) -> ConfusionMatrix:
    """Greedy one-to-one pairing per page, in emission order."""
    if mode not in MATCH_MODES:
        raise ValueError(f"unknown match mode {mode!r}")
    open_by_page: dict[str, list] = {}
    for annotation in annotations:
        open_by_page.setdefault(annotation.page_id, []).append(annotation)
    true_positives = 0
    false_positives = 0
    for detection in detections:
        candidates = open_by_page.get(detection.page_id, [])
        for i, annotation in enumerate(candidates):
            if _pairs_up(detection, annotation, mode):
                del candidates[i]
                true_positives += 1
                break
        else:
            false_positives += 1
    false_negatives = sum(len(rest) for rest in open_by_page.values())
    return ConfusionMatrix(
        true_positives=true_positives,
        false_positives=false_positives,
        false_negatives=false_negatives,
    )


def _ratio(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.4f}"


def report(rows) -> tuple[str, str]:
    """Render (text table, CSV) for (name, ConfusionMatrix) rows."""
    header = ("bank", "tp", "fp", "fn", "precision", "recall")
    table = [header]
    for name, matrix in rows:
        table.append(
            (
                name,
                str(matrix.true_positives),
                str(matrix.false_positives),
                str(matrix.false_negatives),
                _ratio(matrix.precision()),
                _ratio(matrix.recall()),
            )
        )
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    lines = []
    for row in table:
        cells = [row[0].ljust(widths[0])]
        cells.extend(row[i].rjust(widths[i]) for i in range(1, len(header)))
        lines.append("  ".join(cells).rstrip())
    text = "\n".join(lines) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for row in table:
        writer.writerow(row)
    return text, buffer.getvalue()
