"""Line-delimited file formats for every artifact the toolkit produces.

Each file is UTF-8 JSON-lines: one header object announcing the format
name and schema version, then one object per record. Keys are written
in a fixed order with compact separators, so equal inputs produce
byte-identical files — artifacts are diff-able and stream-able, and a
reader in any language needs only a JSON parser.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .banks import RegexBank, RegexEntry
from .civil import DateParts, TimestampRange
from .extraction import Detection
from .families import PartRule

__all__ = [
    "FORMAT_VERSION",
    "AnnotationRecord",
    "CorpusRecord",
    "PageRecord",
    "write_corpus",
    "read_corpus",
    "write_bank",
    "read_bank",
    "write_detections",
    "read_detections",
    "write_annotations",
    "iter_annotation_lines",
    "parse_annotation_record",
    "write_pages",
    "read_pages",
]

FORMAT_VERSION = 1


def _dumps(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def _write_lines(path, header: dict, lines: Iterator[str]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_dumps(header) + "\n")
        for line in lines:
            fh.write(line + "\n")
            count += 1
    return count


def _read_header(fh, path, expected: str) -> dict:
    first = fh.readline()
    if not first.strip():
        raise ValueError(f"{path}: missing header line")
    try:
        header = json.loads(first)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: unreadable header: {exc}") from None
    if not isinstance(header, dict) or header.get("format") != expected:
        raise ValueError(
            f"{path}: expected a {expected!r} file, "
            f"got {header.get('format') if isinstance(header, dict) else first!r}"
        )
    if header.get("version") != FORMAT_VERSION:
        raise ValueError(
            f"{path}: unsupported version {header.get('version')!r}"
        )
    return header


def _iter_body(path, expected: str) -> Iterator[tuple[int, str]]:
    """Yield (line number, raw line) for every record line."""
    with open(path, "r", encoding="utf-8") as fh:
        _read_header(fh, path, expected)
        for line_no, line in enumerate(fh, start=2):
            if line.strip():
                yield line_no, line


def _part_value(value):
    if value is None or isinstance(value, int):
        return value
    return list(value)


def _parts_obj(parts: DateParts | None):
    if parts is None:
        return None
    return {
        "day": _part_value(parts.day),
        "suffix": parts.ordinal_suffix,
        "month": _part_value(parts.month),
        "year": _part_value(parts.year),
    }


def _pair_or_int(value, field: str):
    if value is None or isinstance(value, int):
        return value
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, int) for v in value)
    ):
        return (value[0], value[1])
    raise ValueError(f"{field} must be an integer or a two-integer pair")


def _parts_from_obj(obj) -> DateParts | None:
    if obj is None:
        return None
    if not isinstance(obj, dict):
        raise ValueError("parts must be an object")
    return DateParts(
        month=_pair_or_int(obj.get("month"), "month"),
        year=_pair_or_int(obj.get("year"), "year"),
        day=_pair_or_int(obj.get("day"), "day"),
        ordinal_suffix=obj.get("suffix"),
    )


def _span_obj(span):
    return None if span is None else [span[0], span[1]]


def _span_from_obj(value, field: str = "span"):
    if value is None:
        return None
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, int) for v in value)
    ):
        return (value[0], value[1])
    raise ValueError(f"{field} must be a two-integer pair")


# ---------------------------------------------------------------- corpus


@dataclass(frozen=True, slots=True)
class CorpusRecord:
    """One training example as stored on disk."""

    text: str
    family: str
    parts: DateParts
    range: TimestampRange


def write_corpus(path, examples) -> int:
    """Write rendered examples; returns how many were written."""

    def lines():
        for example in examples:
            yield _dumps(
                {
                    "text": example.text,
                    "family": example.family,
                    "parts": _parts_obj(example.parts),
                    "start": example.span.start,
                    "end": example.span.end,
                }
            )

    header = {"format": "corpus", "version": FORMAT_VERSION}
    return _write_lines(path, header, lines())


def read_corpus(path) -> Iterator[CorpusRecord]:
    """Stream corpus records; raises ValueError on a malformed line."""
    for line_no, line in _iter_body(path, "corpus"):
        try:
            obj = json.loads(line)
            yield CorpusRecord(
                text=obj["text"],
                family=obj["family"],
                parts=_parts_from_obj(obj["parts"]),
                range=TimestampRange(obj["start"], obj["end"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"{path}:{line_no}: bad corpus record: {exc}") from None


# ------------------------------------------------------------------ bank


def _rule_obj(rule: PartRule) -> dict:
    return {
        "part": rule.part,
        "ops": [list(op) for op in rule.ops],
        "optional": rule.optional,
    }


def _rule_from_obj(obj) -> PartRule:
    ops = tuple(tuple(op) for op in obj["ops"])
    return PartRule(part=obj["part"], ops=ops, optional=bool(obj["optional"]))


def write_bank(path, bank: RegexBank) -> int:
    def lines():
        for entry in bank.entries:
            yield _dumps(
                {
                    "priority": entry.priority,
                    "label": entry.label,
                    "pattern": entry.pattern,
                    "rules": [_rule_obj(rule) for rule in entry.rules],
                }
            )

    header = {
        "format": "bank",
        "version": FORMAT_VERSION,
        "provenance": bank.provenance,
    }
    return _write_lines(path, header, lines())


def read_bank(path) -> RegexBank:
    with open(path, "r", encoding="utf-8") as fh:
        header = _read_header(fh, path, "bank")
        provenance = header.get("provenance")
        if not isinstance(provenance, str):
            raise ValueError(f"{path}: bank header needs a provenance string")
        entries = []
        for line_no, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                entries.append(
                    RegexEntry(
                        priority=obj["priority"],
                        pattern=obj["pattern"],
                        label=obj["label"],
                        rules=tuple(
                            _rule_from_obj(rule) for rule in obj["rules"]
                        ),
                    )
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(
                    f"{path}:{line_no}: bad bank entry: {exc}"
                ) from None
    return RegexBank(provenance=provenance, entries=tuple(entries))


# ------------------------------------------------------------ detections


def write_detections(path, detections, provenance: str) -> int:
    def lines():
        for d in detections:
            yield _dumps(
                {
                    "page_id": d.page_id,
                    "span": _span_obj(d.span),
                    "text": d.matched_text,
                    "entry": d.bank_entry,
                    "label": d.label,
                    "parts": _parts_obj(d.parts),
                    "start": None if d.range is None else d.range.start,
                    "end": None if d.range is None else d.range.end,
                    "lines": _span_obj(d.lines),
                }
            )

    header = {
        "format": "detections",
        "version": FORMAT_VERSION,
        "bank": provenance,
    }
    return _write_lines(path, header, lines())


def read_detections(path) -> tuple[str, tuple[Detection, ...]]:
    with open(path, "r", encoding="utf-8") as fh:
        header = _read_header(fh, path, "detections")
        provenance = header.get("bank")
        if not isinstance(provenance, str):
            raise ValueError(f"{path}: detections header needs a bank name")
        out = []
        for line_no, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                start, end = obj["start"], obj["end"]
                rng = None if start is None else TimestampRange(start, end)
                out.append(
                    Detection(
                        page_id=obj["page_id"],
                        span=tuple(obj["span"]),
                        matched_text=obj["text"],
                        bank_entry=obj["entry"],
                        label=obj["label"],
                        parts=_parts_from_obj(obj["parts"]),
                        range=rng,
                        lines=_span_from_obj(obj["lines"], "lines"),
                    )
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(
                    f"{path}:{line_no}: bad detection: {exc}"
                ) from None
    return provenance, tuple(out)


# ----------------------------------------------------------- annotations


@dataclass(frozen=True, slots=True)
class AnnotationRecord:
    """One ground-truth record as stored on disk.

    Dates are stored twice over: as civil parts and as the timestamp
    pair, so a loader can cross-check one against the other. Parts may
    be absent; semantic screening happens at load time, not here.
    """

    page_id: str
    span: tuple[int, int] | None
    day: int | tuple[int, int] | None
    suffix: str | None
    month: int | tuple[int, int] | None
    year: int | tuple[int, int] | None
    start: int
    end: int


def write_annotations(path, records: Iterable[AnnotationRecord]) -> int:
    def lines():
        for r in records:
            yield _dumps(
                {
                    "page_id": r.page_id,
                    "span": _span_obj(r.span),
                    "day": _part_value(r.day),
                    "suffix": r.suffix,
                    "month": _part_value(r.month),
                    "year": _part_value(r.year),
                    "start": r.start,
                    "end": r.end,
                }
            )

    header = {"format": "annotations", "version": FORMAT_VERSION}
    return _write_lines(path, header, lines())


def iter_annotation_lines(path) -> Iterator[tuple[int, str]]:
    """(line number, raw line) per record, after header validation."""
    return _iter_body(path, "annotations")


def parse_annotation_record(line: str) -> AnnotationRecord:
    """Decode one annotation line; ValueError when it is malformed."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ValueError("record must be an object")
    page_id = obj.get("page_id")
    if not isinstance(page_id, str):
        raise ValueError("page_id must be a string")
    start, end = obj.get("start"), obj.get("end")
    if not isinstance(start, int) or not isinstance(end, int):
        raise ValueError("start and end must be integers")
    suffix = obj.get("suffix")
    if suffix is not None and not isinstance(suffix, str):
        raise ValueError("suffix must be a string")
    return AnnotationRecord(
        page_id=page_id,
        span=_span_from_obj(obj.get("span")),
        day=_pair_or_int(obj.get("day"), "day"),
        suffix=suffix,
        month=_pair_or_int(obj.get("month"), "month"),
        year=_pair_or_int(obj.get("year"), "year"),
        start=start,
        end=end,
    )


# ----------------------------------------------------------------- pages


@dataclass(frozen=True, slots=True)
class PageRecord:
    page_id: str
    text: str


def write_pages(path, pages) -> int:
    def lines():
        for page in pages:
            yield _dumps({"page_id": page.page_id, "text": page.text})

    header = {"format": "pages", "version": FORMAT_VERSION}
    return _write_lines(path, header, lines())


def read_pages(path) -> Iterator[PageRecord]:
    for line_no, line in _iter_body(path, "pages"):
        try:
            obj = json.loads(line)
            yield PageRecord(page_id=obj["page_id"], text=obj["text"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"{path}:{line_no}: bad page record: {exc}") from None
