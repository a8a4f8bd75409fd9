"""Training corpus generation.

Every calendar day in a window is rendered in each surface shape the
toolkit must recognize, paired with its exact half-open timestamp
interval. Generation is unconditionally deterministic: fixed loop
nesting, no randomness. Month names appear under every unambiguous
prefix of three or more letters, mirroring how they are read back.
"""

import random
from dataclasses import dataclass
from typing import Iterator

from .civil import (
    MONTH_NAMES,
    SECONDS_PER_DAY,
    CivilDate,
    DateParts,
    TimestampRange,
    civil_to_epoch_midnight,
    days_in_month,
    epoch_to_civil,
    ordinal_for,
    range_of,
    resolve_two_digit_year,
)
from .extraction import preprocess_text

__all__ = [
    "GenerationConfig",
    "RenderedExample",
    "Corpus",
    "Annotation",
    "NoisePage",
    "DISTRACTORS",
    "month_name_forms",
    "render_numeric_variants",
    "render_numeric_dayless_variants",
    "render_monthname_variants",
    "render_longform_variants",
    "render_day_range_variants",
    "generate_examples",
    "build_training_corpus",
    "subsample_examples",
    "inject_noise",
]


@dataclass(frozen=True, slots=True)
class GenerationConfig:
    """Window and surface options for corpus generation.

    `pad_variants` renders one-digit days and months both with and
    without a leading zero; off, only the zero-padded form appears.
    Two-digit years are only rendered when they decode back to the
    source year under the pivot rule.
    """

    start: CivilDate
    end: CivilDate
    short_separators: str = "-./"
    long_separators: str = " -./"
    day_range_separators: str = "./"
    hyphen_spacings: tuple[str, ...] = ("", " ")
    year_digits: tuple[int, ...] = (4, 2)
    pad_variants: bool = True

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError("window start is after its end")
        for width in self.year_digits:
            if width not in (2, 4):
                raise ValueError(f"unsupported year width {width}")


@dataclass(frozen=True, slots=True)
class RenderedExample:
    """One surface string with its ground-truth decomposition."""

    text: str
    family: str
    parts: DateParts
    span: TimestampRange
    part_spans: tuple[tuple[str, int, int], ...] = ()

    def part_span(self, part: str) -> tuple[int, int] | None:
        for name, start, end in self.part_spans:
            if name == part:
                return (start, end)
        return None


@dataclass(frozen=True)
class Corpus:
    config: GenerationConfig
    examples: tuple[RenderedExample, ...]


def month_name_forms(month: int) -> tuple[str, ...]:
    """All prefixes of the month's name that still name it (>= 3
    letters), shortest first, ending with the full name."""
    name = MONTH_NAMES[month - 1]
    return tuple(name[:k] for k in range(3, len(name) + 1))


def _year_forms(year: int, cfg: GenerationConfig) -> list[str]:
    forms = []
    for width in cfg.year_digits:
        if width == 4:
            forms.append(f"{year:04d}")
        elif resolve_two_digit_year(year % 100) == year:
            forms.append(f"{year % 100:02d}")
    return forms


def _field_forms(value: int, cfg: GenerationConfig) -> tuple[str, ...]:
    if value < 10:
        padded = f"{value:02d}"
        if cfg.pad_variants:
            return (padded, str(value))
        return (padded,)
    return (str(value),)


def render_numeric_variants(
    date: CivilDate, cfg: GenerationConfig
) -> list[RenderedExample]:
    ts = civil_to_epoch_midnight(date)
    span = TimestampRange(ts, ts + SECONDS_PER_DAY)
    parts = DateParts(month=date.month, year=date.year, day=date.day)
    out = []
    for sep in cfg.short_separators:
        for year_text in _year_forms(date.year, cfg):
            for day_text in _field_forms(date.day, cfg):
                for month_text in _field_forms(date.month, cfg):
                    month_at = len(day_text) + 1
                    year_at = month_at + len(month_text) + 1
                    out.append(
                        RenderedExample(
                            text=f"{day_text}{sep}{month_text}{sep}{year_text}",
                            family="numeric-short",
                            parts=parts,
                            span=span,
                            part_spans=(
                                ("day", 0, len(day_text)),
                                ("month", month_at, month_at + len(month_text)),
                                ("year", year_at, year_at + len(year_text)),
                            ),
                        )
                    )
    return out


def render_numeric_dayless_variants(
    date: CivilDate, cfg: GenerationConfig
) -> list[RenderedExample]:
    parts = DateParts(month=date.month, year=date.year)
    span = range_of(parts)
    out = []
    for sep in cfg.short_separators:
        for year_text in _year_forms(date.year, cfg):
            for month_text in _field_forms(date.month, cfg):
                year_at = len(month_text) + 1
                out.append(
                    RenderedExample(
                        text=f"{month_text}{sep}{year_text}",
                        family="numeric-short",
                        parts=parts,
                        span=span,
                        part_spans=(
                            ("month", 0, len(month_text)),
                            ("year", year_at, year_at + len(year_text)),
                        ),
                    )
                )
    return out


def render_monthname_variants(
    date: CivilDate, dayless: bool, cfg: GenerationConfig
) -> list[RenderedExample]:
    names = month_name_forms(date.month)
    out = []
    if dayless:
        parts = DateParts(month=date.month, year=date.year)
        span = range_of(parts)
        for name in names:
            for sep in cfg.long_separators:
                for year_text in _year_forms(date.year, cfg):
                    year_at = len(name) + 1
                    out.append(
                        RenderedExample(
                            text=f"{name}{sep}{year_text}",
                            family="monthname-dayless",
                            parts=parts,
                            span=span,
                            part_spans=(
                                ("month", 0, len(name)),
                                ("year", year_at, year_at + len(year_text)),
                            ),
                        )
                    )
        return out
    ts = civil_to_epoch_midnight(date)
    span = TimestampRange(ts, ts + SECONDS_PER_DAY)
    parts = DateParts(month=date.month, year=date.year, day=date.day)
    for name in names:
        for sep in cfg.long_separators:
            for year_text in _year_forms(date.year, cfg):
                for day_text in _field_forms(date.day, cfg):
                    month_at = len(day_text) + 1
                    year_at = month_at + len(name) + 1
                    out.append(
                        RenderedExample(
                            text=f"{day_text}{sep}{name}{sep}{year_text}",
                            family="monthname-day",
                            parts=parts,
                            span=span,
                            part_spans=(
                                ("day", 0, len(day_text)),
                                ("month", month_at, month_at + len(name)),
                                ("year", year_at, year_at + len(year_text)),
                            ),
                        )
                    )
    return out


def render_longform_variants(
    date: CivilDate, cfg: GenerationConfig | None = None
) -> list[RenderedExample]:
    """Ordinal day, "of", month name, optional comma: "3rd of June, 1970"."""
    if cfg is None:
        cfg = GenerationConfig(start=date, end=date)
    suffix = ordinal_for(date.day)
    day_text = str(date.day)
    ts = civil_to_epoch_midnight(date)
    span = TimestampRange(ts, ts + SECONDS_PER_DAY)
    parts = DateParts(
        month=date.month, year=date.year, day=date.day, ordinal_suffix=suffix
    )
    out = []
    for name in month_name_forms(date.month):
        for comma in (",", ""):
            for year_text in _year_forms(date.year, cfg):
                month_at = len(day_text) + len(suffix) + 4
                year_at = month_at + len(name) + len(comma) + 1
                out.append(
                    RenderedExample(
                        text=(
                            f"{day_text}{suffix} of {name}{comma} {year_text}"
                        ),
                        family="longform-ordinal",
                        parts=parts,
                        span=span,
                        part_spans=(
                            ("day", 0, len(day_text)),
                            ("month", month_at, month_at + len(name)),
                            ("year", year_at, year_at + len(year_text)),
                        ),
                    )
                )
    return out


def render_day_range_variants(
    month: int, year: int, cfg: GenerationConfig
) -> list[RenderedExample]:
    """Every within-month day pair: "3 - 5.6.1970" and its variants."""
    dim = days_in_month(month, year)
    month_start = civil_to_epoch_midnight(CivilDate(year, month, 1))
    year_texts = _year_forms(year, cfg)
    month_texts = _field_forms(month, cfg)
    out = []
    for a in range(1, dim):
        a_start = month_start + (a - 1) * SECONDS_PER_DAY
        for b in range(a + 1, dim + 1):
            parts = DateParts(month=month, year=year, day=(a, b))
            span = TimestampRange(a_start, month_start + b * SECONDS_PER_DAY)
            for spacing in cfg.hyphen_spacings:
                for sep in cfg.day_range_separators:
                    for year_text in year_texts:
                        for a_text in _field_forms(a, cfg):
                            for b_text in _field_forms(b, cfg):
                                day_len = (
                                    len(a_text)
                                    + len(b_text)
                                    + 2 * len(spacing)
                                    + 1
                                )
                                for month_text in month_texts:
                                    month_at = day_len + 1
                                    year_at = (
                                        month_at + len(month_text) + 1
                                    )
                                    out.append(
                                        RenderedExample(
                                            text=(
                                                f"{a_text}{spacing}-{spacing}"
                                                f"{b_text}{sep}{month_text}"
                                                f"{sep}{year_text}"
                                            ),
                                            family="day-range",
                                            parts=parts,
                                            span=span,
                                            part_spans=(
                                                ("day", 0, day_len),
                                                (
                                                    "month",
                                                    month_at,
                                                    month_at + len(month_text),
                                                ),
                                                (
                                                    "year",
                                                    year_at,
                                                    year_at + len(year_text),
                                                ),
                                            ),
                                        )
                                    )
    return out


def generate_examples(cfg: GenerationConfig) -> Iterator[RenderedExample]:
    """Stream the corpus in canonical order.

    Walking day by day: on the first of a month that lies entirely in
    the window, month-level shapes come first (named month, numeric
    month, day ranges), then the day-level shapes for every day.
    """
    ts = civil_to_epoch_midnight(cfg.start)
    end_ts = civil_to_epoch_midnight(cfg.end)
    while ts <= end_ts:
        date = epoch_to_civil(ts)
        if date.day == 1:
            dim = days_in_month(date.month, date.year)
            if ts + (dim - 1) * SECONDS_PER_DAY <= end_ts:
                yield from render_monthname_variants(date, True, cfg)
                yield from render_numeric_dayless_variants(date, cfg)
                yield from render_day_range_variants(date.month, date.year, cfg)
        yield from render_numeric_variants(date, cfg)
        yield from render_longform_variants(date, cfg)
        ts += SECONDS_PER_DAY


def build_training_corpus(cfg: GenerationConfig) -> Corpus:
    return Corpus(config=cfg, examples=tuple(generate_examples(cfg)))


def subsample_examples(cfg: GenerationConfig, cap: int) -> list[RenderedExample]:
    """At most `cap` examples, evenly strided across the stream.

    Two passes: one to count, one to pick every k-th example, so the
    full corpus never has to sit in memory.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    total = sum(1 for _ in generate_examples(cfg))
    if total <= cap:
        return list(generate_examples(cfg))
    stride = total / cap
    picks: list[RenderedExample] = []
    next_at = 0.0
    for i, example in enumerate(generate_examples(cfg)):
        if i >= next_at:
            picks.append(example)
            next_at += stride
            if len(picks) == cap:
                break
    return picks


@dataclass(frozen=True, slots=True)
class Annotation:
    """Ground truth for one date occurrence on one page.

    Either the character span or the timestamp interval may be absent,
    never both. `parts` carries the civil reading when known, so the
    annotation can be written to a file that stores dates both ways.
    """

    page_id: str
    span: tuple[int, int] | None = None
    range: TimestampRange | None = None
    parts: DateParts | None = None

    def __post_init__(self) -> None:
        if self.span is None and self.range is None:
            raise ValueError("annotation needs a span or a range")


@dataclass(frozen=True, slots=True)
class NoisePage:
    page_id: str
    text: str
    annotations: tuple[Annotation, ...]
    planted: tuple[str, ...]


DISTRACTORS = (
    "99/99/9999",
    "31/02/2001",
    "123/456/78910",
    "01234/567890",
    "12/3456",
    "21nd May, 2001",
)

# Free of digits, of "of"/"to"/"the", and of anything that reads as a
# month-name prefix, so filler never changes under preprocessing and
# never decomposes as a date part.
FILLER_WORDS = (
    "ledger",
    "archive",
    "entry",
    "recorded",
    "during",
    "survey",
    "witness",
    "parish",
    "volume",
    "folio",
    "clerk",
    "margin",
    "faded",
    "ink",
    "stamp",
    "register",
    "copied",
    "binding",
    "page",
    "docket",
    "ribbon",
    "vellum",
    "scribe",
    "bundle",
)


def inject_noise(
    corpus, seed: int = 0, sentences_per_page: int = 8
) -> tuple[NoisePage, ...]:
    """Embed corpus examples in filler prose with planted lookalikes.

    Each example becomes one sentence; every fifth sentence is instead
    a lookalike from DISTRACTORS (cycling, and each appears at least
    once). Pages hold `sentences_per_page` sentences and are stable
    under preprocessing, so annotation offsets hold in the scanner's
    coordinate space.
    """
    examples = corpus.examples if isinstance(corpus, Corpus) else tuple(corpus)
    rng = random.Random(seed)

    def words(k: int) -> list[str]:
        return [rng.choice(FILLER_WORDS) for _ in range(k)]

    payloads: list[tuple[str, RenderedExample | None]] = []
    example_iter = iter(examples)
    distractor_count = 0
    slot = 0
    exhausted = False
    while not exhausted:
        slot += 1
        if slot % 5 == 0:
            payloads.append(
                (DISTRACTORS[distractor_count % len(DISTRACTORS)], None)
            )
            distractor_count += 1
            continue
        try:
            example = next(example_iter)
        except StopIteration:
            exhausted = True
            continue
        payloads.append((preprocess_text(example.text), example))
    while distractor_count < len(DISTRACTORS):
        payloads.append((DISTRACTORS[distractor_count], None))
        distractor_count += 1

    pages: list[NoisePage] = []
    for page_start in range(0, len(payloads), sentences_per_page):
        chunk = payloads[page_start : page_start + sentences_per_page]
        page_id = f"noise-{len(pages):05d}"
        pieces: list[str] = []
        length = 0
        annotations: list[Annotation] = []
        planted: list[str] = []
        for payload, example in chunk:
            lead = " ".join(words(rng.randint(2, 4)))
            prefix = f"{lead} "
            start = length + len(prefix)
            tail = " ".join(words(rng.randint(1, 3)))
            sentence = f"{prefix}{payload} {tail}."
            if example is not None:
                annotations.append(
                    Annotation(
                        page_id=page_id,
                        span=(start, start + len(payload)),
                        range=example.span,
                        parts=example.parts,
                    )
                )
            else:
                planted.append(payload)
            pieces.append(sentence)
            length += len(sentence) + 1
        pages.append(
            NoisePage(
                page_id=page_id,
                text=" ".join(pieces),
                annotations=tuple(annotations),
                planted=tuple(planted),
            )
        )
    return tuple(pages)
