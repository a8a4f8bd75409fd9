"""Command-line entry point.

Five subcommands cover the pipeline: gen-corpus renders dated text with
ground truth, synth derives a pattern bank from a corpus, extract runs
a bank over pages, eval scores detection files against annotations, and
bench runs the whole chain end to end with a fixed seed. Settings can
come from a JSON config file; flags always win. Exit codes: 0 success,
2 usage, 3 file trouble, 4 invalid values or content.
"""

import argparse
import json
import sys
from pathlib import Path

from .banks import RegexBank, builtin_bespoke_bank, builtin_community_bank
from .civil import CivilDate
from .corpus import (
    GenerationConfig,
    generate_examples,
    inject_noise,
    subsample_examples,
)
from .evaluation import MATCH_MODES, match_detections, report
from .extraction import preprocess_text, scan
from .ingestion import load_annotations
from .records import (
    AnnotationRecord,
    PageRecord,
    read_bank,
    read_corpus,
    read_detections,
    read_pages,
    write_annotations,
    write_bank,
    write_corpus,
    write_detections,
    write_pages,
)
from .synthesis import CostParams, synthesize_bank

__all__ = [
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_IO",
    "EXIT_INVALID",
    "BENCH_WINDOW",
    "BENCH_NOISE_SAMPLE",
    "main",
    "main_entry",
]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INVALID = 4

BENCH_WINDOW = ("1960-01-01", "1980-12-31")
BENCH_NOISE_SAMPLE = 4000


class UsageError(Exception):
    """A missing or contradictory setting; reported with exit code 2."""


def _civil(text: str, flag: str) -> CivilDate:
    pieces = text.split("-")
    try:
        if len(pieces) != 3:
            raise ValueError
        year, month, day = (int(p, 10) for p in pieces)
    except ValueError:
        raise ValueError(
            f"{flag} must be an ISO date (YYYY-MM-DD), got {text!r}"
        ) from None
    return CivilDate(year, month, day)


_CONFIG_KEYS = frozenset(
    {
        "from",
        "to",
        "out",
        "out_dir",
        "pad_variants",
        "seed",
        "noise_out",
        "annotations_out",
        "noise_sample",
        "corpus",
        "lambda",
        "bank",
        "pages",
        "text",
        "detections",
        "annotations",
        "match_mode",
        "csv_out",
    }
)


def _load_config(args) -> dict:
    path = getattr(args, "config", None)
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        try:
            config = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(config, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    unknown = sorted(set(config) - _CONFIG_KEYS)
    if unknown:
        raise ValueError(f"{path}: unknown settings: {', '.join(unknown)}")
    return config


_DEST_OVERRIDES = {"from": "from_", "lambda": "lambda_"}


def _setting(args, config: dict, name: str, default=None):
    """Flag value if given, else config-file value, else the default."""
    attr = _DEST_OVERRIDES.get(name, name.replace("-", "_"))
    value = getattr(args, attr, None)
    if value is not None:
        return value
    if name in config:
        return config[name]
    return default


def _require(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _window(args, config, default=None) -> tuple[CivilDate, CivilDate]:
    start = _setting(args, config, "from", default and default[0])
    end = _setting(args, config, "to", default and default[1])
    start = _civil(str(_require(start, "--from")), "--from")
    end = _civil(str(_require(end, "--to")), "--to")
    return start, end


def _resolve_bank(value: str) -> RegexBank:
    if value == "community":
        return builtin_community_bank()
    if value == "bespoke":
        return builtin_bespoke_bank()
    return read_bank(value)


def _annotation_records(pages):
    for page in pages:
        for annotation in page.annotations:
            parts = annotation.parts
            yield AnnotationRecord(
                page_id=annotation.page_id,
                span=annotation.span,
                day=None if parts is None else parts.day,
                suffix=None if parts is None else parts.ordinal_suffix,
                month=None if parts is None else parts.month,
                year=None if parts is None else parts.year,
                start=annotation.range.start,
                end=annotation.range.end,
            )


# ---------------------------------------------------------------- commands


def cmd_gen_corpus(args) -> int:
    config = _load_config(args)
    start, end = _window(args, config)
    pad = _setting(args, config, "pad_variants", "on")
    gen_cfg = GenerationConfig(start, end, pad_variants=(pad == "on"))
    out = _require(_setting(args, config, "out"), "--out")
    count = write_corpus(out, generate_examples(gen_cfg))
    print(f"{count} examples -> {out}")

    noise_out = _setting(args, config, "noise_out")
    if noise_out is None:
        return EXIT_OK
    annotations_out = _require(
        _setting(args, config, "annotations_out"),
        "--annotations-out (required with --noise-out)",
    )
    seed = int(_setting(args, config, "seed", 0))
    cap = int(_setting(args, config, "noise_sample", BENCH_NOISE_SAMPLE))
    pages = inject_noise(subsample_examples(gen_cfg, cap), seed=seed)
    write_pages(noise_out, pages)
    written = write_annotations(annotations_out, _annotation_records(pages))
    print(f"{len(pages)} noise pages -> {noise_out}")
    print(f"{written} annotations -> {annotations_out}")
    return EXIT_OK


def cmd_synth(args) -> int:
    config = _load_config(args)
    corpus_path = _require(_setting(args, config, "corpus"), "--corpus")
    out = _require(_setting(args, config, "out"), "--out")
    lam = float(_setting(args, config, "lambda", 1.0))
    bank = synthesize_bank(read_corpus(corpus_path), CostParams(lam=lam))
    write_bank(out, bank)
    for entry in bank.entries:
        print(f"{entry.label}: {entry.pattern}")
    print(f"{len(bank.entries)} entries -> {out}")
    return EXIT_OK


def cmd_extract(args) -> int:
    config = _load_config(args)
    bank = _resolve_bank(str(_require(_setting(args, config, "bank"), "--bank")))
    out = _require(_setting(args, config, "out"), "--out")
    pages_path = _setting(args, config, "pages")
    text_path = _setting(args, config, "text")
    if (pages_path is None) == (text_path is None):
        raise UsageError("exactly one of --pages or --text is required")
    if pages_path is not None:
        pages = read_pages(pages_path)
    else:
        raw = Path(text_path).read_text(encoding="utf-8")
        pages = [PageRecord(page_id=Path(text_path).stem, text=raw)]

    def detections():
        for page in pages:
            yield from scan(preprocess_text(page.text), bank, page_id=page.page_id)

    count = write_detections(out, detections(), bank.provenance)
    print(f"{count} detections -> {out}")
    return EXIT_OK


def cmd_eval(args) -> int:
    config = _load_config(args)
    detection_paths = _setting(args, config, "detections")
    if not detection_paths:
        raise UsageError("--detections is required")
    if isinstance(detection_paths, str):
        detection_paths = [detection_paths]
    annotations_path = _require(
        _setting(args, config, "annotations"), "--annotations"
    )
    mode = str(_setting(args, config, "match_mode", "timestamp"))
    if mode not in MATCH_MODES:
        raise ValueError(f"--match-mode must be one of {'/'.join(MATCH_MODES)}")
    loaded = load_annotations(annotations_path)
    if loaded.dropped:
        print(
            f"screened out {loaded.dropped} annotation records "
            f"({loaded.missing_parts} missing parts, "
            f"{len(loaded.flagged)} flagged, {len(loaded.errors)} malformed)",
            file=sys.stderr,
        )
    rows = []
    for path in detection_paths:
        provenance, detections = read_detections(path)
        rows.append(
            (provenance, match_detections(detections, loaded.annotations, mode))
        )
    text, csv_text = report(rows)
    print(text, end="")
    out = _setting(args, config, "out")
    if out is not None:
        Path(out).write_text(text, encoding="utf-8")
    csv_out = _setting(args, config, "csv_out")
    if csv_out is not None:
        Path(csv_out).write_text(csv_text, encoding="utf-8")
    return EXIT_OK


def cmd_bench(args) -> int:
    """gen-corpus -> synth -> extract -> eval, seeded, into one directory."""
    config = _load_config(args)
    out_dir = Path(_require(_setting(args, config, "out_dir"), "--out-dir"))
    start, end = _window(args, config, default=BENCH_WINDOW)
    seed = int(_setting(args, config, "seed", 0))
    lam = float(_setting(args, config, "lambda", 1.0))
    cap = int(_setting(args, config, "noise_sample", BENCH_NOISE_SAMPLE))
    out_dir.mkdir(parents=True, exist_ok=True)
    gen_cfg = GenerationConfig(start, end, pad_variants=False)

    count = write_corpus(out_dir / "corpus.jsonl", generate_examples(gen_cfg))
    print(f"{count} examples -> {out_dir / 'corpus.jsonl'}")

    bank = synthesize_bank(
        ((e.text, e.family) for e in generate_examples(gen_cfg)),
        CostParams(lam=lam),
    )
    write_bank(out_dir / "bank.jsonl", bank)
    for entry in bank.entries:
        print(f"{entry.label}: {entry.pattern}")

    pages = inject_noise(subsample_examples(gen_cfg, cap), seed=seed)
    write_pages(out_dir / "pages.jsonl", pages)
    write_annotations(
        out_dir / "annotations.jsonl", _annotation_records(pages)
    )
    print(f"{len(pages)} noise pages -> {out_dir / 'pages.jsonl'}")

    loaded = load_annotations(out_dir / "annotations.jsonl")
    contenders = (
        ("community", builtin_community_bank(), "span"),
        ("bespoke", builtin_bespoke_bank(), "timestamp"),
        ("synthesized", bank, "timestamp"),
    )
    rows = []
    for name, contender, mode in contenders:
        found = tuple(
            detection
            for page in pages
            for detection in scan(page.text, contender, page_id=page.page_id)
        )
        write_detections(
            out_dir / f"detections-{name}.jsonl", found, contender.provenance
        )
        rows.append((name, match_detections(found, loaded.annotations, mode)))
    text, csv_text = report(rows)
    (out_dir / "report.txt").write_text(text, encoding="utf-8")
    (out_dir / "report.csv").write_text(csv_text, encoding="utf-8")
    print(text, end="")
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="datespan",
        description="Date extraction and regex synthesis toolkit.",
    )
    parser.add_argument(
        "--config",
        help="JSON file with default settings; explicit flags override it",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser(
        "gen-corpus", help="render dated text with ground truth"
    )
    gen.add_argument("--from", dest="from_", metavar="DATE")
    gen.add_argument("--to", dest="to", metavar="DATE")
    gen.add_argument("--out")
    gen.add_argument("--pad-variants", choices=("on", "off"))
    gen.add_argument("--seed", type=int)
    gen.add_argument("--noise-out", help="also write noise pages here")
    gen.add_argument("--annotations-out", help="ground truth for the noise pages")
    gen.add_argument("--noise-sample", type=int, metavar="N")
    gen.set_defaults(func=cmd_gen_corpus)

    synth = sub.add_parser("synth", help="derive a pattern bank from a corpus")
    synth.add_argument("--corpus")
    synth.add_argument("--out")
    synth.add_argument("--lambda", dest="lambda_", type=float, metavar="F")
    synth.set_defaults(func=cmd_synth)

    extract = sub.add_parser("extract", help="run a bank over pages")
    extract.add_argument(
        "--bank", help="community, bespoke, or a bank file path"
    )
    extract.add_argument("--pages", help="pages file")
    extract.add_argument("--text", help="one raw text file as a single page")
    extract.add_argument("--out")
    extract.set_defaults(func=cmd_extract)

    evaluate = sub.add_parser("eval", help="score detections against annotations")
    evaluate.add_argument(
        "--detections", action="append", help="repeatable, one row per file"
    )
    evaluate.add_argument("--annotations")
    evaluate.add_argument("--match-mode", choices=MATCH_MODES)
    evaluate.add_argument("--out", help="write the text report here")
    evaluate.add_argument("--csv-out", help="write the CSV report here")
    evaluate.set_defaults(func=cmd_eval)

    bench = sub.add_parser(
        "bench", help="gen-corpus, synth, extract, eval in one seeded run"
    )
    bench.add_argument("--out-dir")
    bench.add_argument("--from", dest="from_", metavar="DATE")
    bench.add_argument("--to", dest="to", metavar="DATE")
    bench.add_argument("--seed", type=int)
    bench.add_argument("--lambda", dest="lambda_", type=float, metavar="F")
    bench.add_argument("--noise-sample", type=int, metavar="N")
    bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else int(exc.code)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main_entry() -> None:
    raise SystemExit(main())
