"""Date extraction and regex synthesis for transcribed text.

The package turns prose dates ("3rd of June to the 2nd of July 1970",
"12/01/70", "Jan 1970") into half-open UNIX-timestamp intervals at UTC
midnights, and can synthesize the pattern bank that finds them: given
positive examples it derives regexes, with part-decomposition maps,
that minimise a description-length cost balancing pattern size against
how many strings the pattern admits.

Typical flow: :func:`generate_examples` renders a dated corpus,
:func:`synthesize_bank` learns patterns from it, :func:`scan` runs a
bank over text, and :func:`match_detections` scores the detections
against ground truth. The ``datespan`` command line exposes the same
steps as ``gen-corpus``, ``synth``, ``extract``, ``eval``, and
``bench``.
"""

from .banks import (
    DecompositionError,
    RegexBank,
    RegexEntry,
    builtin_bespoke_bank,
    builtin_community_bank,
    compile_guarded,
    run_extraction_map,
)
from .civil import (
    MONTH_NAMES,
    ORDINAL_SUFFIXES,
    SECONDS_PER_DAY,
    TWO_DIGIT_PIVOT,
    CivilDate,
    DateParts,
    InvalidDateError,
    TimestampRange,
    civil_to_epoch_midnight,
    days_in_month,
    epoch_to_civil,
    is_leap_year,
    month_from_name,
    ordinal_for,
    ordinal_suffix_valid,
    range_of,
    resolve_two_digit_year,
)
from .corpus import (
    DISTRACTORS,
    Annotation,
    Corpus,
    GenerationConfig,
    NoisePage,
    RenderedExample,
    build_training_corpus,
    generate_examples,
    inject_noise,
    month_name_forms,
    subsample_examples,
)
from .evaluation import (
    MATCH_MODES,
    ConfusionMatrix,
    match_detections,
    report,
    spans_overlap,
)
from .extraction import (
    Detection,
    assemble_multiline,
    preprocess_text,
    scan,
    scan_multiline,
)
from .families import FAMILIES, Column, Family, PartRule, family_named
from .fragments import (
    Alternation,
    AnyAlpha,
    AnyDigit,
    Concat,
    Literal,
    NumericRange,
    Opt,
    count_strings,
    matches,
    size,
    to_regex,
)
from .ingestion import (
    ENDPOINT_ENV_VAR,
    TRANSCRIPTION_PROMPT,
    GrayscaleImage,
    LoadedAnnotations,
    MalformedResponseError,
    MockTranscriptionClient,
    Page,
    TranscriptionBackendError,
    TranscriptionClient,
    TranscriptionConfig,
    TranscriptionError,
    TranscriptionRequest,
    TranscriptionResponse,
    TranscriptionTimeout,
    binarize,
    image_digest,
    load_annotations,
    transcribe,
    transcribe_pages,
)
from .records import (
    FORMAT_VERSION,
    AnnotationRecord,
    CorpusRecord,
    PageRecord,
    iter_annotation_lines,
    parse_annotation_record,
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
from .synthesis import (
    Cluster,
    CostParams,
    SynthesizedPattern,
    align_to_family,
    candidate_fragments,
    cluster_by_shape,
    fragment_cost,
    synthesize_bank,
    synthesize_cluster,
    tokenize,
)

__all__ = [
    # civil calendar
    "CivilDate",
    "DateParts",
    "TimestampRange",
    "InvalidDateError",
    "civil_to_epoch_midnight",
    "epoch_to_civil",
    "range_of",
    "is_leap_year",
    "days_in_month",
    "month_from_name",
    "ordinal_for",
    "ordinal_suffix_valid",
    "resolve_two_digit_year",
    "MONTH_NAMES",
    "ORDINAL_SUFFIXES",
    "SECONDS_PER_DAY",
    "TWO_DIGIT_PIVOT",
    # shape templates
    "Family",
    "Column",
    "PartRule",
    "FAMILIES",
    "family_named",
    # pattern fragments
    "Literal",
    "AnyDigit",
    "AnyAlpha",
    "NumericRange",
    "Alternation",
    "Opt",
    "Concat",
    "size",
    "count_strings",
    "to_regex",
    "matches",
    # banks and scanning
    "RegexBank",
    "RegexEntry",
    "DecompositionError",
    "builtin_community_bank",
    "builtin_bespoke_bank",
    "compile_guarded",
    "run_extraction_map",
    "Detection",
    "preprocess_text",
    "scan",
    "scan_multiline",
    "assemble_multiline",
    # corpus generation
    "GenerationConfig",
    "RenderedExample",
    "Corpus",
    "Annotation",
    "NoisePage",
    "DISTRACTORS",
    "generate_examples",
    "build_training_corpus",
    "subsample_examples",
    "inject_noise",
    "month_name_forms",
    # synthesis
    "CostParams",
    "Cluster",
    "SynthesizedPattern",
    "tokenize",
    "align_to_family",
    "cluster_by_shape",
    "candidate_fragments",
    "fragment_cost",
    "synthesize_cluster",
    "synthesize_bank",
    # evaluation
    "ConfusionMatrix",
    "MATCH_MODES",
    "spans_overlap",
    "match_detections",
    "report",
    # ingestion
    "GrayscaleImage",
    "binarize",
    "Page",
    "TranscriptionClient",
    "TranscriptionConfig",
    "TranscriptionRequest",
    "TranscriptionResponse",
    "TranscriptionError",
    "TranscriptionTimeout",
    "TranscriptionBackendError",
    "MalformedResponseError",
    "MockTranscriptionClient",
    "image_digest",
    "transcribe",
    "transcribe_pages",
    "load_annotations",
    "LoadedAnnotations",
    "ENDPOINT_ENV_VAR",
    "TRANSCRIPTION_PROMPT",
    # file formats
    "FORMAT_VERSION",
    "CorpusRecord",
    "AnnotationRecord",
    "PageRecord",
    "read_corpus",
    "write_corpus",
    "read_bank",
    "write_bank",
    "read_detections",
    "write_detections",
    "read_pages",
    "write_pages",
    "write_annotations",
    "iter_annotation_lines",
    "parse_annotation_record",
]
