"""The boundary between raw documents and the text pipeline.

Three concerns live here: preparing page images for an external
transcriber (binarization), calling that transcriber through a narrow
wire contract with retries, and loading ground-truth annotation files
with per-record screening. Image decoding and the transcription models
themselves are outside the package; the bundled client is a mock that
answers from canned fixtures keyed by image hash, which keeps every
test hermetic.
"""

import hashlib
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Protocol

from .civil import DateParts, InvalidDateError, TimestampRange, range_of
from .corpus import Annotation
from .extraction import preprocess_text
from .records import iter_annotation_lines, parse_annotation_record

__all__ = [
    "ENDPOINT_ENV_VAR",
    "TRANSCRIPTION_PROMPT",
    "GrayscaleImage",
    "Page",
    "binarize",
    "TranscriptionRequest",
    "TranscriptionResponse",
    "TranscriptionError",
    "TranscriptionTimeout",
    "TranscriptionBackendError",
    "MalformedResponseError",
    "TranscriptionClient",
    "MockTranscriptionClient",
    "TranscriptionConfig",
    "transcribe",
    "transcribe_pages",
    "LoadedAnnotations",
    "load_annotations",
]

ENDPOINT_ENV_VAR = "DATESPAN_TRANSCRIPTION_ENDPOINT"
TRANSCRIPTION_PROMPT = "what text is in this image?"


# ----------------------------------------------------------------- images


@dataclass(frozen=True, slots=True)
class GrayscaleImage:
    """Decoded grayscale page: row-major intensities, 0 black..255 white."""

    width: int
    height: int
    pixels: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be positive")
        if len(self.pixels) != self.width * self.height:
            raise ValueError(
                f"expected {self.width * self.height} pixels, "
                f"got {len(self.pixels)}"
            )
        if any(p < 0 or p > 255 for p in self.pixels):
            raise ValueError("pixel values must be in 0..255")

    def to_bytes(self) -> bytes:
        return bytes(self.pixels)


def binarize(img: GrayscaleImage, threshold: int = 100) -> GrayscaleImage:
    """Push bright pixels to white; darker pixels keep their value.

    Strictly-greater rule: a pixel exactly at the threshold is left
    alone. Applying the operation twice changes nothing, since 255 is
    above any allowed threshold.
    """
    if threshold < 0 or threshold > 255:
        raise ValueError("threshold must be in 0..255")
    return GrayscaleImage(
        width=img.width,
        height=img.height,
        pixels=tuple(255 if p > threshold else p for p in img.pixels),
    )


@dataclass(frozen=True, slots=True)
class Page:
    """One transcribed page, with its scanner-ready text alongside."""

    document_id: str
    page_id: str
    raw_text: str
    preprocessed_text: str = ""

    def __post_init__(self) -> None:
        if self.preprocessed_text and self.preprocessed_text != preprocess_text(
            self.raw_text
        ):
            raise ValueError(
                "preprocessed_text does not match preprocess_text(raw_text)"
            )

    @classmethod
    def from_transcription(
        cls, document_id: str, page_id: str, raw_text: str
    ) -> "Page":
        return cls(
            document_id=document_id,
            page_id=page_id,
            raw_text=raw_text,
            preprocessed_text=preprocess_text(raw_text),
        )


# ---------------------------------------------------------- transcription


@dataclass(frozen=True, slots=True)
class TranscriptionRequest:
    image_bytes: bytes
    prompt: str = TRANSCRIPTION_PROMPT


@dataclass(frozen=True, slots=True)
class TranscriptionResponse:
    text: str
    backend: str


class TranscriptionError(Exception):
    """Base for transcription failures; `attempts` counts tries made."""

    def __init__(self, message: str = "", attempts: int = 1):
        super().__init__(message)
        self.attempts = attempts


class TranscriptionTimeout(TranscriptionError):
    """The backend did not answer in time."""


class TranscriptionBackendError(TranscriptionError):
    """The backend answered with a failure."""


class MalformedResponseError(TranscriptionError):
    """The backend answered with something that is not a transcription."""


class TranscriptionClient(Protocol):
    """One round trip of the wire contract: request in, response out.

    Implementations raise TranscriptionTimeout, TranscriptionBackendError,
    or MalformedResponseError for a single failed exchange; retry policy
    belongs to the caller.
    """

    def request(self, request: TranscriptionRequest) -> TranscriptionResponse:
        ...


def image_digest(image_bytes: bytes) -> str:
    """Key used to look up mock fixtures for an image."""
    return hashlib.sha256(image_bytes).hexdigest()


class MockTranscriptionClient:
    """Canned transcriptions keyed by image hash, for hermetic tests.

    `unreachable` simulates a dead endpoint (every call times out);
    `fail_times` makes the first n calls raise a backend error before
    succeeding; `malformed` makes every call return garbage.
    """

    backend = "mock"

    def __init__(
        self,
        fixtures: dict[str, str] | None = None,
        unreachable: bool = False,
        fail_times: int = 0,
        malformed: bool = False,
    ):
        self.fixtures = dict(fixtures or {})
        self.unreachable = unreachable
        self.remaining_failures = fail_times
        self.malformed = malformed
        self.calls = 0

    def add_fixture(self, image: GrayscaleImage, text: str) -> str:
        key = image_digest(image.to_bytes())
        self.fixtures[key] = text
        return key

    def request(self, request: TranscriptionRequest) -> TranscriptionResponse:
        self.calls += 1
        if self.unreachable:
            raise TranscriptionTimeout("endpoint unreachable")
        if self.remaining_failures > 0:
            self.remaining_failures -= 1
            raise TranscriptionBackendError("transient backend failure")
        if self.malformed:
            raise MalformedResponseError("response carried no text")
        key = image_digest(request.image_bytes)
        if key not in self.fixtures:
            raise TranscriptionBackendError(f"no fixture for image {key[:12]}")
        return TranscriptionResponse(text=self.fixtures[key], backend=self.backend)


@dataclass(frozen=True, slots=True)
class TranscriptionConfig:
    """Client-side knobs; only the endpoint may come from the environment."""

    endpoint: str = ""
    timeout_seconds: float = 30.0
    retries: int = 2
    max_in_flight: int = 4

    @classmethod
    def from_env(cls, env=None, **overrides) -> "TranscriptionConfig":
        env = os.environ if env is None else env
        endpoint = overrides.pop("endpoint", None)
        if endpoint is None:
            endpoint = env.get(ENDPOINT_ENV_VAR, "")
        return cls(endpoint=endpoint, **overrides)


def transcribe(
    image: GrayscaleImage,
    client: TranscriptionClient,
    retries: int = 2,
    prompt: str = TRANSCRIPTION_PROMPT,
) -> str:
    """One page through the client, retrying transient failures.

    Timeouts and backend errors are retried up to `retries` extra
    attempts; a malformed response is never retried. The raised error
    carries the total attempt count.
    """
    request = TranscriptionRequest(image_bytes=image.to_bytes(), prompt=prompt)
    attempts = 0
    while True:
        attempts += 1
        try:
            response = client.request(request)
        except MalformedResponseError as exc:
            raise MalformedResponseError(str(exc), attempts) from None
        except TranscriptionTimeout as exc:
            if attempts > retries:
                raise TranscriptionTimeout(str(exc), attempts) from None
        except TranscriptionBackendError as exc:
            if attempts > retries:
                raise TranscriptionBackendError(str(exc), attempts) from None
        else:
            if not isinstance(response.text, str):
                raise MalformedResponseError(
                    "response text is not a string", attempts
                )
            return response.text


def transcribe_pages(
    pages,
    client: TranscriptionClient,
    retries: int = 2,
    max_in_flight: int = 4,
) -> dict[str, str]:
    """Transcribe many pages, up to `max_in_flight` concurrently.

    `pages` maps page_id to image (or yields such pairs). Results come
    back keyed by page_id, so completion order never matters.
    """
    items = list(pages.items()) if isinstance(pages, dict) else list(pages)
    if max_in_flight < 1:
        raise ValueError("max_in_flight must be positive")
    with ThreadPoolExecutor(max_workers=max_in_flight) as pool:
        futures = [
            (page_id, pool.submit(transcribe, image, client, retries))
            for page_id, image in items
        ]
        return {page_id: future.result() for page_id, future in futures}


# ------------------------------------------------------------ annotations


@dataclass(frozen=True, slots=True)
class LoadedAnnotations:
    """Screened ground truth plus the tally of what was set aside.

    `dropped` counts every record not in `annotations`, for any reason;
    accepted + dropped equals the file's record count. `missing_parts`
    counts records lacking a month or a year, `flagged` lists records
    whose stored timestamps disagree with the range recomputed from
    their parts, and `errors` lists records that would not parse.
    """

    annotations: tuple[Annotation, ...]
    dropped: int
    missing_parts: int
    flagged: tuple[tuple[int, str], ...]
    errors: tuple[tuple[int, str], ...]


def load_annotations(path) -> LoadedAnnotations:
    """Read an annotation file, screening each record.

    Records without a month or a year are dropped (counted, not kept);
    for the rest the timestamp range is recomputed from the civil parts
    and must equal the stored pair, otherwise the record is flagged and
    excluded. An unreadable file raises OSError; a malformed record is
    a per-record error, never fatal.
    """
    accepted: list[Annotation] = []
    flagged: list[tuple[int, str]] = []
    errors: list[tuple[int, str]] = []
    missing = 0
    for line_no, line in iter_annotation_lines(path):
        try:
            record = parse_annotation_record(line)
        except ValueError as exc:
            errors.append((line_no, str(exc)))
            continue
        if record.month is None or record.year is None:
            missing += 1
            continue
        try:
            parts = DateParts(
                month=record.month,
                year=record.year,
                day=record.day,
                ordinal_suffix=record.suffix,
            )
            recomputed = range_of(parts)
            stored = TimestampRange(record.start, record.end)
        except (InvalidDateError, ValueError) as exc:
            errors.append((line_no, str(exc)))
            continue
        if recomputed != stored:
            flagged.append(
                (
                    line_no,
                    f"stored [{record.start},{record.end}) != recomputed "
                    f"[{recomputed.start},{recomputed.end})",
                )
            )
            continue
        accepted.append(
            Annotation(page_id=record.page_id, span=record.span, range=stored)
        )
    return LoadedAnnotations(
        annotations=tuple(accepted),
        dropped=missing + len(flagged) + len(errors),
        missing_parts=missing,
        flagged=tuple(flagged),
        errors=tuple(errors),
    )
