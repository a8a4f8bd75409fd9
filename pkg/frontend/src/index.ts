/**
 * TypeScript client for the datespan toolkit's artifact files and
 * transcription wire contract.
 *
 * The Python package produces line-delimited JSON artifacts (corpora,
 * pattern banks, pages, detections, annotations); this package reads
 * and validates them, re-implements the calendar arithmetic needed to
 * cross-check stored timestamp ranges, and speaks the transcription
 * client protocol with the same retry rules.
 */

export {
  SECONDS_PER_DAY,
  MIN_YEAR,
  MAX_YEAR,
  TWO_DIGIT_PIVOT,
  MONTH_NAMES,
  ORDINAL_SUFFIXES,
  InvalidDateError,
  isLeapYear,
  daysInMonth,
  resolveTwoDigitYear,
  monthFromName,
  ordinalFor,
  ordinalSuffixValid,
  civilToEpochMidnight,
  epochToCivil,
  timestampRange,
  sameRange,
  validateParts,
  rangeOf,
} from "./civil.js";
export type {
  CivilDate,
  TimestampRange,
  PartPair,
  DateParts,
} from "./civil.js";

export {
  FORMAT_VERSION,
  readCorpus,
  readBank,
  readDetections,
  readPages,
  iterAnnotationLines,
  parseAnnotationRecord,
} from "./records.js";
export type {
  CorpusRecord,
  PartOp,
  PartRule,
  BankEntry,
  Bank,
  DetectionRecord,
  PageRecord,
  AnnotationRecord,
} from "./records.js";

export { loadAnnotations } from "./annotations.js";
export type { Annotation, LoadedAnnotations } from "./annotations.js";

export {
  TRANSCRIPTION_PROMPT,
  TranscriptionError,
  TranscriptionTimeout,
  TranscriptionBackendError,
  MalformedResponseError,
  MockTranscriptionClient,
  imageDigest,
  transcribe,
  transcribePages,
} from "./transcription.js";
export type {
  TranscriptionRequest,
  TranscriptionResponse,
  TranscriptionClient,
  MockClientOptions,
  TranscribeOptions,
  TranscribePagesOptions,
} from "./transcription.js";

export { ENDPOINT_ENV_VAR, DEFAULT_CONFIG, configFromEnv } from "./config.js";
export type { TranscriptionConfig, ConfigFromEnvOptions } from "./config.js";
