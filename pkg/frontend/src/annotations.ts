/**
 * Annotation file loading with per-record screening.
 *
 * Ground-truth files store every date twice: as civil parts and as a
 * timestamp pair. The loader recomputes the pair from the parts and
 * only keeps records where the two agree, so a stale or hand-mangled
 * annotation can never leak into an evaluation. Nothing here is fatal
 * short of an unreadable file — each bad record is screened out and
 * accounted for.
 */

import {
  InvalidDateError,
  TimestampRange,
  rangeOf,
  sameRange,
  timestampRange,
} from "./civil.js";
import { iterAnnotationLines, parseAnnotationRecord } from "./records.js";

/** One screened ground-truth date occurrence. */
export interface Annotation {
  pageId: string;
  span: [number, number] | null;
  range: TimestampRange;
}

/**
 * Screened ground truth plus the tally of what was set aside.
 *
 * `dropped` counts every record not in `annotations`, for any reason;
 * accepted + dropped equals the file's record count. `missingParts`
 * counts records lacking a month or a year, `flagged` lists records
 * whose stored timestamps disagree with the range recomputed from
 * their parts, and `errors` lists records that would not parse.
 */
export interface LoadedAnnotations {
  annotations: Annotation[];
  dropped: number;
  missingParts: number;
  flagged: Array<[number, string]>;
  errors: Array<[number, string]>;
}

/**
 * Read an annotation file, screening each record.
 *
 * Records without a month or a year are dropped (counted, not kept);
 * for the rest the timestamp range is recomputed from the civil parts
 * and must equal the stored pair, otherwise the record is flagged and
 * excluded. An unreadable file throws; a malformed record is a
 * per-record error, never fatal.
 */
export function loadAnnotations(path: string): LoadedAnnotations {
  const accepted: Annotation[] = [];
  const flagged: Array<[number, string]> = [];
  const errors: Array<[number, string]> = [];
  let missing = 0;
  for (const [lineNo, line] of iterAnnotationLines(path)) {
    let record;
    try {
      record = parseAnnotationRecord(line);
    } catch (error) {
      errors.push([lineNo, (error as Error).message]);
      continue;
    }
    if (record.month === null || record.year === null) {
      missing += 1;
      continue;
    }
    let recomputed: TimestampRange;
    let stored: TimestampRange;
    try {
      recomputed = rangeOf({
        month: record.month,
        year: record.year,
        day: record.day,
        suffix: record.suffix,
      });
      stored = timestampRange(record.start, record.end);
    } catch (error) {
      if (error instanceof InvalidDateError) {
        errors.push([lineNo, error.message]);
        continue;
      }
      throw error;
    }
    if (!sameRange(recomputed, stored)) {
      flagged.push([
        lineNo,
        `stored [${record.start},${record.end}) != recomputed ` +
          `[${recomputed.start},${recomputed.end})`,
      ]);
      continue;
    }
    accepted.push({ pageId: record.pageId, span: record.span, range: stored });
  }
  return {
    annotations: accepted,
    dropped: missing + flagged.length + errors.length,
    missingParts: missing,
    flagged,
    errors,
  };
}
