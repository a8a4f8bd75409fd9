/**
 * Readers for the line-delimited artifact files.
 *
 * Each file is UTF-8 JSON-lines: one header object announcing the
 * format name and schema version, then one object per record. The
 * readers validate the header, decode every record into a typed shape,
 * and report malformed lines with their line number, so a bad byte
 * never turns into a silently skipped record.
 */

import { readFileSync } from "node:fs";

import {
  DateParts,
  PartPair,
  TimestampRange,
  timestampRange,
  validateParts,
} from "./civil.js";

export const FORMAT_VERSION = 1;

type JsonObject = Record<string, unknown>;

interface Body {
  header: JsonObject;
  /** [line number, raw line] for every non-blank record line. */
  lines: Array<[number, string]>;
}

function readBody(path: string, expected: string): Body {
  const content = readFileSync(path, "utf-8");
  const rows = content.split("\n");
  const first = rows[0] ?? "";
  if (!first.trim()) {
    throw new Error(`${path}: missing header line`);
  }
  let header: unknown;
  try {
    header = JSON.parse(first);
  } catch (error) {
    throw new Error(
      `${path}: unreadable header: ${(error as Error).message}`
    );
  }
  if (
    typeof header !== "object" ||
    header === null ||
    Array.isArray(header) ||
    (header as JsonObject).format !== expected
  ) {
    const got =
      typeof header === "object" && header !== null && !Array.isArray(header)
        ? (header as JsonObject).format
        : first.trim();
    throw new Error(`${path}: expected a '${expected}' file, got ${JSON.stringify(got)}`);
  }
  const version = (header as JsonObject).version;
  if (version !== FORMAT_VERSION) {
    throw new Error(`${path}: unsupported version ${JSON.stringify(version)}`);
  }
  const lines: Array<[number, string]> = [];
  for (let i = 1; i < rows.length; i++) {
    const row = rows[i] as string;
    if (row.trim()) {
      lines.push([i + 1, row]);
    }
  }
  return { header: header as JsonObject, lines };
}

function asObject(value: unknown, what: string): JsonObject {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    throw new Error(`${what} must be an object`);
  }
  return value as JsonObject;
}

function requireString(obj: JsonObject, key: string): string {
  const value = obj[key];
  if (typeof value !== "string") {
    throw new Error(`${key} must be a string`);
  }
  return value;
}

function requireInt(obj: JsonObject, key: string): number {
  const value = obj[key];
  if (typeof value !== "number" || !Number.isInteger(value)) {
    throw new Error(`${key} must be an integer`);
  }
  return value;
}

function pairOrInt(
  value: unknown,
  field: string
): number | PartPair | null {
  if (value === null || value === undefined) {
    return null;
  }
  if (typeof value === "number" && Number.isInteger(value)) {
    return value;
  }
  if (
    Array.isArray(value) &&
    value.length === 2 &&
    value.every((v) => typeof v === "number" && Number.isInteger(v))
  ) {
    return [value[0] as number, value[1] as number];
  }
  throw new Error(`${field} must be an integer or a two-integer pair`);
}

function spanFromValue(
  value: unknown,
  field = "span"
): [number, number] | null {
  if (value === null || value === undefined) {
    return null;
  }
  if (
    Array.isArray(value) &&
    value.length === 2 &&
    value.every((v) => typeof v === "number" && Number.isInteger(v))
  ) {
    return [value[0] as number, value[1] as number];
  }
  throw new Error(`${field} must be a two-integer pair`);
}

function partsFromValue(value: unknown): DateParts | null {
  if (value === null || value === undefined) {
    return null;
  }
  const obj = asObject(value, "parts");
  const suffix = obj.suffix ?? null;
  if (suffix !== null && typeof suffix !== "string") {
    throw new Error("suffix must be a string");
  }
  const parts: DateParts = {
    month: pairOrInt(obj.month, "month"),
    year: pairOrInt(obj.year, "year"),
    day: pairOrInt(obj.day, "day"),
    suffix,
  };
  return parts;
}

// ---------------------------------------------------------------- corpus

/** One training example as stored on disk. */
export interface CorpusRecord {
  text: string;
  family: string;
  parts: DateParts;
  range: TimestampRange;
}

/**
 * Read a corpus file; throws on a malformed record, naming its line.
 */
export function readCorpus(path: string): CorpusRecord[] {
  const { lines } = readBody(path, "corpus");
  const records: CorpusRecord[] = [];
  for (const [lineNo, line] of lines) {
    try {
      const obj = asObject(JSON.parse(line), "record");
      const parts = partsFromValue(obj.parts);
      if (parts === null) {
        throw new Error("parts must be an object");
      }
      validateParts(parts);
      records.push({
        text: requireString(obj, "text"),
        family: requireString(obj, "family"),
        parts,
        range: timestampRange(requireInt(obj, "start"), requireInt(obj, "end")),
      });
    } catch (error) {
      throw new Error(
        `${path}:${lineNo}: bad corpus record: ${(error as Error).message}`
      );
    }
  }
  return records;
}

// ------------------------------------------------------------------ bank

/** One step of a decomposition map, e.g. ["split", " -./"]. */
export type PartOp = Array<string | number>;

/** How one date part is recovered from a matched string. */
export interface PartRule {
  part: string;
  ops: PartOp[];
  optional: boolean;
}

/** A pattern plus the decomposition map applied to its matches. */
export interface BankEntry {
  priority: number;
  label: string;
  pattern: string;
  rules: PartRule[];
}

/** An ordered pattern collection with its provenance name. */
export interface Bank {
  provenance: string;
  entries: BankEntry[];
}

function ruleFromValue(value: unknown): PartRule {
  const obj = asObject(value, "rule");
  const ops = obj.ops;
  if (!Array.isArray(ops)) {
    throw new Error("ops must be an array");
  }
  const decoded: PartOp[] = ops.map((op) => {
    if (
      !Array.isArray(op) ||
      op.length === 0 ||
      !op.every((v) => typeof v === "string" || typeof v === "number")
    ) {
      throw new Error("each op must be a non-empty array of strings/numbers");
    }
    return [...op] as PartOp;
  });
  return {
    part: requireString(obj, "part"),
    ops: decoded,
    optional: Boolean(obj.optional),
  };
}

/**
 * Read a bank file; the header must carry a provenance string.
 */
export function readBank(path: string): Bank {
  const { header, lines } = readBody(path, "bank");
  const provenance = header.provenance;
  if (typeof provenance !== "string") {
    throw new Error(`${path}: bank header needs a provenance string`);
  }
  const entries: BankEntry[] = [];
  for (const [lineNo, line] of lines) {
    try {
      const obj = asObject(JSON.parse(line), "record");
      const rules = obj.rules;
      if (!Array.isArray(rules)) {
        throw new Error("rules must be an array");
      }
      entries.push({
        priority: requireInt(obj, "priority"),
        label: requireString(obj, "label"),
        pattern: requireString(obj, "pattern"),
        rules: rules.map(ruleFromValue),
      });
    } catch (error) {
      throw new Error(
        `${path}:${lineNo}: bad bank entry: ${(error as Error).message}`
      );
    }
  }
  return { provenance, entries };
}

// ------------------------------------------------------------ detections

/** One extracted date occurrence as stored on disk. */
export interface DetectionRecord {
  pageId: string;
  span: [number, number];
  text: string;
  entry: number;
  label: string;
  parts: DateParts | null;
  range: TimestampRange | null;
  lines: [number, number] | null;
}

/**
 * Read a detections file; returns the bank name from the header along
 * with the decoded records.
 */
export function readDetections(path: string): {
  bank: string;
  detections: DetectionRecord[];
} {
  const { header, lines } = readBody(path, "detections");
  const bank = header.bank;
  if (typeof bank !== "string") {
    throw new Error(`${path}: detections header needs a bank name`);
  }
  const detections: DetectionRecord[] = [];
  for (const [lineNo, line] of lines) {
    try {
      const obj = asObject(JSON.parse(line), "record");
      const span = spanFromValue(obj.span);
      if (span === null) {
        throw new Error("span must be a two-integer pair");
      }
      const parts = partsFromValue(obj.parts);
      if (parts !== null) {
        validateParts(parts);
      }
      const start = obj.start ?? null;
      const end = obj.end ?? null;
      let range: TimestampRange | null = null;
      if (start !== null || end !== null) {
        if (
          typeof start !== "number" ||
          typeof end !== "number" ||
          !Number.isInteger(start) ||
          !Number.isInteger(end)
        ) {
          throw new Error("start and end must both be integers or both null");
        }
        range = timestampRange(start, end);
      }
      detections.push({
        pageId: requireString(obj, "page_id"),
        span,
        text: requireString(obj, "text"),
        entry: requireInt(obj, "entry"),
        label: requireString(obj, "label"),
        parts,
        range,
        lines: spanFromValue(obj.lines, "lines"),
      });
    } catch (error) {
      throw new Error(
        `${path}:${lineNo}: bad detection: ${(error as Error).message}`
      );
    }
  }
  return { bank, detections };
}

// ----------------------------------------------------------------- pages

/** One page of scanner-ready text. */
export interface PageRecord {
  pageId: string;
  text: string;
}

/** Read a pages file. */
export function readPages(path: string): PageRecord[] {
  const { lines } = readBody(path, "pages");
  const pages: PageRecord[] = [];
  for (const [lineNo, line] of lines) {
    try {
      const obj = asObject(JSON.parse(line), "record");
      pages.push({
        pageId: requireString(obj, "page_id"),
        text: requireString(obj, "text"),
      });
    } catch (error) {
      throw new Error(
        `${path}:${lineNo}: bad page record: ${(error as Error).message}`
      );
    }
  }
  return pages;
}

// ----------------------------------------------------------- annotations

/**
 * One ground-truth record as stored on disk.
 *
 * Dates are stored twice over: as civil parts and as the timestamp
 * pair, so a loader can cross-check one against the other. Parts may
 * be absent; semantic screening happens at load time, not here.
 */
export interface AnnotationRecord {
  pageId: string;
  span: [number, number] | null;
  day: number | PartPair | null;
  suffix: string | null;
  month: number | PartPair | null;
  year: number | PartPair | null;
  start: number;
  end: number;
}

/**
 * (line number, raw line) per record, after header validation.
 */
export function iterAnnotationLines(path: string): Array<[number, string]> {
  return readBody(path, "annotations").lines;
}

/** Decode one annotation line; throws when it is malformed. */
export function parseAnnotationRecord(line: string): AnnotationRecord {
  let value: unknown;
  try {
    value = JSON.parse(line);
  } catch (error) {
    throw new Error(`not valid JSON: ${(error as Error).message}`);
  }
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    throw new Error("record must be an object");
  }
  const obj = value as JsonObject;
  const pageId = obj.page_id;
  if (typeof pageId !== "string") {
    throw new Error("page_id must be a string");
  }
  const start = obj.start;
  const end = obj.end;
  if (
    typeof start !== "number" ||
    typeof end !== "number" ||
    !Number.isInteger(start) ||
    !Number.isInteger(end)
  ) {
    throw new Error("start and end must be integers");
  }
  const suffix = obj.suffix ?? null;
  if (suffix !== null && typeof suffix !== "string") {
    throw new Error("suffix must be a string");
  }
  return {
    pageId,
    span: spanFromValue(obj.span),
    day: pairOrInt(obj.day, "day"),
    suffix,
    month: pairOrInt(obj.month, "month"),
    year: pairOrInt(obj.year, "year"),
    start,
    end,
  };
}
