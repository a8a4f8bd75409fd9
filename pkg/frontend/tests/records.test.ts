import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { rangeOf, sameRange } from "../src/civil.js";
import {
  readBank,
  readCorpus,
  readDetections,
  readPages,
} from "../src/records.js";

const fixture = (name: string): string =>
  fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));

const tmpFile = (content: string): string => {
  const dir = mkdtempSync(join(tmpdir(), "records-"));
  const path = join(dir, "artifact.jsonl");
  writeFileSync(path, content, "utf-8");
  return path;
};

describe("readCorpus", () => {
  const records = readCorpus(fixture("corpus.jsonl"));

  it("decodes every record of every family", () => {
    expect(records).toHaveLength(48);
    const families = new Set(records.map((r) => r.family));
    expect(families).toEqual(
      new Set(["monthname-dayless", "numeric-short", "longform-ordinal", "day-range"])
    );
  });

  it("stores ranges that agree with recomputation from the parts", () => {
    for (const record of records) {
      expect(sameRange(rangeOf(record.parts), record.range)).toBe(true);
    }
  });

  it("carries the rendered text verbatim", () => {
    const texts = records.map((r) => r.text);
    expect(texts).toContain("Jun 1970");
    expect(texts.every((t) => t.length > 0)).toBe(true);
  });
});

describe("readBank", () => {
  const bank = readBank(fixture("bank.jsonl"));

  it("reads the provenance and one entry per pattern", () => {
    expect(bank.provenance).toBe("synthesized");
    expect(bank.entries).toHaveLength(4);
    expect(bank.entries.map((e) => e.priority)).toEqual([0, 1, 2, 3]);
  });

  it("carries patterns in a dialect this runtime can compile", () => {
    for (const entry of bank.entries) {
      expect(() => new RegExp(entry.pattern)).not.toThrow();
    }
  });

  it("decodes decomposition rules for known parts", () => {
    for (const entry of bank.entries) {
      expect(entry.rules.length).toBeGreaterThan(0);
      for (const rule of entry.rules) {
        expect(["day", "suffix", "month", "year"]).toContain(rule.part);
        expect(rule.ops.length).toBeGreaterThan(0);
      }
    }
  });
});

describe("readPages", () => {
  it("reads every page with its id", () => {
    const pages = readPages(fixture("pages.jsonl"));
    expect(pages).toHaveLength(10);
    expect(pages[0]?.pageId).toBe("noise-00000");
    expect(pages.every((p) => p.text.length > 0)).toBe(true);
  });
});

describe("readDetections", () => {
  it("reads each bank's output with its header name", () => {
    const counts: Record<string, number> = {
      community: 50,
      bespoke: 65,
      synthesized: 60,
    };
    for (const [name, expected] of Object.entries(counts)) {
      const { bank, detections } = readDetections(
        fixture(`detections-${name}.jsonl`)
      );
      expect(bank).toBe(name);
      expect(detections).toHaveLength(expected);
    }
  });

  it("only names pages that exist", () => {
    const pageIds = new Set(
      readPages(fixture("pages.jsonl")).map((p) => p.pageId)
    );
    const { detections } = readDetections(fixture("detections-synthesized.jsonl"));
    for (const detection of detections) {
      expect(pageIds.has(detection.pageId)).toBe(true);
    }
  });

  it("stores ranges that agree with recomputation from the parts", () => {
    const { detections } = readDetections(fixture("detections-synthesized.jsonl"));
    for (const detection of detections) {
      expect(detection.parts).not.toBeNull();
      expect(detection.range).not.toBeNull();
      expect(sameRange(rangeOf(detection.parts!), detection.range!)).toBe(true);
    }
  });

  it("tolerates locate-only records without parts or range", () => {
    const { detections } = readDetections(fixture("detections-community.jsonl"));
    expect(detections.length).toBeGreaterThan(0);
    for (const detection of detections) {
      expect(detection.span[1]).toBeGreaterThan(detection.span[0]);
    }
  });
});

describe("header validation", () => {
  it("rejects a missing header", () => {
    expect(() => readPages(tmpFile(""))).toThrow(/missing header line/);
  });

  it("rejects an unreadable header", () => {
    expect(() => readPages(tmpFile("not json\n"))).toThrow(/unreadable header/);
  });

  it("rejects the wrong format name", () => {
    const path = tmpFile('{"format":"corpus","version":1}\n');
    expect(() => readPages(path)).toThrow(/expected a 'pages' file/);
  });

  it("rejects an unsupported version", () => {
    const path = tmpFile('{"format":"pages","version":99}\n');
    expect(() => readPages(path)).toThrow(/unsupported version 99/);
  });

  it("requires a provenance string on banks", () => {
    const path = tmpFile('{"format":"bank","version":1}\n');
    expect(() => readBank(path)).toThrow(/needs a provenance string/);
  });

  it("requires a bank name on detections", () => {
    const path = tmpFile('{"format":"detections","version":1}\n');
    expect(() => readDetections(path)).toThrow(/needs a bank name/);
  });
});

describe("record validation", () => {
  it("names the line of a malformed record", () => {
    const path = tmpFile(
      '{"format":"pages","version":1}\n{"page_id":"p","text":"ok"}\ngarbage\n'
    );
    expect(() => readPages(path)).toThrow(/artifact\.jsonl:3: bad page record/);
  });

  it("skips blank lines without losing line numbers", () => {
    const path = tmpFile(
      '{"format":"pages","version":1}\n\n{"page_id":"p","text":"ok"}\n'
    );
    expect(readPages(path)).toEqual([{ pageId: "p", text: "ok" }]);
  });

  it("rejects corpus records whose interval is not midnight-aligned", () => {
    const path = tmpFile(
      '{"format":"corpus","version":1}\n' +
        '{"text":"Jun 1970","family":"f","parts":{"day":null,"suffix":null,"month":6,"year":1970},"start":1,"end":86400}\n'
    );
    expect(() => readCorpus(path)).toThrow(/bad corpus record.*UTC midnights/);
  });

  it("rejects corpus records with malformed parts", () => {
    const path = tmpFile(
      '{"format":"corpus","version":1}\n' +
        '{"text":"x","family":"f","parts":{"day":[9,3],"suffix":null,"month":6,"year":1970},"start":0,"end":86400}\n'
    );
    expect(() => readCorpus(path)).toThrow(/low to high/);
  });

  it("rejects detections with a half-null interval", () => {
    const path = tmpFile(
      '{"format":"detections","version":1,"bank":"b"}\n' +
        '{"page_id":"p","span":[0,4],"text":"x","entry":0,"label":"l","parts":null,"start":0,"end":null,"lines":null}\n'
    );
    expect(() => readDetections(path)).toThrow(/both be integers or both null/);
  });

  it("throws for a missing file", () => {
    expect(() => readPages("/nonexistent/pages.jsonl")).toThrow(/ENOENT/);
  });
});
