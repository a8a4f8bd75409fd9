/**
 * The transcription wire contract and its retry policy.
 *
 * A transcription backend receives image bytes plus a fixed prompt and
 * answers with the text it read. Backends live behind the one-method
 * `TranscriptionClient` interface; the bundled mock answers from canned
 * fixtures keyed by image hash, which keeps every test hermetic.
 * Transient failures (timeouts, backend errors) are retried up to a
 * budget; a malformed response is never retried, because sending the
 * same bytes again cannot fix a backend that answers garbage.
 */

import { createHash } from "node:crypto";

export const TRANSCRIPTION_PROMPT = "what text is in this image?";

/** One round trip's worth of input: the image and the fixed prompt. */
export interface TranscriptionRequest {
  imageBytes: Uint8Array;
  prompt: string;
}

export interface TranscriptionResponse {
  text: string;
  backend: string;
}

/** Base for transcription failures; `attempts` counts tries made. */
export class TranscriptionError extends Error {
  attempts: number;

  constructor(message = "", attempts = 1) {
    super(message);
    this.name = new.target.name;
    this.attempts = attempts;
  }
}

/** The backend did not answer in time. */
export class TranscriptionTimeout extends TranscriptionError {}

/** The backend answered with a failure. */
export class TranscriptionBackendError extends TranscriptionError {}

/** The backend answered with something that is not a transcription. */
export class MalformedResponseError extends TranscriptionError {}

/**
 * One round trip of the wire contract: request in, response out.
 *
 * Implementations reject with TranscriptionTimeout,
 * TranscriptionBackendError, or MalformedResponseError for a single
 * failed exchange; retry policy belongs to the caller.
 */
export interface TranscriptionClient {
  request(request: TranscriptionRequest): Promise<TranscriptionResponse>;
}

/** Key used to look up mock fixtures for an image. */
export function imageDigest(imageBytes: Uint8Array): string {
  return createHash("sha256").update(imageBytes).digest("hex");
}

export interface MockClientOptions {
  /** Canned transcriptions keyed by image digest. */
  fixtures?: Record<string, string>;
  /** Simulate a dead endpoint: every call times out. */
  unreachable?: boolean;
  /** Make the first n calls fail with a backend error. */
  failTimes?: number;
  /** Make every call come back as garbage. */
  malformed?: boolean;
}

/** Canned transcriptions keyed by image hash, for hermetic tests. */
export class MockTranscriptionClient implements TranscriptionClient {
  readonly backend = "mock";
  fixtures: Map<string, string>;
  unreachable: boolean;
  remainingFailures: number;
  malformed: boolean;
  calls = 0;

  constructor(options: MockClientOptions = {}) {
    this.fixtures = new Map(Object.entries(options.fixtures ?? {}));
    this.unreachable = options.unreachable ?? false;
    this.remainingFailures = options.failTimes ?? 0;
    this.malformed = options.malformed ?? false;
  }

  /** Register `text` as the transcription of `imageBytes`; returns the key. */
  addFixture(imageBytes: Uint8Array, text: string): string {
    const key = imageDigest(imageBytes);
    this.fixtures.set(key, text);
    return key;
  }

  async request(request: TranscriptionRequest): Promise<TranscriptionResponse> {
    this.calls += 1;
    if (this.unreachable) {
      throw new TranscriptionTimeout("endpoint unreachable");
    }
    if (this.remainingFailures > 0) {
      this.remainingFailures -= 1;
      throw new TranscriptionBackendError("transient backend failure");
    }
    if (this.malformed) {
      throw new MalformedResponseError("response carried no text");
    }
    const key = imageDigest(request.imageBytes);
    const text = this.fixtures.get(key);
    if (text === undefined) {
      throw new TranscriptionBackendError(
        `no fixture for image ${key.slice(0, 12)}`
      );
    }
    return { text, backend: this.backend };
  }
}

export interface TranscribeOptions {
  /** Extra attempts allowed after the first one (default 2). */
  retries?: number;
  prompt?: string;
}

/**
 * One page through the client, retrying transient failures.
 *
 * Timeouts and backend errors are retried up to `retries` extra
 * attempts; a malformed response is never retried. The thrown error
 * carries the total attempt count.
 */
export async function transcribe(
  imageBytes: Uint8Array,
  client: TranscriptionClient,
  options: TranscribeOptions = {}
): Promise<string> {
  const retries = options.retries ?? 2;
  const request: TranscriptionRequest = {
    imageBytes,
    prompt: options.prompt ?? TRANSCRIPTION_PROMPT,
  };
  let attempts = 0;
  for (;;) {
    attempts += 1;
    let response: TranscriptionResponse;
    try {
      response = await client.request(request);
    } catch (error) {
      if (error instanceof MalformedResponseError) {
        throw new MalformedResponseError(error.message, attempts);
      }
      if (error instanceof TranscriptionTimeout) {
        if (attempts > retries) {
          throw new TranscriptionTimeout(error.message, attempts);
        }
        continue;
      }
      if (error instanceof TranscriptionBackendError) {
        if (attempts > retries) {
          throw new TranscriptionBackendError(error.message, attempts);
        }
        continue;
      }
      throw error;
    }
    if (typeof response.text !== "string") {
      throw new MalformedResponseError("response text is not a string", attempts);
    }
    return response.text;
  }
}

export interface TranscribePagesOptions {
  retries?: number;
  /** Concurrent request ceiling (default 4). */
  maxInFlight?: number;
}

/**
 * Transcribe many pages, up to `maxInFlight` concurrently.
 *
 * `pages` maps page id to image bytes (or yields such pairs). Results
 * come back keyed by page id, so completion order never matters.
 */
export async function transcribePages(
  pages: Map<string, Uint8Array> | Iterable<[string, Uint8Array]>,
  client: TranscriptionClient,
  options: TranscribePagesOptions = {}
): Promise<Map<string, string>> {
  const maxInFlight = options.maxInFlight ?? 4;
  if (maxInFlight < 1) {
    throw new Error("maxInFlight must be positive");
  }
  const items = pages instanceof Map ? [...pages.entries()] : [...pages];
  const results = new Map<string, string>();
  let next = 0;
  const worker = async (): Promise<void> => {
    for (;;) {
      const index = next;
      next += 1;
      if (index >= items.length) {
        return;
      }
      const [pageId, imageBytes] = items[index] as [string, Uint8Array];
      const text = await transcribe(imageBytes, client, {
        retries: options.retries,
      });
      results.set(pageId, text);
    }
  };
  const workers = Array.from(
    { length: Math.min(maxInFlight, items.length) },
    () => worker()
  );
  await Promise.all(workers);
  return results;
}
