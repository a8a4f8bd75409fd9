/**
 * Client-side transcription settings.
 *
 * Only the endpoint may come from the environment; every other knob is
 * code-supplied, so a stray variable can never silently change retry
 * or concurrency behavior.
 */

export const ENDPOINT_ENV_VAR = "DATESPAN_TRANSCRIPTION_ENDPOINT";

export interface TranscriptionConfig {
  endpoint: string;
  timeoutSeconds: number;
  retries: number;
  maxInFlight: number;
}

export const DEFAULT_CONFIG: TranscriptionConfig = {
  endpoint: "",
  timeoutSeconds: 30.0,
  retries: 2,
  maxInFlight: 4,
};

export interface ConfigFromEnvOptions {
  /** Environment map to read; defaults to process.env. */
  env?: Record<string, string | undefined>;
  /** Explicit settings; an explicit endpoint beats the environment. */
  overrides?: Partial<TranscriptionConfig>;
}

/**
 * Build a config, taking the endpoint from the environment unless an
 * explicit one is given.
 */
export function configFromEnv(
  options: ConfigFromEnvOptions = {}
): TranscriptionConfig {
  const env = options.env ?? process.env;
  const overrides = options.overrides ?? {};
  const endpoint = overrides.endpoint ?? env[ENDPOINT_ENV_VAR] ?? "";
  return {
    ...DEFAULT_CONFIG,
    ...overrides,
    endpoint,
  };
}
