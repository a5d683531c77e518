import type { IdentifyResponse } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly code: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

// Mirror of the server-side validation so obviously bad input never
// leaves the browser.
export function validateEmail(raw: string): string | null {
  const trimmed = raw.trim();
  if (!trimmed) return "Enter an e-mail address.";
  if (/\s/.test(trimmed)) return "An e-mail address cannot contain spaces.";
  const parts = trimmed.split("@");
  if (parts.length !== 2 || !parts[0] || !parts[1]) {
    return "That does not look like an e-mail address.";
  }
  if (!parts[1].includes(".")) return "The domain part needs a dot.";
  return null;
}

export async function fetchIdentify(
  email: string,
  options: { eps?: number; signal?: AbortSignal; fetchFn?: FetchLike } = {},
): Promise<IdentifyResponse> {
  const fetchFn = options.fetchFn ?? ((input, init) => fetch(input, init));
  const params = new URLSearchParams({ email });
  if (options.eps !== undefined) params.set("eps", String(options.eps));

  let response: Response;
  try {
    response = await fetchFn(`/api/v1/identify?${params.toString()}`, {
      signal: options.signal,
    });
  } catch (error) {
    if (error instanceof DOMException && error.name === "AbortError") throw error;
    throw new ApiError("The service could not be reached.", "network", 0);
  }

  if (!response.ok) {
    let code = "server_error";
    try {
      const body = (await response.json()) as { error?: string };
      if (body.error) code = body.error;
    } catch {
      // non-JSON error body; keep the generic code
    }
    const message =
      code === "invalid_email"
        ? "The server rejected this e-mail address."
        : code === "all_providers_failed"
          ? "Every provider failed; try again later."
          : `Request failed (${response.status}).`;
    throw new ApiError(message, code, response.status);
  }
  return (await response.json()) as IdentifyResponse;
}
