// Thin client for the search service. All filtering happens server-side;
// the UI only ever renders what these calls return.

import type {
  CompareResponse,
  ErrorEnvelope,
  FilterConfigTree,
  SaveResponse,
  SavedSnapshot,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class SearchClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async compare(
    contributions: string[],
    filter: FilterConfigTree,
  ): Promise<CompareResponse> {
    return this.post("/compare", { contributions, filter });
  }

  async autocomplete(
    contributions: string[],
    property: string,
    prefix: string,
    limit = 10,
  ): Promise<string[]> {
    return this.post("/autocomplete", { contributions, property, prefix, limit });
  }

  async save(
    contributions: string[],
    filter: FilterConfigTree,
  ): Promise<SaveResponse> {
    return this.post("/saved", { contributions, filter });
  }

  async getSaved(id: string): Promise<SavedSnapshot> {
    const response = await this.fetchFn(`${this.baseUrl}/saved/${id}`);
    return this.unwrap(response);
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return this.unwrap(response);
  }

  private async unwrap<T>(response: Response): Promise<T> {
    if (response.ok) {
      return (await response.json()) as T;
    }
    let envelope: ErrorEnvelope | null = null;
    try {
      envelope = (await response.json()) as ErrorEnvelope;
    } catch {
      // non-JSON failure body; fall through to the generic error
    }
    if (envelope && envelope.error) {
      throw new ApiError(envelope.error.code, envelope.error.message, response.status);
    }
    throw new ApiError("internal", `request failed (${response.status})`, response.status);
  }
}
