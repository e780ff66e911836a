/**
 * Thin fetch client for the game service.
 *
 * Every non-2xx response with a structured body becomes an ApiError so
 * callers can surface the service's own wording verbatim.
 */

import type {
  EngineReply,
  ErrorBody,
  EvalReply,
  FamilyDetail,
  FamilySummary,
  InfeasibleReply,
  NewGameSpec,
  SessionBody,
  SessionDetail,
  TranscriptBody,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
    public readonly reason?: string,
    public readonly protecting?: number[],
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (response.ok) {
    return (await response.json()) as T;
  }
  let body: ErrorBody | null = null;
  try {
    body = (await response.json()) as ErrorBody;
  } catch {
    // non-JSON error page; fall through to the generic error below
  }
  if (body && body.error) {
    throw new ApiError(
      response.status,
      body.error.code,
      body.error.message,
      body.error.reason,
      body.error.protecting,
    );
  }
  throw new ApiError(response.status, "http_error", `HTTP ${response.status}`);
}

function post<T>(url: string, payload: unknown): Promise<T> {
  return request<T>(url, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
  });
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  createSession(spec: NewGameSpec): Promise<SessionDetail> {
    return post(`${this.base}/api/session`, spec);
  }

  getSession(id: string): Promise<SessionDetail> {
    return request(`${this.base}/api/session/${id}`);
  }

  getTranscript(id: string): Promise<TranscriptBody> {
    return request(`${this.base}/api/session/${id}/transcript`);
  }

  submitMove(id: string, move: number | "pass"): Promise<SessionBody> {
    const payload = move === "pass" ? { pass: true } : { vertex: move };
    return post(`${this.base}/api/session/${id}/move`, payload);
  }

  engineMove(id: string): Promise<EngineReply | InfeasibleReply> {
    return post(`${this.base}/api/session/${id}/engine`, {});
  }

  evaluate(id: string): Promise<EvalReply | InfeasibleReply> {
    return request(`${this.base}/api/session/${id}/eval`);
  }

  listFamilies(): Promise<{ families: FamilySummary[] }> {
    return request(`${this.base}/api/families`);
  }

  getFamily(
    name: string,
    params: Record<string, number>,
  ): Promise<FamilyDetail> {
    const query = new URLSearchParams(
      Object.entries(params).map(([key, value]) => [key, String(value)]),
    );
    const suffix = query.size > 0 ? `?${query}` : "";
    return request(`${this.base}/api/families/${name}${suffix}`);
  }
}
