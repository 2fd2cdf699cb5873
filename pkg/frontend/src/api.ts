/** Thin typed client for the /v1 HTTP API. */

import type {
  CardInfo,
  DashboardDoc,
  DashboardQuery,
  SaveResult,
  SchemaDoc,
  SummaryDoc,
} from "./types.js";

/** A non-2xx response, carrying the service's {code, message} body. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface RuntimeConfig {
  apiBase: string;
}

/**
 * Read the deploy-time config document (`window.EMOTRACK_CONFIG`,
 * typically set by a config.js next to the bundle). Defaults to
 * same-origin requests.
 */
export function resolveRuntimeConfig(win: unknown = globalThis): RuntimeConfig {
  const given = (win as { EMOTRACK_CONFIG?: { apiBase?: unknown } }).EMOTRACK_CONFIG;
  const base = typeof given?.apiBase === "string" ? given.apiBase : "";
  return { apiBase: base.replace(/\/+$/, "") };
}

export interface ClientOptions {
  baseUrl?: string;
  token: string;
  /** Injectable for tests; defaults to the global fetch. */
  fetchFn?: typeof fetch;
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly token: string;
  private readonly fetchFn: typeof fetch;

  constructor(options: ClientOptions) {
    this.baseUrl = (options.baseUrl ?? "").replace(/\/+$/, "");
    this.token = options.token;
    this.fetchFn = options.fetchFn ?? fetch.bind(globalThis);
  }

  schema(): Promise<SchemaDoc> {
    return this.request("GET", "/v1/schema");
  }

  cards(board: string): Promise<CardInfo[]> {
    return this.request<{ cards: CardInfo[] }>(
      "GET",
      `/v1/boards/${encodeURIComponent(board)}/cards`,
    ).then((body) => body.cards);
  }

  saveReactions(
    board: string,
    card: string,
    ratings: Record<string, number>,
  ): Promise<SaveResult> {
    const path =
      `/v1/boards/${encodeURIComponent(board)}` +
      `/cards/${encodeURIComponent(card)}/reactions`;
    return this.request("POST", path, { body: { ratings } });
  }

  summary(board: string, card: string): Promise<SummaryDoc> {
    const path =
      `/v1/boards/${encodeURIComponent(board)}` +
      `/cards/${encodeURIComponent(card)}/summary`;
    return this.request("GET", path);
  }

  dashboard(
    board: string,
    query: DashboardQuery = {},
    signal?: AbortSignal,
  ): Promise<DashboardDoc> {
    const params = new URLSearchParams();
    if (query.granularity) params.set("granularity", query.granularity);
    for (const emotion of query.emotions ?? []) params.append("emotion", emotion);
    if (query.member) params.set("member", query.member);
    if (query.from) params.set("from", query.from);
    if (query.to) params.set("to", query.to);
    const qs = params.toString();
    const path = `/v1/boards/${encodeURIComponent(board)}/dashboard${qs ? `?${qs}` : ""}`;
    return this.request("GET", path, { signal });
  }

  private async request<T>(
    method: string,
    path: string,
    options: { body?: unknown; signal?: AbortSignal } = {},
  ): Promise<T> {
    const headers: Record<string, string> = { Authorization: `Bearer ${this.token}` };
    const init: RequestInit = { method, headers, signal: options.signal ?? null };
    if (options.body !== undefined) {
      headers["Content-Type"] = "application/json";
      init.body = JSON.stringify(options.body);
    }

    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") throw err;
      throw new ApiError(0, "network", `cannot reach the service: ${String(err)}`);
    }

    if (!response.ok) {
      let code = "internal";
      let message = `request failed with status ${response.status}`;
      try {
        const body = (await response.json()) as { code?: string; message?: string };
        if (typeof body.code === "string") code = body.code;
        if (typeof body.message === "string") message = body.message;
      } catch {
        // non-JSON error body; keep the generic message
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }
}

/**
 * Best-effort decode of a token's claims (display only — the service
 * is the one that verifies signatures). Returns null when the token
 * does not look like ours.
 */
export function decodeClaims(token: string): { member_id: string; board_id: string } | null {
  const parts = token.split(".");
  if (parts.length !== 3) return null;
  try {
    const b64 = parts[1].replace(/-/g, "+").replace(/_/g, "/");
    const pad = b64 + "=".repeat((4 - (b64.length % 4)) % 4);
    const claims = JSON.parse(atob(pad)) as Record<string, unknown>;
    if (typeof claims.member_id === "string" && typeof claims.board_id === "string") {
      return { member_id: claims.member_id, board_id: claims.board_id };
    }
  } catch {
    // fall through
  }
  return null;
}
