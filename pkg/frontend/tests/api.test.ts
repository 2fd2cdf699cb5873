import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, decodeClaims, resolveRuntimeConfig } from "../src/api.js";
import { dashboardDoc, fakeFetch, schemaDoc } from "./helpers.js";

function client(handler: Parameters<typeof fakeFetch>[0], baseUrl = "https://svc") {
  const { fetchFn, calls } = fakeFetch(handler);
  return { api: new ApiClient({ baseUrl, token: "tok-123", fetchFn }), calls };
}

describe("ApiClient", () => {
  it("sends the bearer token on every request", async () => {
    const { api, calls } = client(() => ({ status: 200, body: schemaDoc }));
    await api.schema();
    const headers = calls[0].init.headers as Record<string, string>;
    expect(headers.Authorization).toBe("Bearer tok-123");
  });

  it("POSTs reactions as a {ratings} JSON body", async () => {
    const { api, calls } = client(() => ({
      status: 201,
      body: { message: "Saved 2 reaction(s).", records: [] },
    }));
    await api.saveReactions("b1", "c1", { anxiety: 4, fear: 3 });
    expect(calls[0].url).toBe("https://svc/v1/boards/b1/cards/c1/reactions");
    expect(calls[0].init.method).toBe("POST");
    expect(JSON.parse(String(calls[0].init.body))).toEqual({
      ratings: { anxiety: 4, fear: 3 },
    });
  });

  it("builds dashboard queries with repeated emotion params", async () => {
    const { api, calls } = client(() => ({ status: 200, body: dashboardDoc }));
    await api.dashboard("b1", {
      granularity: "week",
      emotions: ["anxiety", "fear"],
      member: "kashumi",
      from: "2023-05-15T00:00:00.000Z",
    });
    const url = new URL(calls[0].url);
    expect(url.pathname).toBe("/v1/boards/b1/dashboard");
    expect(url.searchParams.get("granularity")).toBe("week");
    expect(url.searchParams.getAll("emotion")).toEqual(["anxiety", "fear"]);
    expect(url.searchParams.get("member")).toBe("kashumi");
    expect(url.searchParams.get("from")).toBe("2023-05-15T00:00:00.000Z");
  });

  it("escapes path segments", async () => {
    const { api, calls } = client(() => ({ status: 200, body: { cards: [] } }));
    await api.cards("a/b c");
    expect(calls[0].url).toBe("https://svc/v1/boards/a%2Fb%20c/cards");
  });

  it("turns error bodies into ApiError with the service's code", async () => {
    const { api } = client(() => ({
      status: 403,
      body: { code: "not_manager", message: "managers only" },
    }));
    const err = await api.dashboard("b1").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(403);
    expect((err as ApiError).code).toBe("not_manager");
    expect((err as ApiError).message).toBe("managers only");
  });

  it("wraps network failures as a status-0 ApiError", async () => {
    const api = new ApiClient({
      baseUrl: "https://svc",
      token: "t",
      fetchFn: (() => Promise.reject(new TypeError("dns"))) as typeof fetch,
    });
    const err = await api.schema().catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(0);
    expect((err as ApiError).code).toBe("network");
  });
});

describe("runtime config", () => {
  it("defaults to same-origin requests", () => {
    expect(resolveRuntimeConfig({})).toEqual({ apiBase: "" });
  });

  it("reads window.EMOTRACK_CONFIG and trims trailing slashes", () => {
    const win = { EMOTRACK_CONFIG: { apiBase: "https://svc:8000/" } };
    expect(resolveRuntimeConfig(win)).toEqual({ apiBase: "https://svc:8000" });
  });
});

describe("decodeClaims", () => {
  const encode = (obj: unknown) =>
    btoa(JSON.stringify(obj)).replace(/\+/g, "-").replace(/\//g, "_").replace(/=+$/, "");

  it("reads member and board out of a well-formed token", () => {
    const token = `${encode({ alg: "HS256" })}.${encode({
      member_id: "kashumi",
      board_id: "demo-board",
    })}.sig`;
    expect(decodeClaims(token)).toEqual({ member_id: "kashumi", board_id: "demo-board" });
  });

  it("returns null for junk", () => {
    expect(decodeClaims("")).toBeNull();
    expect(decodeClaims("one.two")).toBeNull();
    expect(decodeClaims("!!!.@@@.###")).toBeNull();
    expect(decodeClaims(`${encode({})}.${encode({ member_id: 5 })}.sig`)).toBeNull();
  });
});
