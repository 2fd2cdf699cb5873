/** Shared fixtures and stubs for the component tests. */

import type {
  CardInfo,
  DashboardDoc,
  SaveResult,
  SchemaDoc,
  SummaryDoc,
} from "../src/types.js";

import cardsFixture from "./fixtures/cards.json";
import dashboardFixture from "./fixtures/dashboard-day.json";
import memberDashboardFixture from "./fixtures/dashboard-member-403.json";
import schemaFixture from "./fixtures/schema.json";
import summaryFixture from "./fixtures/summary-microtransactions.json";

export const schemaDoc = schemaFixture.body as SchemaDoc;
export const cardsDoc = (cardsFixture.body as { cards: CardInfo[] }).cards;
export const summaryDoc = summaryFixture.body as SummaryDoc;
export const dashboardDoc = dashboardFixture.body as unknown as DashboardDoc;
export const memberDashboardError = memberDashboardFixture as {
  status: number;
  body: { code: string; message: string };
};

export const CANONICAL = [
  "anger",
  "disgust",
  "fear",
  "anxiety",
  "sadness",
  "happiness",
  "relaxation",
  "desire",
] as const;

/** A fetch stub that records calls and replays canned responses. */
export function fakeFetch(
  handler: (url: string, init: RequestInit) => { status: number; body: unknown },
) {
  const calls: Array<{ url: string; init: RequestInit }> = [];
  const fetchFn = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    calls.push({ url, init: init ?? {} });
    const { status, body } = handler(url, init ?? {});
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  }) as typeof fetch;
  return { fetchFn, calls };
}

/** Move a slider the way a user would: set the value, fire "input". */
export function drag(panelRoot: HTMLElement, emotion: string, value: number | string): void {
  const slider = panelRoot.querySelector<HTMLInputElement>(`#slider-${emotion}`);
  if (!slider) throw new Error(`no slider for ${emotion}`);
  slider.value = String(value);
  slider.dispatchEvent(new Event("input", { bubbles: true }));
}

export function saveResult(count: number): SaveResult {
  return { message: `Saved ${count} reaction(s).`, records: [] };
}

/** Let queued promise callbacks run. */
export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
