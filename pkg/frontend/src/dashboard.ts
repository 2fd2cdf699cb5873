/** Manager dashboard: averages first, then the chart; filters re-query. */

import { ApiError } from "./api.js";
import { buildChart } from "./chart.js";
import type {
  CardInfo,
  DashboardDoc,
  DashboardQuery,
  EmotionKind,
  Granularity,
  SchemaDoc,
  SummaryDoc,
} from "./types.js";

export interface DashboardApi {
  cards(board: string): Promise<CardInfo[]>;
  summary(board: string, card: string): Promise<SummaryDoc>;
  dashboard(
    board: string,
    query?: DashboardQuery,
    signal?: AbortSignal,
  ): Promise<DashboardDoc>;
}

export interface DashboardOptions {
  api: DashboardApi;
  schema: SchemaDoc;
  board: string;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** The API's serialized value, verbatim; dashes for absent. */
function cell(value: number | string | null | undefined): string {
  return value === null || value === undefined ? "–" : String(value);
}

export class Dashboard {
  readonly element: HTMLElement;

  granularity: Granularity = "day";
  readonly visible: Set<EmotionKind>;
  member = "";
  from = "";
  to = "";

  private readonly options: DashboardOptions;
  private readonly filters: HTMLElement;
  private readonly averages: HTMLElement;
  private readonly chartWrap: HTMLElement;
  private readonly boardStats: HTMLElement;
  private cardSelect: HTMLSelectElement | null = null;
  private cards: CardInfo[] = [];
  private lastDoc: DashboardDoc | null = null;
  private seq = 0;
  private controller: AbortController | null = null;

  constructor(options: DashboardOptions) {
    this.options = options;
    this.visible = new Set(options.schema.emotions.map((d) => d.kind));

    this.element = el("section", "dashboard");
    this.filters = el("div", "filters");
    this.averages = el("div", "averages");
    this.boardStats = el("div", "board-stats");
    this.chartWrap = el("div", "chart-wrap");
    // averages before the chart, always visible alongside it
    this.element.append(this.filters, this.averages, this.boardStats, this.chartWrap);
    this.buildFilters();
  }

  /** Initial load; also called by every filter change. */
  async load(): Promise<void> {
    const seq = ++this.seq;
    this.controller?.abort();
    this.controller = new AbortController();

    let doc: DashboardDoc | null = null;
    if (this.visible.size > 0) {
      const query: DashboardQuery = { granularity: this.granularity };
      if (this.visible.size < this.options.schema.emotions.length) {
        query.emotions = [...this.visible];
      }
      if (this.member) query.member = this.member;
      if (this.from) query.from = this.from;
      if (this.to) query.to = this.to;
      try {
        doc = await this.options.api.dashboard(this.options.board, query, this.controller.signal);
      } catch (err) {
        if (err instanceof DOMException && err.name === "AbortError") return;
        if (seq !== this.seq) return; // superseded; a newer load owns the UI
        if (err instanceof ApiError && err.status === 403) {
          this.renderManagersOnly(err.message);
          return;
        }
        this.renderError(err);
        return;
      }
    }
    if (seq !== this.seq) return;

    this.lastDoc = doc;
    this.renderChart();
    this.renderBoardStats();

    if (this.cards.length === 0) {
      try {
        this.cards = await this.options.api.cards(this.options.board);
      } catch {
        this.cards = [];
      }
      if (seq !== this.seq) return;
      this.buildCardSelect();
    }
    if (this.cards.length > 0) {
      await this.loadSummary(this.cardSelect?.value ?? this.cards[0].card_id);
    }
  }

  async loadSummary(cardId: string): Promise<void> {
    let summary: SummaryDoc;
    try {
      summary = await this.options.api.summary(this.options.board, cardId);
    } catch (err) {
      this.renderError(err);
      return;
    }
    this.renderAverages(summary);
  }

  private buildFilters(): void {
    const granularity = el("select", "granularity") as HTMLSelectElement;
    for (const value of ["hour", "day", "week"] as const) {
      const option = el("option", undefined, value);
      option.value = value;
      option.selected = value === this.granularity;
      granularity.append(option);
    }
    granularity.addEventListener("change", () => {
      this.granularity = granularity.value as Granularity;
      void this.load();
    });
    this.filters.append(el("label", undefined, "granularity "), granularity);

    const toggles = el("span", "emotion-toggles");
    for (const descriptor of this.options.schema.emotions) {
      const label = el("label", "toggle");
      const box = el("input") as HTMLInputElement;
      box.type = "checkbox";
      box.checked = true;
      box.dataset.emotion = descriptor.kind;
      box.addEventListener("change", () => {
        if (box.checked) this.visible.add(descriptor.kind);
        else this.visible.delete(descriptor.kind);
        void this.load();
      });
      label.append(box, ` ${descriptor.glyph}`);
      label.title = descriptor.label;
      toggles.append(label);
    }
    this.filters.append(toggles);

    const member = el("input", "member-filter") as HTMLInputElement;
    member.placeholder = "member id";
    const from = el("input", "from-filter") as HTMLInputElement;
    from.type = "date";
    const to = el("input", "to-filter") as HTMLInputElement;
    to.type = "date";
    const apply = el("button", "apply");
    apply.type = "button";
    apply.textContent = "Apply";
    apply.addEventListener("click", () => {
      this.member = member.value.trim();
      this.from = from.value ? `${from.value}T00:00:00.000Z` : "";
      this.to = to.value ? `${to.value}T00:00:00.000Z` : "";
      void this.load();
    });
    this.filters.append(member, from, to, apply);
  }

  private buildCardSelect(): void {
    if (this.cards.length === 0) return;
    const select = el("select", "card-select") as HTMLSelectElement;
    for (const card of this.cards) {
      const option = el("option", undefined, `${card.title} (${card.stage_name})`);
      option.value = card.card_id;
      select.append(option);
    }
    select.addEventListener("change", () => void this.loadSummary(select.value));
    this.cardSelect = select;
    this.averages.before(select);
  }

  private renderAverages(summary: SummaryDoc): void {
    this.averages.replaceChildren();
    this.averages.append(
      el("h3", undefined, summary.title),
      el(
        "p",
        "respondents",
        `${summary.respondent_count} respondent(s), current state`,
      ),
    );

    const table = el("table", "averages-table");
    const head = el("tr");
    for (const column of ["emotion", "count", "mean", "min", "max", "latest"]) {
      head.append(el("th", undefined, column));
    }
    table.append(head);

    const glyphs = new Map(this.options.schema.emotions.map((d) => [d.kind as string, d.glyph]));
    for (const row of summary.emotions) {
      const tr = el("tr");
      tr.dataset.emotion = row.emotion;
      tr.append(el("td", "emotion", `${glyphs.get(row.emotion) ?? ""} ${row.emotion}`));
      for (const value of [row.count, row.mean, row.min, row.max, row.latest]) {
        tr.append(el("td", "value", cell(value)));
      }
      table.append(tr);
    }
    this.averages.append(table);
  }

  private renderChart(): void {
    this.chartWrap.replaceChildren();
    if (!this.lastDoc) {
      // every emotion toggled off: an empty chart, nothing to query
      this.chartWrap.append(el("p", "empty-chart", "no emotions selected"));
      return;
    }
    this.chartWrap.append(
      buildChart(this.lastDoc.series, this.lastDoc.peaks, this.visible, this.options.schema),
    );
  }

  private renderBoardStats(): void {
    this.boardStats.replaceChildren();
    if (!this.lastDoc) return;
    this.boardStats.append(
      el("p", "sentiment", `board sentiment: ${cell(this.lastDoc.sentiment)}`),
    );
    const list = el("ul", "stages");
    for (const stage of this.lastDoc.stages) {
      const item = el("li", undefined, `${stage.stage_name}: ${stage.count} rating(s)`);
      item.dataset.stage = stage.stage_id;
      list.append(item);
    }
    this.boardStats.append(list);
  }

  private renderManagersOnly(message: string): void {
    this.element.replaceChildren(
      el("div", "managers-only", "This dashboard is for board managers."),
      el("p", "managers-only-detail", message),
    );
  }

  private renderError(err: unknown): void {
    const message = err instanceof ApiError ? err.message : "something went wrong";
    this.chartWrap.replaceChildren(el("p", "load-error", message));
  }
}
