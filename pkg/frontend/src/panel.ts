/** Per-card reaction panel: eight labeled intensity sliders. */

import { ApiError } from "./api.js";
import type { EmotionKind, SaveResult, SchemaDoc } from "./types.js";

export type SaveStatus = "idle" | "saving" | "saved" | "failed";

/** The slice of the API client the panel needs (easy to stub in tests). */
export interface PanelApi {
  saveReactions(
    board: string,
    card: string,
    ratings: Record<string, number>,
  ): Promise<SaveResult>;
}

export interface PanelOptions {
  api: PanelApi;
  schema: SchemaDoc;
  board: string;
  cardId: string;
  cardTitle?: string;
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

export class ReactionPanel {
  readonly element: HTMLElement;
  status: SaveStatus = "idle";

  private readonly values = new Map<EmotionKind, number>();
  private readonly sliders = new Map<EmotionKind, HTMLInputElement>();
  private readonly readouts = new Map<EmotionKind, HTMLElement>();
  private readonly saveButton: HTMLButtonElement;
  private readonly feedback: HTMLElement;
  private readonly options: PanelOptions;

  constructor(options: PanelOptions) {
    this.options = options;
    const { schema, cardTitle, cardId } = options;

    this.element = el("section", "reaction-panel");
    this.element.append(el("h2", "panel-title", cardTitle ?? cardId));
    // the explanatory text sits above the sliders so the numbers mean
    // the same thing to everyone
    this.element.append(el("p", "scale-hint", schema.scale_hint));

    const list = el("div", "sliders");
    for (const descriptor of schema.emotions) {
      list.append(this.buildRow(descriptor.kind, descriptor.glyph, descriptor.label));
    }
    this.element.append(list);

    this.saveButton = el("button", "save");
    this.saveButton.type = "button";
    this.saveButton.textContent = "Save reactions";
    this.saveButton.disabled = true;
    this.saveButton.addEventListener("click", () => void this.save());
    this.element.append(this.saveButton);

    this.feedback = el("p", "feedback");
    this.feedback.setAttribute("role", "status");
    this.feedback.hidden = true;
    this.element.append(this.feedback);
  }

  /** Only sliders the user touched; unset emotions submit nothing. */
  ratings(): Record<string, number> {
    const { scale_min, scale_max } = this.options.schema;
    const out: Record<string, number> = {};
    for (const descriptor of this.options.schema.emotions) {
      const value = this.values.get(descriptor.kind);
      if (value === undefined) continue;
      out[descriptor.kind] = Math.min(scale_max, Math.max(scale_min, Math.round(value)));
    }
    return out;
  }

  async save(): Promise<void> {
    if (this.status === "saving") return;
    const ratings = this.ratings();
    if (Object.keys(ratings).length === 0) return;

    this.setStatus("saving");
    this.saveButton.disabled = true;
    try {
      const result = await this.options.api.saveReactions(
        this.options.board,
        this.options.cardId,
        ratings,
      );
      this.setStatus("saved");
      this.showFeedback("confirmation", result.message || "Saved.");
    } catch (err) {
      this.setStatus("failed");
      const message = err instanceof ApiError ? err.message : "something went wrong";
      this.showFeedback("error", message, true);
    } finally {
      this.saveButton.disabled = this.values.size === 0;
    }
  }

  private buildRow(kind: EmotionKind, glyph: string, label: string): HTMLElement {
    const { scale_min, scale_max } = this.options.schema;
    const row = el("div", "slider-row");
    row.dataset.emotion = kind;

    const caption = el("label", "emotion-label", `${glyph} ${label}`);
    caption.htmlFor = `slider-${kind}`;

    const slider = el("input") as HTMLInputElement;
    slider.type = "range";
    slider.id = `slider-${kind}`;
    slider.min = String(scale_min);
    slider.max = String(scale_max);
    slider.step = "1";
    slider.value = String(scale_min);
    slider.dataset.unset = "true";

    const readout = el("output", "readout", "–");

    const clear = el("button", "clear");
    clear.type = "button";
    clear.textContent = "×";
    clear.title = `clear ${label}`;

    slider.addEventListener("input", () => {
      slider.dataset.unset = "false";
      this.values.set(kind, Number(slider.value));
      readout.textContent = slider.value;
      this.refreshSaveButton();
    });
    clear.addEventListener("click", () => {
      slider.dataset.unset = "true";
      slider.value = String(scale_min);
      this.values.delete(kind);
      readout.textContent = "–";
      this.refreshSaveButton();
    });

    this.sliders.set(kind, slider);
    this.readouts.set(kind, readout);
    row.append(caption, slider, readout, clear);
    return row;
  }

  private refreshSaveButton(): void {
    if (this.status !== "saving") {
      this.saveButton.disabled = this.values.size === 0;
    }
  }

  private setStatus(status: SaveStatus): void {
    this.status = status;
    this.element.dataset.status = status;
  }

  private showFeedback(kind: "confirmation" | "error", message: string, retry = false): void {
    this.feedback.hidden = false;
    this.feedback.className = `feedback ${kind}`;
    this.feedback.textContent = message;
    if (retry) {
      const button = el("button", "retry");
      button.type = "button";
      button.textContent = "Retry";
      button.addEventListener("click", () => void this.save());
      this.feedback.append(" ", button);
    }
  }
}
