/** Application shell: token login, card picker, panel and dashboard views. */

import { ApiClient, decodeClaims, resolveRuntimeConfig } from "./api.js";
import { Dashboard } from "./dashboard.js";
import { ReactionPanel } from "./panel.js";
import type { CardInfo, SchemaDoc } from "./types.js";

const TOKEN_KEY = "emotrack.token";

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

function loginView(root: HTMLElement, onToken: (token: string) => void): void {
  const form = el("form", "login");
  const intro = el(
    "p",
    undefined,
    "Paste the access token you were issued for your board.",
  );
  const input = el("input") as HTMLInputElement;
  input.type = "password";
  input.placeholder = "access token";
  input.autocomplete = "off";
  const submit = el("button", undefined, "Enter");
  submit.type = "submit";
  const problem = el("p", "login-error");
  problem.hidden = true;

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const token = input.value.trim();
    if (!decodeClaims(token)) {
      problem.hidden = false;
      problem.textContent = "that does not look like a board token";
      return;
    }
    onToken(token);
  });
  form.append(intro, input, submit, problem);
  root.replaceChildren(form);
}

async function boardView(root: HTMLElement, token: string): Promise<void> {
  const claims = decodeClaims(token);
  if (!claims) return;
  const config = resolveRuntimeConfig();
  const api = new ApiClient({ baseUrl: config.apiBase, token });

  let schema: SchemaDoc;
  let cards: CardInfo[];
  try {
    [schema, cards] = await Promise.all([api.schema(), api.cards(claims.board_id)]);
  } catch (err) {
    sessionStorage.removeItem(TOKEN_KEY);
    const back = el("button", undefined, "Back to login");
    back.type = "button";
    back.addEventListener("click", () => loginView(root, enter(root)));
    root.replaceChildren(
      el("p", "load-error", `could not load the board: ${String(err)}`),
      back,
    );
    return;
  }

  const header = el("header");
  header.append(
    el("h1", undefined, `Board ${claims.board_id}`),
    el("p", "whoami", `signed in as ${claims.member_id}`),
  );
  const logout = el("button", "logout", "Sign out");
  logout.type = "button";
  logout.addEventListener("click", () => {
    sessionStorage.removeItem(TOKEN_KEY);
    loginView(root, enter(root));
  });
  header.append(logout);

  const nav = el("nav");
  const main = el("main");
  const showPanel = (card: CardInfo): void => {
    const panel = new ReactionPanel({
      api,
      schema,
      board: claims.board_id,
      cardId: card.card_id,
      cardTitle: card.title,
    });
    main.replaceChildren(panel.element);
  };
  const showDashboard = (): void => {
    const dashboard = new Dashboard({ api, schema, board: claims.board_id });
    main.replaceChildren(dashboard.element);
    void dashboard.load();
  };

  const cardSelect = el("select", "card-picker") as HTMLSelectElement;
  for (const card of cards) {
    const option = el("option", undefined, `${card.title} (${card.stage_name})`);
    option.value = card.card_id;
    cardSelect.append(option);
  }
  cardSelect.addEventListener("change", () => {
    const card = cards.find((c) => c.card_id === cardSelect.value);
    if (card) showPanel(card);
  });

  const dashButton = el("button", "to-dashboard", "Dashboard");
  dashButton.type = "button";
  dashButton.addEventListener("click", showDashboard);
  nav.append(el("label", undefined, "react to "), cardSelect, dashButton);

  root.replaceChildren(header, nav, main);
  if (cards.length > 0) showPanel(cards[0]);
  else main.replaceChildren(el("p", undefined, "this board has no cards"));
}

function enter(root: HTMLElement): (token: string) => void {
  return (token: string) => {
    // session storage only: the token dies with the tab
    sessionStorage.setItem(TOKEN_KEY, token);
    void boardView(root, token);
  };
}

export function initApp(root: HTMLElement): void {
  const stored = sessionStorage.getItem(TOKEN_KEY);
  if (stored && decodeClaims(stored)) void boardView(root, stored);
  else loginView(root, enter(root));
}
