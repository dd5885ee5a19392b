/** Thin DOM projection of ConsoleSessionView; no state of its own. */

import { CatalogEntry } from "./api.js";
import { ConsoleSessionView } from "./session.js";

export interface ViewHandlers {
  onStart: (contestant: string) => void;
  onSend: (text: string) => void;
  onDeclare: (tag: "Level3" | "BelowLevel3") => void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className?: string, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function render(
  root: HTMLElement,
  view: ConsoleSessionView,
  contestants: CatalogEntry[],
  handlers: ViewHandlers,
): void {
  root.replaceChildren();

  // session chooser
  const chooser = el("div", "chooser");
  const select = el("select");
  const random = el("option", undefined, "random");
  random.value = "random";
  select.appendChild(random);
  for (const entry of contestants) {
    const option = el("option", undefined, entry.id);
    option.value = entry.id;
    select.appendChild(option);
  }
  const startButton = el("button", undefined, "new session");
  startButton.onclick = () => handlers.onStart(select.value);
  chooser.append(select, startButton);
  root.appendChild(chooser);

  if (view.error) {
    root.appendChild(el("div", "error", view.error));
  }
  if (view.sessionId === null) {
    root.appendChild(renderScoreboard(view));
    return;
  }

  // chat history
  const chat = el("div", "chat");
  for (const round of view.chat) {
    chat.appendChild(el("div", "bubble query", round.query));
    chat.appendChild(el("div", "bubble reply", round.reply));
  }
  root.appendChild(chat);

  // query input, filtered to the session alphabet as the user types
  const alphabet = view.alphabet;
  const sessionOpen = view.verdictState === "open";
  const inputRow = el("div", "input-row");
  const input = el("input");
  input.placeholder = alphabet
    ? `query over {${alphabet.symbols.join(", ")}}`
    : "query";
  input.disabled = !sessionOpen || view.busy;
  if (alphabet) {
    const allowed = new Set(alphabet.symbols);
    input.oninput = () => {
      input.value = [...input.value].filter((ch) => allowed.has(ch)).join("");
    };
  }
  const sendButton = el("button", undefined, "send");
  sendButton.disabled = !sessionOpen || view.busy;
  const submit = () => {
    handlers.onSend(input.value);
    input.value = "";
  };
  sendButton.onclick = submit;
  input.onkeydown = (event) => {
    if (event.key === "Enter") submit();
  };
  inputRow.append(input, sendButton);
  if (!sessionOpen) {
    inputRow.appendChild(el("span", "hint", "session closed by verdict"));
  }
  root.appendChild(inputRow);

  // verdict controls
  const verdictRow = el("div", "verdict-row");
  for (const tag of ["Level3", "BelowLevel3"] as const) {
    const button = el("button", undefined, `declare ${tag}`);
    button.disabled = !sessionOpen;
    button.onclick = () => handlers.onDeclare(tag);
    verdictRow.appendChild(button);
  }
  root.appendChild(verdictRow);

  // reveal panel: empty until a verdict closes the session
  if (view.reveal) {
    const reveal = el("div", "reveal");
    reveal.appendChild(el("div", undefined,
      `contestant: ${view.reveal.contestant} (level ${view.reveal.level})`));
    reveal.appendChild(el("div", view.reveal.correct ? "right" : "wrong",
      view.reveal.correct ? "verdict correct" : "verdict wrong"));
    root.appendChild(reveal);
  }

  root.appendChild(renderScoreboard(view));
}

function renderScoreboard(view: ConsoleSessionView): HTMLElement {
  const board = el("div", "scoreboard");
  board.appendChild(el("h3", undefined, "scoreboard"));
  for (const [user, score] of Object.entries(view.scoreboard)) {
    board.appendChild(el("div", undefined,
      `${user}: ${score.right} right, ${score.wrong} wrong`));
  }
  return board;
}
