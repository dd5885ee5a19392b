/** Session state for the interrogation console.
 *
 * The view model is a pure projection of server state plus in-flight request
 * status; every mutation goes through the service. The contestant identity
 * lives only in the reveal, which the server withholds until a verdict.
 */

import {
  AlphabetInfo,
  ApiClient,
  TranscriptRound,
  VerdictResponse,
  VerdictTag,
} from "./api.js";

export type VerdictState = "open" | "pending" | "closed";

export interface ConsoleSessionView {
  sessionId: string | null;
  alphabet: AlphabetInfo | null;
  chat: TranscriptRound[];
  verdictState: VerdictState;
  reveal: VerdictResponse | null;
  scoreboard: Record<string, { right: number; wrong: number }>;
  error: string | null;
  busy: boolean;
}

export function emptyView(): ConsoleSessionView {
  return {
    sessionId: null,
    alphabet: null,
    chat: [],
    verdictState: "open",
    reveal: null,
    scoreboard: {},
    error: null,
    busy: false,
  };
}

/** Keep only characters of the session alphabet (client-side input hint). */
export function filterToAlphabet(text: string, alphabet: AlphabetInfo | null): string {
  if (!alphabet) return "";
  const allowed = new Set(alphabet.symbols);
  return [...text].filter((ch) => allowed.has(ch)).join("");
}

export class SessionController {
  view: ConsoleSessionView = emptyView();

  constructor(
    private readonly client: ApiClient,
    private readonly user: string,
    private readonly onChange: (view: ConsoleSessionView) => void = () => {},
  ) {}

  private update(patch: Partial<ConsoleSessionView>): void {
    this.view = { ...this.view, ...patch };
    this.onChange(this.view);
  }

  /** Create a session; on failure no phantom session is left behind. */
  async start(contestant: string): Promise<void> {
    this.update({ ...emptyView(), scoreboard: this.view.scoreboard, busy: true });
    try {
      const created = await this.client.createSession(contestant, this.user);
      this.update({
        sessionId: created.session_id,
        alphabet: created.alphabet,
        busy: false,
      });
    } catch (err) {
      this.update({ sessionId: null, busy: false, error: String(err) });
    }
  }

  /** Send one query; appends exactly one bubble pair on success. */
  async send(text: string): Promise<void> {
    if (this.view.sessionId === null || this.view.verdictState !== "open" ||
        this.view.busy) {
      return;
    }
    const query = filterToAlphabet(text, this.view.alphabet);
    this.update({ busy: true, error: null });
    try {
      const answered = await this.client.postQuery(this.view.sessionId, query);
      this.update({
        chat: [...this.view.chat, { query, reply: answered.reply }],
        busy: false,
      });
    } catch (err) {
      this.update({ busy: false, error: String(err) });
    }
  }

  /** Post the verdict once; repeated calls while pending/closed are no-ops. */
  async declare(tag: VerdictTag): Promise<void> {
    if (this.view.sessionId === null || this.view.verdictState !== "open") {
      return;
    }
    this.update({ verdictState: "pending", error: null });
    try {
      const reveal = await this.client.postVerdict(this.view.sessionId, tag);
      const scoreboard = (await this.client.getScoreboard()).users;
      this.update({ verdictState: "closed", reveal, scoreboard });
    } catch (err) {
      this.update({ verdictState: "open", error: String(err) });
    }
  }

  async refreshScoreboard(): Promise<void> {
    try {
      const scoreboard = (await this.client.getScoreboard()).users;
      this.update({ scoreboard });
    } catch (err) {
      this.update({ error: String(err) });
    }
  }
}
