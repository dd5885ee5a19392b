/** Typed client for the session service wire protocol. */

export interface AlphabetInfo {
  symbols: string[];
  delimiter: string;
}

export interface CatalogEntry {
  id: string;
  kind: "contestant" | "interrogator";
  level: string | null;
  description: string;
}

export interface CatalogResponse {
  entries: CatalogEntry[];
  alphabet: AlphabetInfo;
}

export interface CreateSessionResponse {
  session_id: string;
  alphabet: AlphabetInfo;
}

export interface QueryResponse {
  round: number;
  reply: string;
}

export type VerdictTag = "Level3" | "BelowLevel3";

export interface VerdictResponse {
  contestant: string;
  level: string;
  correct: boolean;
  rounds: number;
}

export interface TranscriptRound {
  query: string;
  reply: string;
}

export interface TranscriptResponse {
  rounds: TranscriptRound[];
  closed: boolean;
  contestant?: string;
  verdict?: VerdictTag;
  correct?: boolean;
}

export interface ScoreboardResponse {
  users: Record<string, { right: number; wrong: number }>;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public readonly status: number, detail: string) {
    super(detail);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, `service unreachable: ${String(err)}`);
    }
    if (!response.ok) {
      let detail = response.statusText || `HTTP ${response.status}`;
      try {
        const body = await response.json();
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // keep the status-derived detail
      }
      throw new ApiError(response.status, detail);
    }
    return response.json() as Promise<T>;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getCatalog(): Promise<CatalogResponse> {
    return this.request("/catalog");
  }

  createSession(contestant: string, user: string): Promise<CreateSessionResponse> {
    return this.post("/sessions", { contestant, user });
  }

  postQuery(sessionId: string, text: string): Promise<QueryResponse> {
    return this.post(`/sessions/${sessionId}/query`, { text });
  }

  postVerdict(sessionId: string, tag: VerdictTag): Promise<VerdictResponse> {
    return this.post(`/sessions/${sessionId}/verdict`, { tag });
  }

  getTranscript(sessionId: string): Promise<TranscriptResponse> {
    return this.request(`/sessions/${sessionId}/transcript`);
  }

  getScoreboard(): Promise<ScoreboardResponse> {
    return this.request("/scoreboard");
  }
}
