import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { SessionController, filterToAlphabet } from "../src/session.js";

const ALPHABET = { symbols: ["0", "1"], delimiter: "#" };

/** In-memory stand-in for the service, counting every request. */
function fakeService() {
  const state = {
    sessions: new Map<string, { rounds: [string, string][]; closed: boolean }>(),
    verdictPosts: 0,
    scoreboard: {} as Record<string, { right: number; wrong: number }>,
    nextId: 1,
    down: false,
  };
  const fetchFn = async (url: string, init?: RequestInit): Promise<Response> => {
    if (state.down) throw new TypeError("fetch failed");
    const json = (body: unknown, status = 200) =>
      new Response(JSON.stringify(body), { status });
    const body = init?.body ? JSON.parse(String(init.body)) : {};
    if (url.endsWith("/sessions")) {
      const id = `s${state.nextId++}`;
      state.sessions.set(id, { rounds: [], closed: false });
      return json({ session_id: id, alphabet: ALPHABET });
    }
    const query = url.match(/\/sessions\/(\w+)\/query$/);
    if (query) {
      const session = state.sessions.get(query[1])!;
      if (session.closed) return json({ detail: "closed" }, 409);
      const reply = [...(body.text as string)].reverse().join("");
      session.rounds.push([body.text, reply]);
      return json({ round: session.rounds.length - 1, reply });
    }
    const verdict = url.match(/\/sessions\/(\w+)\/verdict$/);
    if (verdict) {
      const session = state.sessions.get(verdict[1])!;
      if (session.closed) return json({ detail: "already posted" }, 409);
      session.closed = true;
      state.verdictPosts += 1;
      state.scoreboard["tester"] = { right: state.verdictPosts, wrong: 0 };
      return json({
        contestant: "echo",
        level: "3",
        correct: body.tag === "Level3",
        rounds: session.rounds.length,
      });
    }
    if (url.endsWith("/scoreboard")) return json({ users: state.scoreboard });
    throw new Error(`unexpected url ${url}`);
  };
  return { state, fetchFn };
}

function controller(fetchFn: (url: string, init?: RequestInit) => Promise<Response>) {
  return new SessionController(new ApiClient("http://svc", fetchFn), "tester");
}

describe("filterToAlphabet", () => {
  it("drops characters outside the session alphabet", () => {
    expect(filterToAlphabet("0a1#b0", ALPHABET)).toBe("010");
    expect(filterToAlphabet("xyz", ALPHABET)).toBe("");
    expect(filterToAlphabet("01", null)).toBe("");
  });
});

describe("SessionController", () => {
  it("starts with an empty chat and open verdict controls", async () => {
    const { fetchFn } = fakeService();
    const c = controller(fetchFn);
    await c.start("random");
    expect(c.view.sessionId).toBe("s1");
    expect(c.view.chat).toEqual([]);
    expect(c.view.verdictState).toBe("open");
    expect(c.view.reveal).toBeNull();
  });

  it("leaves no phantom session when the service is down", async () => {
    const { state, fetchFn } = fakeService();
    state.down = true;
    const c = controller(fetchFn);
    await c.start("random");
    expect(c.view.sessionId).toBeNull();
    expect(c.view.error).toContain("unreachable");
  });

  it("appends one bubble pair per query", async () => {
    const { fetchFn } = fakeService();
    const c = controller(fetchFn);
    await c.start("random");
    await c.send("01");
    await c.send("0011");
    expect(c.view.chat).toEqual([
      { query: "01", reply: "10" },
      { query: "0011", reply: "1100" },
    ]);
  });

  it("filters out-of-alphabet characters before sending", async () => {
    const { state, fetchFn } = fakeService();
    const c = controller(fetchFn);
    await c.start("random");
    await c.send("0a1!");
    expect(state.sessions.get("s1")!.rounds).toEqual([["01", "10"]]);
  });

  it("verdict closes the session and shows the reveal", async () => {
    const { fetchFn } = fakeService();
    const c = controller(fetchFn);
    await c.start("random");
    await c.send("01");
    await c.declare("Level3");
    expect(c.view.verdictState).toBe("closed");
    expect(c.view.reveal).toMatchObject({ contestant: "echo", correct: true });
    expect(c.view.scoreboard["tester"]).toEqual({ right: 1, wrong: 0 });
  });

  it("round-zero verdicts are allowed", async () => {
    const { fetchFn } = fakeService();
    const c = controller(fetchFn);
    await c.start("random");
    await c.declare("BelowLevel3");
    expect(c.view.reveal).toMatchObject({ rounds: 0 });
  });

  it("repeated verdict clicks post at most once", async () => {
    const { state, fetchFn } = fakeService();
    const c = controller(fetchFn);
    await c.start("random");
    await Promise.all([
      c.declare("Level3"),
      c.declare("Level3"),
      c.declare("BelowLevel3"),
    ]);
    await c.declare("Level3");
    expect(state.verdictPosts).toBe(1);
  });

  it("queries after the verdict are refused client-side", async () => {
    const { state, fetchFn } = fakeService();
    const c = controller(fetchFn);
    await c.start("random");
    await c.declare("Level3");
    await c.send("01");
    expect(c.view.chat).toEqual([]);
    expect(state.sessions.get("s1")!.rounds).toEqual([]);
  });

  it("starting a new session resets the view but keeps the scoreboard", async () => {
    const { fetchFn } = fakeService();
    const c = controller(fetchFn);
    await c.start("random");
    await c.declare("Level3");
    await c.start("random");
    expect(c.view.sessionId).toBe("s2");
    expect(c.view.chat).toEqual([]);
    expect(c.view.verdictState).toBe("open");
    expect(c.view.reveal).toBeNull();
    expect(c.view.scoreboard["tester"]).toEqual({ right: 1, wrong: 0 });
  });
});
