"""Session service: interrogation over HTTP for external clients.

The contestant identity of a session is hidden from every client-visible
payload until a verdict closes the session and sets the reveal flag. Sessions
persist as flat JSON documents (write-then-rename) in the data directory.
"""

from __future__ import annotations

import json
import os
import random
import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .catalog import ALPHABET, build_contestant, catalog, contestant_pairs
from .dialogue import ContestantFault, Round, Transcript

DATA_DIR_ENV = "INTERROLAB_DATA_DIR"


@dataclass
class SessionRecord:
    session_id: str
    interrogator_id: str  # "human" for console-driven sessions
    contestant_id: str
    user: str
    rounds: list[tuple[str, str]] = field(default_factory=list)
    revealed: bool = False
    verdict: str | None = None
    correct: bool | None = None
    created: str = ""
    closed: str = ""

    def to_doc(self) -> dict:
        return {
            "session_id": self.session_id,
            "interrogator_id": self.interrogator_id,
            "contestant_id": self.contestant_id,
            "user": self.user,
            "rounds": [list(r) for r in self.rounds],
            "revealed": self.revealed,
            "verdict": self.verdict,
            "correct": self.correct,
            "created": self.created,
            "closed": self.closed,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "SessionRecord":
        rec = cls(doc["session_id"], doc["interrogator_id"], doc["contestant_id"],
                  doc["user"])
        rec.rounds = [tuple(r) for r in doc["rounds"]]
        rec.revealed = doc["revealed"]
        rec.verdict = doc["verdict"]
        rec.correct = doc["correct"]
        rec.created = doc["created"]
        rec.closed = doc["closed"]
        return rec


class _Store:
    """Flat-directory persistence with atomic per-record writes."""

    def __init__(self, data_dir: str):
        self.data_dir = data_dir
        os.makedirs(data_dir, exist_ok=True)

    def _write_json(self, name: str, doc) -> None:
        path = os.path.join(self.data_dir, name)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
        os.replace(tmp, path)

    def save_session(self, record: SessionRecord) -> None:
        self._write_json(f"session-{record.session_id}.json", record.to_doc())

    def load_session(self, session_id: str) -> SessionRecord | None:
        path = os.path.join(self.data_dir, f"session-{session_id}.json")
        if not os.path.exists(path):
            return None
        with open(path) as fh:
            return SessionRecord.from_doc(json.load(fh))

    def load_scoreboard(self) -> dict:
        path = os.path.join(self.data_dir, "scoreboard.json")
        if not os.path.exists(path):
            return {}
        with open(path) as fh:
            return json.load(fh)

    def save_scoreboard(self, board: dict) -> None:
        self._write_json("scoreboard.json", board)


class CreateSessionRequest(BaseModel):
    contestant: str = "random"
    user: str = "anonymous"


class QueryRequest(BaseModel):
    text: str


class VerdictRequest(BaseModel):
    tag: str  # "Level3" | "BelowLevel3"


def _now() -> str:
    import datetime
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def create_app(data_dir: str | None = None, rng_seed: int | None = None) -> FastAPI:
    data_dir = data_dir or os.environ.get(DATA_DIR_ENV) or os.path.join(
        os.path.expanduser("~"), ".interrolab")
    store = _Store(data_dir)
    rng = random.Random(rng_seed)
    entries = catalog()
    app = FastAPI(title="interrolab session service")
    # The browser console is served from its own origin.
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    live: dict[str, dict] = {}  # session id -> {"record", "contestant", "lock"}
    board_lock = threading.Lock()

    def session_state(session_id: str) -> dict:
        state = live.get(session_id)
        if state is None:
            raise HTTPException(404, f"unknown session {session_id}")
        return state

    @app.get("/catalog")
    def list_catalog():
        return {"entries": [
            {"id": e.id, "kind": e.kind, "level": e.level,
             "description": e.description}
            for e in entries.values()],
            "alphabet": {"symbols": list(ALPHABET.symbols),
                         "delimiter": ALPHABET.delimiter}}

    @app.post("/sessions")
    def create_session(req: CreateSessionRequest):
        if req.contestant == "random":
            pair = rng.choice(contestant_pairs())
            contestant_id = rng.choice(pair)
        else:
            entry = entries.get(req.contestant)
            if entry is None or entry.kind != "contestant":
                raise HTTPException(404, f"unknown contestant {req.contestant}")
            contestant_id = req.contestant
        record = SessionRecord(uuid.uuid4().hex, "human", contestant_id,
                               req.user, created=_now())
        live[record.session_id] = {
            "record": record,
            "contestant": build_contestant(contestant_id),
            "lock": threading.Lock(),
        }
        store.save_session(record)
        return {"session_id": record.session_id,
                "alphabet": {"symbols": list(ALPHABET.symbols),
                             "delimiter": ALPHABET.delimiter}}

    @app.post("/sessions/{session_id}/query")
    def post_query(session_id: str, req: QueryRequest):
        state = session_state(session_id)
        with state["lock"]:
            record: SessionRecord = state["record"]
            if record.revealed:
                raise HTTPException(409, "session closed by verdict")
            if not ALPHABET.contains_message(req.text):
                raise HTTPException(400, "query leaves the session alphabet")
            try:
                reply = state["contestant"].reply(req.text)
            except ContestantFault as exc:
                raise HTTPException(500, str(exc))
            record.rounds.append((req.text, reply))
            store.save_session(record)
            return {"round": len(record.rounds) - 1, "reply": reply}

    @app.post("/sessions/{session_id}/verdict")
    def post_verdict(session_id: str, req: VerdictRequest):
        if req.tag not in ("Level3", "BelowLevel3"):
            raise HTTPException(400, f"unknown verdict tag {req.tag}")
        state = session_state(session_id)
        with state["lock"]:
            record: SessionRecord = state["record"]
            if record.revealed:
                raise HTTPException(409, "verdict already posted")
            level = entries[record.contestant_id].level
            correct = (level == "3") == (req.tag == "Level3")
            record.revealed = True
            record.verdict = req.tag
            record.correct = correct
            record.closed = _now()
            store.save_session(record)
        with board_lock:
            board = store.load_scoreboard()
            user = board.setdefault(record.user, {"right": 0, "wrong": 0})
            user["right" if correct else "wrong"] += 1
            store.save_scoreboard(board)
        return {"contestant": record.contestant_id, "level": level,
                "correct": correct, "rounds": len(record.rounds)}

    @app.get("/sessions/{session_id}/transcript")
    def get_transcript(session_id: str):
        record: SessionRecord = session_state(session_id)["record"]
        body = {
            "rounds": [{"query": q, "reply": r} for q, r in record.rounds],
            "closed": record.revealed,
        }
        if record.revealed:
            body["contestant"] = record.contestant_id
            body["verdict"] = record.verdict
            body["correct"] = record.correct
        return body

    @app.get("/scoreboard")
    def get_scoreboard():
        return {"users": store.load_scoreboard()}

    return app


def transcript_of(record: SessionRecord) -> Transcript:
    return Transcript(tuple(Round(q, r) for q, r in record.rounds))
