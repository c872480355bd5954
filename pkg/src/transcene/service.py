"""HTTP service: dataset access, batch evaluation, RL rewards, human-test sessions.

Stateless scoring endpoints delegate to the metrics module; sessions are the
only mutable state and persist to an embedded sqlite store so a test run
survives restarts. Reference transformations are never revealed to a test
session before the answer is submitted.
"""

from __future__ import annotations

import json
import random
import sqlite3
import threading
import time
import uuid
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .dataset import Dataset, sample_to_record
from .errors import (
    EngineError,
    MalformedAnswerError,
    SessionCompleteError,
    UnknownSampleError,
    UnknownSessionError,
)
from .metrics import REWARD_KINDS, aggregate, eval_multi, reward
from .render import render_schematic
from .sampler import Sample
from .stats import stats_report
from .transform import solve, transformation_from_tokens, value_token, VALUE_TOKENS, value_from_token, attribute_of

_STATUS_BY_CODE = {
    "unknown_sample": 404,
    "unknown_session": 404,
    "session_complete": 409,
    "malformed_answer": 400,
    "malformed_record": 400,
    "version_mismatch": 400,
    "checksum_mismatch": 400,
    "unsolvable": 422,
}


class TokenPair(BaseModel):
    obj: int
    value: str


class PredictionIn(BaseModel):
    id: str
    transformations: list[TokenPair]


class EvaluateRequest(BaseModel):
    predictions: list[PredictionIn]


class RewardRequest(BaseModel):
    queries: list[PredictionIn]
    kind: str = "corr_and_dist"


class SessionCreate(BaseModel):
    user: str
    setting: str | None = None
    split: str | None = None
    count: int = 10
    practice: bool = False
    seed: int | None = None


class AnswerIn(BaseModel):
    transformations: list[TokenPair]
    elapsed_ms: float | None = Field(default=None, ge=0)


class SessionStore:
    """Sqlite-backed session persistence; mutations are serialized."""

    def __init__(self, path):
        self._lock = threading.Lock()
        self._conn = sqlite3.connect(str(path), check_same_thread=False)
        with self._lock:
            self._conn.execute(
                "CREATE TABLE IF NOT EXISTS sessions (id TEXT PRIMARY KEY, payload TEXT NOT NULL)"
            )
            self._conn.commit()

    def load(self, session_id: str) -> dict:
        with self._lock:
            row = self._conn.execute(
                "SELECT payload FROM sessions WHERE id = ?", (session_id,)
            ).fetchone()
        if row is None:
            raise UnknownSessionError(f"unknown session id: {session_id}")
        return json.loads(row[0])

    def save(self, session: dict) -> None:
        with self._lock:
            self._conn.execute(
                "INSERT OR REPLACE INTO sessions (id, payload) VALUES (?, ?)",
                (session["id"], json.dumps(session)),
            )
            self._conn.commit()


def _parse_answer(pairs: list[TokenPair]):
    try:
        return transformation_from_tokens((p.obj, p.value) for p in pairs)
    except ValueError as e:
        raise MalformedAnswerError(str(e)) from e


def _vocabulary() -> list[dict]:
    return [
        {"token": t, "attribute": attribute_of(value_from_token(t)).value} for t in VALUE_TOKENS
    ]


def _sample_payload(sample: Sample, include_reference: bool) -> dict:
    record = sample_to_record(sample)
    if not include_reference:
        record.pop("transformations")
    return record


def create_app(dataset: Dataset, *, store_path, trusted: bool = True, ui_dir=None) -> FastAPI:
    app = FastAPI(title="transcene eval service")
    store = SessionStore(store_path)

    @app.exception_handler(EngineError)
    async def engine_error_handler(request: Request, exc: EngineError):
        status = _STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(status_code=status, content={"code": exc.code, "message": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok", "samples": len(dataset.all_samples()), "trusted": trusted}

    @app.get("/vocabulary")
    def vocabulary():
        return {"values": _vocabulary()}

    @app.get("/samples/{sample_id}")
    def get_sample(sample_id: str, include_reference: bool = False):
        sample = dataset.get(sample_id)
        return _sample_payload(sample, include_reference and trusted)

    @app.get("/samples/{sample_id}/schematic")
    def get_schematic(sample_id: str, state: str = "final", view: str | None = None,
                      full_plane: bool = False):
        sample = dataset.get(sample_id)
        if state not in ("initial", "final"):
            raise MalformedAnswerError("state must be 'initial' or 'final'")
        scene = sample.initial if state == "initial" else sample.final
        chosen = view or (sample.view if state == "final" else "center")
        return {"svg": render_schematic(scene, chosen, full_plane=full_plane)}

    @app.get("/samples/{sample_id}/solution")
    def get_solution(sample_id: str):
        if not trusted:
            raise UnknownSampleError("solutions are not served in untrusted mode")
        sample = dataset.get(sample_id)
        solution = solve(sample.initial, sample.final)
        return {
            "id": sample_id,
            "transformations": [{"obj": t.object_id, "value": value_token(t.value)} for t in solution],
        }

    @app.post("/evaluate")
    def evaluate(body: EvaluateRequest):
        scores = []
        rows = []
        for p in body.predictions:
            sample = dataset.get(p.id)
            score = eval_multi(_parse_answer(p.transformations), sample)
            scores.append(score)
            rows.append({"id": p.id, **score.to_dict()})
        if not scores:
            raise MalformedAnswerError("no predictions supplied")
        return {"scores": rows, "report": aggregate(scores).to_dict()}

    @app.post("/reward")
    def reward_endpoint(body: RewardRequest):
        if body.kind not in REWARD_KINDS:
            raise MalformedAnswerError(f"unknown reward kind {body.kind!r}")
        rewards = [
            reward(_parse_answer(q.transformations), dataset.get(q.id), body.kind)
            for q in body.queries
        ]
        return {"kind": body.kind, "rewards": rewards}

    @app.get("/stats/{split}")
    def stats_endpoint(split: str):
        if split == "all":
            samples = dataset.all_samples()
        elif split in dataset.splits:
            samples = dataset.splits[split]
        else:
            raise UnknownSampleError(f"unknown split: {split}")
        return stats_report(samples)

    @app.post("/sessions")
    def create_session(body: SessionCreate):
        pool = dataset.all_samples() if body.split is None else dataset.splits.get(body.split)
        if pool is None:
            raise UnknownSampleError(f"unknown split: {body.split}")
        if body.setting is not None:
            pool = [s for s in pool if s.setting == body.setting]
        if not pool:
            raise UnknownSampleError("no samples match the requested setting/split")
        rng = random.Random(body.seed if body.seed is not None else uuid.uuid4().int)
        count = max(1, min(body.count, len(pool)))
        chosen = rng.sample([s.id for s in pool], count)
        session = {
            "id": uuid.uuid4().hex,
            "user": body.user,
            "setting": body.setting,
            "split": body.split,
            "practice": body.practice,
            "sample_ids": chosen,
            "cursor": 0,
            "answers": [],
            "created_at": time.time(),
            "completed_at": None,
        }
        store.save(session)
        return {
            "id": session["id"],
            "user": session["user"],
            "practice": session["practice"],
            "total": len(chosen),
        }

    def _next_payload(session: dict) -> dict:
        sample = dataset.get(session["sample_ids"][session["cursor"]])
        payload = {
            "session_id": session["id"],
            "index": session["cursor"],
            "total": len(session["sample_ids"]),
            "sample": _sample_payload(sample, include_reference=False),
            "initial_svg": render_schematic(sample.initial, "center"),
            "final_svg": render_schematic(sample.final, sample.view),
            "helper_svg": render_schematic(sample.initial, "center", full_plane=True),
            "vocabulary": _vocabulary(),
        }
        if session["practice"]:
            solution = solve(sample.initial, sample.final)
            payload["solution"] = [
                {"obj": t.object_id, "value": value_token(t.value)} for t in solution
            ]
        return payload

    @app.get("/sessions/{session_id}/next")
    def next_sample(session_id: str):
        session = store.load(session_id)
        if session["cursor"] >= len(session["sample_ids"]):
            raise SessionCompleteError("all samples answered")
        return _next_payload(session)

    @app.post("/sessions/{session_id}/answer")
    def submit_answer(session_id: str, body: AnswerIn):
        session = store.load(session_id)
        if session["cursor"] >= len(session["sample_ids"]):
            raise SessionCompleteError("all samples answered")
        sample = dataset.get(session["sample_ids"][session["cursor"]])
        answer = _parse_answer(body.transformations)  # malformed answers do not advance
        score = eval_multi(answer, sample)
        entry = {
            "sample_id": sample.id,
            "transformations": [{"obj": p.obj, "value": p.value} for p in body.transformations],
            "score": score.to_dict(),
            "reference": [
                {"obj": t.object_id, "value": value_token(t.value)} for t in sample.reference
            ],
            "elapsed_ms": body.elapsed_ms,
        }
        session["answers"].append(entry)
        session["cursor"] += 1
        if session["cursor"] >= len(session["sample_ids"]):
            session["completed_at"] = time.time()
        store.save(session)
        return {
            "score": score.to_dict(),
            "reference": entry["reference"],
            "index": session["cursor"] - 1,
            "remaining": len(session["sample_ids"]) - session["cursor"],
        }

    @app.get("/sessions/{session_id}/report")
    def session_report(session_id: str):
        session = store.load(session_id)
        answers = session["answers"]
        report = None
        if answers:
            from .metrics import MultiScore

            scores = [MultiScore(**a["score"]) for a in answers]
            report = aggregate(scores).to_dict()
        return {
            "id": session["id"],
            "user": session["user"],
            "practice": session["practice"],
            "completed": session["cursor"] >= len(session["sample_ids"]),
            "answers": answers,
            "report": report,
        }

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
