"""HTTP JSON API over a file-backed store of contexts and sessions.

Contexts are immutable files; committing a session writes a new context
version and links it to its parent, so every id stays addressable forever.
Sessions persist as append-only event logs and are reloaded by replay, which
doubles as an integrity check.  Commits are serialized through one lock with
first-committer-wins: a session holding a stale snapshot gets 409 and must
rebase.
"""

from __future__ import annotations

import json
import threading
import uuid
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from .bitset import BitSet
from .canonical import BaseTimeout, pseudo_intents
from .context import CandidateObject, FormalContext
from .formats import ParseError, read_context, write_cxt
from .implications import Implication, support
from .session import (
    DuplicateAnswerError,
    Question,
    Session,
    SessionStateError,
    open_session,
)

DEFAULT_BASE_BUDGET = 10.0


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text)
    tmp.replace(path)


class Store:
    """Directory layout: contexts/{id}.cxt + .json, sessions/{id}.jsonl + .json."""

    def __init__(self, root: Path):
        self.root = Path(root)
        (self.root / "contexts").mkdir(parents=True, exist_ok=True)
        (self.root / "sessions").mkdir(parents=True, exist_ok=True)
        self.lock = threading.Lock()
        self._sessions: dict[str, Session] = {}
        self._bases: dict[str, dict] = {}

    # -- contexts -------------------------------------------------------------

    def _ctx_path(self, cid: str) -> Path:
        return self.root / "contexts" / f"{cid}.cxt"

    def _ctx_meta_path(self, cid: str) -> Path:
        return self.root / "contexts" / f"{cid}.json"

    def put_context(self, ctx: FormalContext,
                    parent: Optional[str] = None) -> dict:
        cid = uuid.uuid4().hex[:12]
        version = 1
        if parent is not None:
            version = self.context_meta(parent)["version"] + 1
        meta = {"id": cid, "version": version, "parent": parent,
                "child": None}
        _atomic_write(self._ctx_path(cid), write_cxt(ctx))
        _atomic_write(self._ctx_meta_path(cid),
                      json.dumps(meta, sort_keys=True))
        return meta

    def has_context(self, cid: str) -> bool:
        return self._ctx_path(cid).exists()

    def context(self, cid: str) -> FormalContext:
        from .formats import read_cxt
        return read_cxt(self._ctx_path(cid).read_text())

    def context_meta(self, cid: str) -> dict:
        return json.loads(self._ctx_meta_path(cid).read_text())

    def set_child(self, cid: str, child: str) -> None:
        meta = self.context_meta(cid)
        meta["child"] = child
        _atomic_write(self._ctx_meta_path(cid),
                      json.dumps(meta, sort_keys=True))

    def list_contexts(self) -> list[dict]:
        out = []
        for p in sorted((self.root / "contexts").glob("*.json")):
            out.append(json.loads(p.read_text()))
        return out

    def head_of(self, cid: str) -> str:
        seen = set()
        while True:
            child = self.context_meta(cid).get("child")
            if child is None or cid in seen:
                return cid
            seen.add(cid)
            cid = child

    # -- sessions -------------------------------------------------------------

    def _session_log_path(self, sid: str) -> Path:
        return self.root / "sessions" / f"{sid}.jsonl"

    def _session_meta_path(self, sid: str) -> Path:
        return self.root / "sessions" / f"{sid}.json"

    def put_session(self, session: Session, context_id: str) -> str:
        sid = uuid.uuid4().hex[:12]
        self._sessions[sid] = session
        self.save_session(sid, session, context_id)
        return sid

    def save_session(self, sid: str, session: Session,
                     context_id: str) -> None:
        _atomic_write(self._session_log_path(sid), session.to_jsonl())
        _atomic_write(self._session_meta_path(sid),
                      json.dumps({"id": sid, "context_id": context_id},
                                 sort_keys=True))

    def has_session(self, sid: str) -> bool:
        return self._session_log_path(sid).exists()

    def session(self, sid: str) -> Session:
        if sid not in self._sessions:
            text = self._session_log_path(sid).read_text()
            self._sessions[sid] = Session.replay_jsonl(text)
        return self._sessions[sid]

    def session_meta(self, sid: str) -> dict:
        return json.loads(self._session_meta_path(sid).read_text())


# -- view helpers --------------------------------------------------------------


def _literal_views(attrs: BitSet, names, positive: bool) -> list[dict]:
    return [{"attribute": names[j], "positive": positive} for j in attrs]


def question_view(q: Question, names) -> dict:
    """Render a question on the original attribute vocabulary.

    Complement-space questions flip polarity: an attribute present in the
    complement premise means the object lacks it, so it renders negated.
    """
    imp = q.implication
    flip = q.space == "complement"
    premise = _literal_views(imp.premise, names, positive=not flip)
    conclusion = (_literal_views(imp.positives, names, positive=not flip)
                  + _literal_views(imp.negatives, names, positive=flip))
    conclusion.sort(key=lambda lit: (not lit["positive"], lit["attribute"]))
    fmt = lambda lit: ("" if lit["positive"] else "!") + lit["attribute"]
    text = (", ".join(fmt(l) for l in premise) + " -> "
            + ", ".join(fmt(l) for l in conclusion))
    return {
        "id": q.id,
        "origin": q.origin,
        "space": q.space,
        "status": q.status,
        "premise": premise,
        "conclusion": conclusion,
        "support": list(q.support_objects),
        "text": text,
    }


def session_view(sid: str, session: Session, context_id: str) -> dict:
    names = session.snapshot.attribute_names
    questions = []
    hand_checks = []
    for q in session.questions:
        view = question_view(q, names)
        (hand_checks if q.hand_check else questions).append(view)
    return {
        "id": sid,
        "context_id": context_id,
        "state": session.state,
        "mode": session.mode,
        "use_complement": session.use_complement,
        "round": session.round,
        "candidate": {
            "name": session.candidate.name,
            "attributes": list(
                session.snapshot.attribute_names_of(session.candidate.intent)),
        },
        "questions": questions,
        "hand_checks": hand_checks,
    }


def _base_implication_view(ctx: FormalContext, premise: BitSet,
                           closure: BitSet) -> dict:
    imp = Implication(premise, closure, BitSet.empty(ctx.num_attributes))
    return {
        "premise": list(ctx.attribute_names_of(premise)),
        "conclusion": list(ctx.attribute_names_of(imp.positives)),
        "support": len(support(ctx, imp)),
    }


def _error(status: int, message: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"detail": message, **extra})


# -- application ---------------------------------------------------------------


def create_app(store_dir: str | Path,
               base_budget: float = DEFAULT_BASE_BUDGET) -> FastAPI:
    store = Store(Path(store_dir))
    app = FastAPI(title="rowguard", docs_url=None, redoc_url=None)
    app.state.store = store
    # the browser client may be a local file or another port
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    def _context_or_none(cid: str) -> Optional[FormalContext]:
        return store.context(cid) if store.has_context(cid) else None

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/contexts")
    async def create_context(request: Request):
        try:
            body = json.loads(await request.body() or b"")
        except json.JSONDecodeError:
            return _error(400, "body must be a JSON object")
        if not isinstance(body, dict) or "text" not in body:
            return _error(400, "expected {format, text}")
        fmt = body.get("format", "cxt")
        try:
            ctx = read_context(body["text"], fmt)
        except ParseError as exc:
            return _error(400, str(exc), line=exc.line)
        except ValueError as exc:
            return _error(400, str(exc))
        meta = store.put_context(ctx)
        return {"id": meta["id"], "objects": ctx.num_objects,
                "attributes": ctx.num_attributes,
                "version": meta["version"]}

    @app.get("/contexts")
    def list_contexts():
        out = []
        for meta in store.list_contexts():
            ctx = store.context(meta["id"])
            out.append({**meta, "objects": ctx.num_objects,
                        "attributes": ctx.num_attributes})
        return {"contexts": out}

    @app.get("/contexts/{cid}")
    def get_context(cid: str, format: Optional[str] = None):
        ctx = _context_or_none(cid)
        if ctx is None:
            return _error(404, f"unknown context {cid}")
        if format == "cxt":
            return PlainTextResponse(write_cxt(ctx))
        meta = store.context_meta(cid)
        return {
            **meta,
            "object_names": list(ctx.object_names),
            "attribute_names": list(ctx.attribute_names),
            "rows": ["".join("X" if j in row else "." for j in
                     range(ctx.num_attributes)) for row in ctx.rows],
        }

    @app.get("/contexts/{cid}/base")
    def get_base(cid: str, wait: bool = False,
                 budget: Optional[float] = None):
        ctx = _context_or_none(cid)
        if ctx is None:
            return _error(404, f"unknown context {cid}")
        limit = base_budget if budget is None else budget
        if wait:
            try:
                items = [_base_implication_view(ctx, p, c)
                         for p, c in pseudo_intents(ctx, budget=limit)]
            except BaseTimeout as exc:
                return _error(503, str(exc), produced=exc.produced)
            return {"status": "done", "implications": items}
        job = store._bases.get(cid)
        if job is None:
            job = {"status": "running", "implications": []}
            store._bases[cid] = job

            def worker():
                try:
                    for p, c in pseudo_intents(ctx, budget=limit):
                        job["implications"].append(
                            _base_implication_view(ctx, p, c))
                    job["status"] = "done"
                except BaseTimeout as exc:
                    job["status"] = "timeout"
                    job["detail"] = str(exc)

            threading.Thread(target=worker, daemon=True).start()
        if job["status"] == "running":
            return JSONResponse(status_code=202, content={
                "status": "running",
                "produced": len(job["implications"]),
            })
        if job["status"] == "timeout":
            return _error(503, job.get("detail", "base computation timed out"),
                          produced=len(job["implications"]))
        return {"status": "done", "implications": job["implications"]}

    def _parse_candidate(ctx: FormalContext, body: dict) -> CandidateObject:
        attrs = body.get("attributes", [])
        intent = ctx.attribute_set(attrs)
        return CandidateObject(body.get("name", "candidate"), intent)

    @app.post("/contexts/{cid}/inspect")
    async def inspect(cid: str, request: Request):
        ctx = _context_or_none(cid)
        if ctx is None:
            return _error(404, f"unknown context {cid}")
        try:
            body = json.loads(await request.body() or b"")
        except json.JSONDecodeError:
            return _error(400, "body must be a JSON object")
        method = body.get("method", "closure")
        use_complement = bool(body.get("complement", False))
        if method not in ("closure", "base"):
            return _error(400, f"unknown method {method!r}")
        if use_complement and method != "closure":
            return _error(400, "complement requires method='closure'")
        try:
            cand = _parse_candidate(ctx, body)
        except ValueError as exc:
            return _error(422, str(exc))
        # a throwaway session gives the same grouping and ordering the
        # interactive flow uses, without touching the store
        name = cand.name
        while name in ctx.object_names:
            name += "*"
        probe = CandidateObject(name, cand.intent)
        try:
            session = open_session(ctx, probe, mode=method,
                                   use_complement=use_complement,
                                   budget=base_budget)
        except BaseTimeout as exc:
            return _error(503, str(exc))
        view = session_view("", session, cid)
        return {"questions": view["questions"],
                "hand_checks": view["hand_checks"]}

    @app.post("/contexts/{cid}/sessions")
    async def create_session(cid: str, request: Request):
        ctx = _context_or_none(cid)
        if ctx is None:
            return _error(404, f"unknown context {cid}")
        try:
            body = json.loads(await request.body() or b"")
        except json.JSONDecodeError:
            return _error(400, "body must be a JSON object")
        mode = body.get("mode", "closure")
        use_complement = bool(body.get("use_complement", False))
        if mode not in ("closure", "base"):
            return _error(400, f"unknown mode {mode!r}")
        if use_complement and mode != "closure":
            return _error(400, "complement requires mode='closure'")
        if "name" not in body:
            return _error(400, "candidate needs a name")
        try:
            cand = _parse_candidate(ctx, body)
        except ValueError as exc:
            return _error(422, str(exc))
        if cand.name in ctx.object_names:
            return _error(409, f"object name {cand.name!r} already present")
        try:
            session = open_session(ctx, cand, mode=mode,
                                   use_complement=use_complement,
                                   budget=base_budget)
        except BaseTimeout as exc:
            return _error(503, str(exc))
        sid = store.put_session(session, cid)
        return session_view(sid, session, cid)

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        if not store.has_session(sid):
            return _error(404, f"unknown session {sid}")
        session = store.session(sid)
        return session_view(sid, session, store.session_meta(sid)["context_id"])

    @app.post("/sessions/{sid}/answers")
    async def post_answer(sid: str, request: Request):
        if not store.has_session(sid):
            return _error(404, f"unknown session {sid}")
        session = store.session(sid)
        context_id = store.session_meta(sid)["context_id"]
        try:
            body = json.loads(await request.body() or b"")
        except json.JSONDecodeError:
            return _error(400, "body must be a JSON object")
        qid = body.get("question_id")
        verdict = body.get("verdict")
        if verdict not in ("accept", "reject"):
            return _error(400, "verdict must be accept or reject")
        try:
            session.answer(qid, verdict)
        except KeyError:
            if _seen_question(session, qid):
                return _error(409, f"question {qid} is stale; "
                                   "fetch the current batch")
            return _error(404, f"unknown question {qid}")
        except DuplicateAnswerError as exc:
            return _error(409, str(exc))
        except SessionStateError as exc:
            return _error(409, str(exc))
        store.save_session(sid, session, context_id)
        return session_view(sid, session, context_id)

    @app.post("/sessions/{sid}/commit")
    def commit_session(sid: str):
        if not store.has_session(sid):
            return _error(404, f"unknown session {sid}")
        session = store.session(sid)
        context_id = store.session_meta(sid)["context_id"]
        with store.lock:
            if session.state != "clean":
                return _error(
                    409, f"commit requires a clean session, "
                         f"not {session.state!r}")
            if store.context_meta(context_id).get("child") is not None:
                return _error(409, "stale snapshot: a newer context version "
                                   "exists; rebase the session",
                              rebase_required=True)
            try:
                new_ctx = session.commit()
            except SessionStateError as exc:
                return _error(409, str(exc))
            meta = store.put_context(new_ctx, parent=context_id)
            store.set_child(context_id, meta["id"])
            store.save_session(sid, session, context_id)
        return {"context_id": meta["id"], "version": meta["version"],
                "objects": new_ctx.num_objects}

    @app.post("/sessions/{sid}/rebase")
    def rebase_session(sid: str):
        if not store.has_session(sid):
            return _error(404, f"unknown session {sid}")
        session = store.session(sid)
        context_id = store.session_meta(sid)["context_id"]
        head = store.head_of(context_id)
        if head == context_id:
            return session_view(sid, session, context_id)
        try:
            session.rebase(store.context(head))
        except SessionStateError as exc:
            return _error(409, str(exc))
        except ValueError as exc:
            return _error(409, str(exc))
        store.save_session(sid, session, head)
        return session_view(sid, session, head)

    return app


def _seen_question(session: Session, qid) -> bool:
    for event in session.events:
        if event["kind"] != "question-batch":
            continue
        for q in event["payload"].get("questions", ()):
            if q["id"] == qid:
                return True
    return False
