"""Interactive correction of one candidate row, driven by expert verdicts.

A session snapshots a context, generates implication questions about the
candidate's attribute set, applies each accepted correction, and regenerates
until nothing is left to ask (``clean``), after which the corrected row can be
committed.  Everything that happens is appended to an event log from which the
whole session can be replayed bit-exactly.

The invariants here assume the expert is consistent (accepted implications are
actually true of the domain); contradictory verdicts are applied literally and
show up as oscillating corrections, stopped by the round cap.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from typing import Iterable, Optional, Sequence

from .bitset import BitSet
from .canonical import inspect_base
from .context import CandidateObject, FormalContext
from .crucial import inspect_closure, max_intent_questions
from .formats import read_cxt, write_cxt
from .implications import Implication, support

ROUND_CAP_FACTOR = 2  # accepted corrections per attribute polarity

ORIGIN_CLOSURE = "closure"
ORIGIN_BASE = "base"
ORIGIN_COMPLEMENT = "complement-closure"
ORIGIN_MAX_INTENT_EXTEND = "max-intent-I1"
ORIGIN_MAX_INTENT_RETRACT = "max-intent-I2"
ORIGIN_INCREMENTAL = "incremental"

_HAND_CHECK_ORIGINS = (ORIGIN_MAX_INTENT_EXTEND, ORIGIN_MAX_INTENT_RETRACT)


class SessionStateError(RuntimeError):
    """Operation not allowed in the session's current state."""


class DuplicateAnswerError(RuntimeError):
    """The question already has a verdict."""


class ReplayError(RuntimeError):
    """Event log does not reproduce the recorded session bit-exactly."""


@dataclass
class Question:
    id: str
    space: str  # "original" | "complement"
    implication: Implication
    origin: str
    support_objects: tuple[str, ...]
    status: str = "open"

    def key(self) -> tuple[str, int, int, int]:
        """Identity of the question text; rejection is terminal per key."""
        imp = self.implication
        return (self.space, imp.premise.mask, imp.positives.mask,
                imp.negatives.mask)

    @property
    def hand_check(self) -> bool:
        return self.origin in _HAND_CHECK_ORIGINS


@dataclass(frozen=True)
class Answer:
    question_id: str
    verdict: str  # "accept" | "reject"
    timestamp: str


def _question_id(round_no: int, space: str, imp: Implication) -> str:
    text = f"{round_no}|{space}|{imp.premise.mask:x}|{imp.positives.mask:x}|{imp.negatives.mask:x}"
    return hashlib.sha1(text.encode()).hexdigest()[:12]


def _order_key(q: Question):
    rank = 1 if q.hand_check else 0
    imp = q.implication
    return (
        rank,
        -len(q.support_objects),
        q.space,
        tuple(imp.premise),
        imp.positives.mask,
        imp.negatives.mask,
        q.origin,
    )


class Session:
    """State machine over one candidate row.

    States: ``questioning`` while open questions exist, ``clean`` when none
    remain, ``committed`` after the corrected row is appended, ``aborted``
    when the round cap trips.  Transitions are monotone; answers are only
    accepted while questioning and commit only from clean.
    """

    def __init__(
        self,
        snapshot: FormalContext,
        candidate: CandidateObject,
        mode: str = "closure",
        use_complement: bool = False,
        budget: Optional[float] = None,
        _replaying: bool = False,
    ):
        if mode not in ("closure", "base"):
            raise ValueError(f"unknown mode {mode!r}")
        if use_complement and mode != "closure":
            raise ValueError("complement questions require mode='closure'")
        if candidate.intent.width != snapshot.num_attributes:
            raise ValueError("width mismatch: candidate vs context")
        if candidate.name in snapshot.object_names:
            raise ValueError(f"object name {candidate.name!r} already present")
        self.snapshot = snapshot
        self.candidate = candidate
        self.mode = mode
        self.use_complement = use_complement
        self.budget = budget
        self.round = 1
        self.state = "questioning"
        self.questions: list[Question] = []
        self.answer_log: list[Answer] = []
        self.events: list[dict] = []
        self._rejected: set[tuple] = set()
        self._append_event("open", {
            "context": write_cxt(snapshot),
            "candidate": {
                "name": candidate.name,
                "attributes": list(snapshot.attribute_names_of(candidate.intent)),
            },
            "mode": mode,
            "use_complement": use_complement,
        })
        self._regenerate(incremental_keys=frozenset())

    # -- internals ----------------------------------------------------------

    def _append_event(self, kind: str, payload: dict) -> None:
        self.events.append({"seq": len(self.events), "kind": kind,
                            "payload": payload})

    def _generate(self, incremental_keys: frozenset) -> list[Question]:
        ctx = self.snapshot
        intent = self.candidate.intent
        raw: list[tuple[str, Implication, str, FormalContext]] = []
        if self.mode == "closure":
            for imp in inspect_closure(ctx, intent):
                raw.append(("original", imp, ORIGIN_CLOSURE, ctx))
            if self.use_complement:
                cctx = ctx.complement()
                cintent = intent.invert()
                for imp in inspect_closure(cctx, cintent):
                    raw.append(("complement", imp, ORIGIN_COMPLEMENT, cctx))
        else:
            for imp in inspect_base(ctx, intent, budget=self.budget):
                raw.append(("original", imp, ORIGIN_BASE, ctx))
        extensions, retractions = max_intent_questions(ctx, intent)
        for imp in extensions:
            raw.append(("original", imp, ORIGIN_MAX_INTENT_EXTEND, ctx))
        for imp in retractions:
            raw.append(("original", imp, ORIGIN_MAX_INTENT_RETRACT, ctx))

        out = []
        for space, imp, origin, sctx in raw:
            key = (space, imp.premise.mask, imp.positives.mask,
                   imp.negatives.mask)
            if key in self._rejected:
                continue
            if origin not in _HAND_CHECK_ORIGINS:
                names = sctx.object_names_of(support(sctx, imp))
                if key in incremental_keys:
                    origin = ORIGIN_INCREMENTAL
            else:
                names = ()
            out.append(Question(
                id=_question_id(self.round, space, imp),
                space=space,
                implication=imp,
                origin=origin,
                support_objects=tuple(names),
            ))
        out.sort(key=_order_key)
        return out

    def _regenerate(self, incremental_keys: frozenset) -> None:
        self.questions = self._generate(incremental_keys)
        if not any(q.status == "open" for q in self.questions):
            self.state = "clean"
        payload = {
            "round": self.round,
            "state": self.state,
            "questions": [_serialize_question(q) for q in self.questions],
        }
        self._append_event("question-batch", payload)

    # -- public API ----------------------------------------------------------

    def next_questions(self) -> list[Question]:
        """Open questions in presentation order (hand checks last)."""
        return [q for q in self.questions if q.status == "open"]

    def find_question(self, question_id: str) -> Question:
        for q in self.questions:
            if q.id == question_id:
                return q
        raise KeyError(f"unknown question id {question_id!r}")

    def answer(self, question_id: str, verdict: str,
               _timestamp: Optional[str] = None) -> "Session":
        if verdict not in ("accept", "reject"):
            raise ValueError(f"unknown verdict {verdict!r}")
        if self.state != "questioning":
            raise SessionStateError(
                f"cannot answer in state {self.state!r}")
        q = self.find_question(question_id)
        if q.status != "open":
            raise DuplicateAnswerError(
                f"question {question_id} already {q.status}")
        ts = _timestamp or datetime.now(timezone.utc).isoformat()
        ans = Answer(question_id=question_id, verdict=verdict, timestamp=ts)
        self.answer_log.append(ans)
        payload = {"question_id": question_id, "verdict": verdict,
                   "timestamp": ts}
        if q.hand_check:
            payload["unsupported_by_data"] = True
        self._append_event("answer", payload)
        if verdict == "reject":
            q.status = "rejected"
            self._rejected.add(q.key())
            if not any(p.status == "open" for p in self.questions):
                self.state = "clean"
            return self
        q.status = "accepted"
        imp = q.implication
        intent = self.candidate.intent
        if q.space == "original":
            intent = (intent | imp.positives) - imp.negatives
        else:
            # complement coordinates: present there means absent here
            intent = (intent - imp.positives) | imp.negatives
        self.candidate = replace(self.candidate, intent=intent)
        self.round += 1
        cap = ROUND_CAP_FACTOR * self.snapshot.num_attributes
        if self.round > cap:
            self.state = "aborted"
            self._append_event("question-batch", {
                "round": self.round,
                "state": self.state,
                "diagnostic": f"round cap {cap} exceeded; "
                              "verdicts look contradictory",
                "questions": [],
            })
            self.questions = []
            return self
        self._regenerate(incremental_keys=frozenset())
        return self

    def commit(self) -> FormalContext:
        if self.state != "clean":
            raise SessionStateError(
                f"commit requires a clean session, not {self.state!r}")
        ctx = self.snapshot.with_object(self.candidate.name,
                                        self.candidate.intent)
        self.state = "committed"
        self._append_event("commit", {
            "object": self.candidate.name,
            "attributes": list(
                self.snapshot.attribute_names_of(self.candidate.intent)),
        })
        return ctx

    def rebase(self, new_snapshot: FormalContext) -> "Session":
        """Re-point the session at a newer context version.

        Questions are regenerated from scratch; any question that the old
        snapshot would not have produced is tagged ``incremental`` so the
        expert sees exactly what the newly committed rows added.
        """
        if self.state not in ("questioning", "clean"):
            raise SessionStateError(
                f"cannot rebase in state {self.state!r}")
        if new_snapshot.num_attributes != self.snapshot.num_attributes:
            raise ValueError("width mismatch: rebase target")
        if self.candidate.name in new_snapshot.object_names:
            raise ValueError(
                f"object name {self.candidate.name!r} already present")
        old_keys = {q.key() for q in self._generate(frozenset())}
        self.snapshot = new_snapshot
        fresh = self._generate(frozenset())
        incremental = frozenset(
            q.key() for q in fresh if q.key() not in old_keys
            and not q.hand_check)
        self._append_event("rebase", {
            "context": write_cxt(new_snapshot),
            "incremental": sorted(
                "|".join(map(str, k)) for k in incremental),
        })
        self.state = "questioning"
        self._regenerate(incremental_keys=incremental)
        return self

    # -- event log -----------------------------------------------------------

    def to_jsonl(self) -> str:
        return "".join(json.dumps(e, sort_keys=True) + "\n"
                       for e in self.events)

    @classmethod
    def replay(cls, events: Iterable[dict]) -> "Session":
        """Rebuild a session from its event log, verifying every batch.

        Raises ReplayError if a regenerated question batch differs from the
        recorded one in any bit.
        """
        events = list(events)
        if not events or events[0]["kind"] != "open":
            raise ReplayError("log must start with an open event")
        head = events[0]["payload"]
        ctx = read_cxt(head["context"])
        intent = ctx.attribute_set(head["candidate"]["attributes"])
        cand = CandidateObject(head["candidate"]["name"], intent)
        session = cls(ctx, cand, mode=head["mode"],
                      use_complement=head["use_complement"])
        cursor = 1  # session already emitted open + first batch
        _check_batch(session, events, cursor)
        cursor += 1
        while cursor < len(events):
            event = events[cursor]
            kind = event["kind"]
            payload = event["payload"]
            if kind == "answer":
                session.answer(payload["question_id"], payload["verdict"],
                               _timestamp=payload["timestamp"])
                cursor += 1
                if payload["verdict"] == "accept":
                    _check_batch(session, events, cursor)
                    cursor += 1
            elif kind == "rebase":
                session.rebase(read_cxt(payload["context"]))
                cursor += 1
                _check_batch(session, events, cursor)
                cursor += 1
            elif kind == "commit":
                session.commit()
                cursor += 1
            else:
                raise ReplayError(f"unexpected event kind {kind!r}")
        return session

    @classmethod
    def replay_jsonl(cls, text: str) -> "Session":
        return cls.replay(json.loads(line) for line in text.splitlines()
                          if line.strip())


def _serialize_question(q: Question) -> dict:
    imp = q.implication
    return {
        "id": q.id,
        "space": q.space,
        "origin": q.origin,
        "status": q.status,
        "premise": imp.premise.mask,
        "positives": imp.positives.mask,
        "negatives": imp.negatives.mask,
        "support": list(q.support_objects),
    }


def _check_batch(session: Session, events: Sequence[dict],
                 cursor: int) -> None:
    if cursor >= len(events) or events[cursor]["kind"] != "question-batch":
        raise ReplayError(f"expected question-batch at seq {cursor}")
    recorded = events[cursor]["payload"]
    live = session.events[cursor]["payload"]
    if recorded != live:
        raise ReplayError(
            f"replayed batch at seq {cursor} diverges from the log")


def open_session(
    ctx: FormalContext,
    cand: CandidateObject,
    mode: str = "closure",
    use_complement: bool = False,
    budget: Optional[float] = None,
) -> Session:
    """Start a correction session for one candidate row."""
    return Session(ctx, cand, mode=mode, use_complement=use_complement,
                   budget=budget)
