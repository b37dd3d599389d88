"""REST API tying ingestion, encoding, ranking, sessions, and re-ranking
together as one deployable service with an internal job queue.

Endpoints (JSON unless noted):
    POST /corpora                multipart nbib -> {corpus_id, job_id}
    GET  /jobs/{job_id}
    POST /reviews                {corpus_id, pico{p,i,c,o}, params{alpha,beta,gamma}, page_size}
    GET  /reviews/{id}/page
    POST /reviews/{id}/judgements  {items: [{pmid, label}], page_fingerprint}
    GET  /reviews/{id}/stats
    POST /reviews/{id}/pause     POST /reviews/{id}/resume
    GET  /reviews/{id}/export    CSV

Errors are {"error_code": ..., "message": ...}.
"""
from __future__ import annotations

import hashlib
import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request, UploadFile
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from .. import nbib
from ..encoding import EncoderConfig, encode_corpus, make_encoder, serialize_pico, PicoQuery
from ..errors import DenseScreenError, InvalidQuery, PageIncomplete, WrongState
from ..feedback import RocchioParams
from ..ranking import VectorIndex, build_index
from ..session import DEFAULT_PAGE_SIZE, ReviewSession, replay_session
from .jobs import JobQueue
from .store import Store


class ApiError(Exception):
    def __init__(self, status: int, error_code: str, message: str):
        self.status = status
        self.error_code = error_code
        self.message = message
        super().__init__(message)


@dataclass
class CorpusEntry:
    corpus_id: str
    status: str = "pending"  # pending | ready | failed
    studies: list = field(default_factory=list)
    index: VectorIndex | None = None
    report: dict | None = None


@dataclass
class SessionEntry:
    session: ReviewSession
    lock: threading.RLock = field(default_factory=threading.RLock)
    consumed_fingerprints: set[str] = field(default_factory=set)


class ServiceState:
    def __init__(self, data_dir: str, encoder_cfg: EncoderConfig | None = None):
        self.store = Store(data_dir)
        self.encoder_cfg = encoder_cfg or EncoderConfig()
        self.encoder = make_encoder(self.encoder_cfg)
        self.jobs = JobQueue()
        self.corpora: dict[str, CorpusEntry] = {}
        self.sessions: dict[str, SessionEntry] = {}
        self._load()

    def _load(self) -> None:
        """Rebuild committed state from disk after a (re)start."""
        for corpus_id in self.store.list_corpora():
            meta = self.store.load_corpus_meta(corpus_id) or {}
            entry = CorpusEntry(corpus_id=corpus_id, status=meta.get("status", "pending"))
            if entry.status == "ready":
                loaded = self.store.load_ingested(corpus_id)
                if loaded is None:
                    entry.status = "failed"
                else:
                    studies, report, pairs = loaded
                    entry.studies = studies
                    entry.report = report
                    entry.index = build_index(pairs)
            self.corpora[corpus_id] = entry
        for session_id in self.store.list_sessions():
            meta = self.store.load_session_meta(session_id)
            if meta is None:
                continue
            corpus = self.corpora.get(meta["corpus_id"])
            if corpus is None or corpus.index is None:
                continue
            events = self.store.load_events(session_id)
            session = replay_session(
                session_id=session_id,
                corpus_id=meta["corpus_id"],
                index=corpus.index,
                q0=meta["q0"],
                params=RocchioParams(**meta["params"]),
                page_size=meta["page_size"],
                events=events,
                stop_at_last_page=meta.get("stop_at_last_page", False),
                paused=meta.get("paused", False),
            )
            self.sessions[session_id] = SessionEntry(session=session)

    # -- ingestion -----------------------------------------------------------

    def upload_corpus(self, raw: bytes) -> tuple[str, str]:
        if not raw.strip():
            raise ApiError(400, "EmptyUpload", "uploaded file is empty")
        corpus_id = uuid.uuid4().hex
        self.store.save_raw_corpus(corpus_id, raw)
        self.corpora[corpus_id] = CorpusEntry(corpus_id=corpus_id)
        job = self.jobs.submit(
            "ingest_encode_rank", corpus_id, lambda: self._ingest(corpus_id, raw)
        )
        return corpus_id, job.job_id

    def _ingest(self, corpus_id: str, raw: bytes) -> None:
        entry = self.corpora[corpus_id]
        try:
            records = nbib.parse_nbib(raw.decode("utf-8"))
            studies, report = nbib.build_corpus(records)
            if not studies:
                raise DenseScreenError("no valid studies in upload")
            pairs = encode_corpus(studies, self.encoder_cfg, encoder=self.encoder)
            index = build_index(pairs)
        except Exception:
            entry.status = "failed"
            self.store.save_corpus_meta(corpus_id, {"status": "failed"})
            raise
        entry.studies = studies
        entry.report = report.to_dict()
        entry.index = index
        entry.status = "ready"
        self.store.save_ingested(
            corpus_id, studies, report, pairs, self.encoder_cfg.fingerprint()
        )

    # -- sessions -------------------------------------------------------------

    def create_review(
        self,
        corpus_id: str,
        pico: PicoQuery,
        params: RocchioParams,
        page_size: int,
        stop_at_last_page: bool = False,
    ) -> str:
        corpus = self.corpora.get(corpus_id)
        if corpus is None:
            raise ApiError(404, "UnknownCorpus", f"no corpus {corpus_id}")
        if corpus.status != "ready" or corpus.index is None:
            raise ApiError(409, "CorpusNotReady", f"corpus is {corpus.status}")
        try:
            q0 = self.encoder.encode(serialize_pico(pico), "query")
        except InvalidQuery as exc:
            raise ApiError(400, "InvalidQuery", str(exc))
        session_id = uuid.uuid4().hex
        session = ReviewSession(
            session_id=session_id,
            corpus_id=corpus_id,
            index=corpus.index,
            q0=q0,
            params=params,
            page_size=page_size,
            stop_at_last_page=stop_at_last_page,
        )
        self.store.save_session_meta(
            session_id,
            {
                "corpus_id": corpus_id,
                "pico": vars(pico),
                "q0": [float(x) for x in q0],
                "params": {"alpha": params.alpha, "beta": params.beta, "gamma": params.gamma},
                "page_size": page_size,
                "stop_at_last_page": stop_at_last_page,
                "paused": False,
            },
        )
        self.sessions[session_id] = SessionEntry(session=session)
        return session_id

    def get_entry(self, session_id: str) -> SessionEntry:
        entry = self.sessions.get(session_id)
        if entry is None:
            raise ApiError(404, "UnknownSession", f"no session {session_id}")
        return entry

    def page_payload(self, entry: SessionEntry) -> dict:
        session = entry.session
        studies = {s.pmid: s for s in self.corpora[session.corpus_id].studies}
        items = []
        for i, (pmid, score) in enumerate(session.current_page, start=1):
            s = studies[pmid]
            event = session.active.get(pmid)
            items.append(
                {
                    "pmid": pmid,
                    "title": s.title,
                    "abstract": s.abstract,
                    "authors": s.authors,
                    "score": score,
                    "rank_on_page": i,
                    "label": event.label if event else None,
                }
            )
        return {
            "session_id": session.session_id,
            "status": session.status,
            "page_no": session.pages_completed + 1,
            "page_size": session.page_size,
            "items": items,
            "unjudged_total": len(session.current_ranking)
            + sum(1 for p, _ in session.current_page if p not in session.active),
            "page_fingerprint": page_fingerprint(session),
        }

    def submit_page_judgements(
        self, session_id: str, items: list[tuple[str, str]], fingerprint: str
    ) -> str:
        entry = self.get_entry(session_id)
        with entry.lock:
            session = entry.session
            if session.status != "screening":
                raise ApiError(409, "WrongState", f"session is {session.status}")
            if self.jobs.has_active(session_id, "rerank"):
                raise ApiError(409, "StaleSubmission", "a re-rank is already in flight")
            current = page_fingerprint(session)
            if fingerprint != current or fingerprint in entry.consumed_fingerprints:
                raise ApiError(
                    409, "StaleSubmission", "page already completed or fingerprint mismatch"
                )
            page_pmids = set(session.current_page_pmids())
            submitted = [p for p, _ in items]
            extra = [p for p in submitted if p not in page_pmids]
            if extra:
                raise ApiError(400, "NotOnCurrentPage", f"pmids not on page: {extra}")
            missing = page_pmids - set(submitted) - set(session.active)
            if missing:
                raise ApiError(400, "PageIncomplete", f"unjudged pmids: {sorted(missing)}")
            bad_labels = [lab for _, lab in items if lab not in ("include", "exclude", "maybe")]
            if bad_labels:
                raise ApiError(400, "InvalidLabel", f"unknown labels: {bad_labels}")
            # all inputs validated above, so applying the batch cannot
            # fail part-way and the submission stays atomic
            before = len(session.judgements)
            for pmid, label in items:
                session.record_judgement(pmid, label)
            self.store.append_events(session_id, session.judgements[before:])
            entry.consumed_fingerprints.add(fingerprint)
            job = self.jobs.submit("rerank", session_id, lambda: self._rerank(session_id))
            return job.job_id

    def _rerank(self, session_id: str) -> None:
        entry = self.get_entry(session_id)
        with entry.lock:
            try:
                entry.session.complete_page()
            except PageIncomplete as exc:
                raise DenseScreenError(str(exc))

    def set_paused(self, session_id: str, paused: bool) -> None:
        entry = self.get_entry(session_id)
        with entry.lock:
            try:
                if paused:
                    entry.session.pause()
                else:
                    entry.session.resume()
            except WrongState as exc:
                raise ApiError(409, "WrongState", str(exc))
            meta = self.store.load_session_meta(session_id) or {}
            meta["paused"] = paused
            self.store.save_session_meta(session_id, meta)


def page_fingerprint(session: ReviewSession) -> str:
    basis = f"{session.session_id}:{session.pages_completed}:" + ",".join(
        session.current_page_pmids()
    )
    return hashlib.sha1(basis.encode("utf-8")).hexdigest()


# -- request models ------------------------------------------------------------


class PicoBody(BaseModel):
    p: str = ""
    i: str = ""
    c: str = ""
    o: str = ""


class ParamsBody(BaseModel):
    alpha: float = 1.0
    beta: float = 0.8
    gamma: float = 0.2


class CreateReviewBody(BaseModel):
    corpus_id: str
    pico: PicoBody
    params: ParamsBody = ParamsBody()
    page_size: int = DEFAULT_PAGE_SIZE
    stop_at_last_page: bool = False


class JudgementItem(BaseModel):
    pmid: str
    label: str


class JudgementsBody(BaseModel):
    items: list[JudgementItem]
    page_fingerprint: str


# -- app factory ---------------------------------------------------------------


def create_app(data_dir: str, encoder_cfg: EncoderConfig | None = None) -> FastAPI:
    state = ServiceState(data_dir, encoder_cfg)
    app = FastAPI(title="densescreen")
    app.state.service = state

    @app.exception_handler(ApiError)
    async def api_error_handler(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"error_code": exc.error_code, "message": exc.message},
        )

    @app.post("/corpora")
    async def upload_corpus(file: UploadFile):
        raw = await file.read()
        corpus_id, job_id = state.upload_corpus(raw)
        return {"corpus_id": corpus_id, "job_id": job_id}

    @app.get("/corpora/{corpus_id}")
    def get_corpus(corpus_id: str):
        entry = state.corpora.get(corpus_id)
        if entry is None:
            raise ApiError(404, "UnknownCorpus", f"no corpus {corpus_id}")
        return {
            "corpus_id": corpus_id,
            "status": entry.status,
            "report": entry.report,
            "size": len(entry.studies),
        }

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str):
        job = state.jobs.get(job_id)
        if job is None:
            raise ApiError(404, "UnknownJob", f"no job {job_id}")
        return job.to_dict()

    @app.post("/reviews")
    def create_review(body: CreateReviewBody):
        pico = PicoQuery(
            population=body.pico.p,
            intervention=body.pico.i,
            comparison=body.pico.c,
            outcome=body.pico.o,
        )
        try:
            params = RocchioParams(
                alpha=body.params.alpha, beta=body.params.beta, gamma=body.params.gamma
            )
        except ValueError as exc:
            raise ApiError(400, "InvalidParams", str(exc))
        session_id = state.create_review(
            body.corpus_id, pico, params, body.page_size, body.stop_at_last_page
        )
        return {"session_id": session_id}

    @app.get("/reviews/{session_id}/page")
    def get_page(session_id: str):
        entry = state.get_entry(session_id)
        with entry.lock:
            return state.page_payload(entry)

    @app.post("/reviews/{session_id}/judgements")
    def submit_judgements(session_id: str, body: JudgementsBody):
        job_id = state.submit_page_judgements(
            session_id,
            [(item.pmid, item.label) for item in body.items],
            body.page_fingerprint,
        )
        return {"job_id": job_id}

    @app.get("/reviews/{session_id}/stats")
    def get_stats(session_id: str):
        entry = state.get_entry(session_id)
        with entry.lock:
            return entry.session.stats().to_dict()

    @app.post("/reviews/{session_id}/pause")
    def pause(session_id: str):
        state.set_paused(session_id, True)
        return {"status": "paused"}

    @app.post("/reviews/{session_id}/resume")
    def resume(session_id: str):
        state.set_paused(session_id, False)
        return {"status": "screening"}

    @app.get("/reviews/{session_id}/export")
    def export(session_id: str):
        entry = state.get_entry(session_id)
        with entry.lock:
            return PlainTextResponse(
                entry.session.export_results(), media_type="text/csv"
            )

    return app
