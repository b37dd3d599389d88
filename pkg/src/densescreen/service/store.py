"""Filesystem persistence for corpora and review sessions.

Layout under the data directory:

    corpora/<corpus_id>/raw.nbib        uploaded bytes
    corpora/<corpus_id>/meta.json       status + encoder fingerprint
    corpora/<corpus_id>/studies.json    accepted studies
    corpora/<corpus_id>/report.json     ingest report
    corpora/<corpus_id>/vectors.npz     pmids + passage vectors
    sessions/<session_id>/meta.json     query, params, page size, flags
    sessions/<session_id>/log.jsonl     append-only judgement log

Sessions are rebuilt by replaying the judgement log; the log plus the
corpus vectors fully determine the committed ranking.
"""
from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from ..nbib import CorpusReport, Study
from ..session import JudgementEvent


class Store:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        (self.root / "corpora").mkdir(parents=True, exist_ok=True)
        (self.root / "sessions").mkdir(parents=True, exist_ok=True)

    # -- corpora ------------------------------------------------------------

    def corpus_dir(self, corpus_id: str) -> Path:
        return self.root / "corpora" / corpus_id

    def save_raw_corpus(self, corpus_id: str, raw: bytes) -> None:
        d = self.corpus_dir(corpus_id)
        d.mkdir(parents=True, exist_ok=True)
        (d / "raw.nbib").write_bytes(raw)
        self.save_corpus_meta(corpus_id, {"status": "pending"})

    def save_corpus_meta(self, corpus_id: str, meta: dict) -> None:
        _write_json(self.corpus_dir(corpus_id) / "meta.json", meta)

    def load_corpus_meta(self, corpus_id: str) -> dict | None:
        return _read_json(self.corpus_dir(corpus_id) / "meta.json")

    def save_ingested(
        self,
        corpus_id: str,
        studies: list[Study],
        report: CorpusReport,
        pairs: list[tuple[str, np.ndarray]],
        fingerprint: str,
    ) -> None:
        d = self.corpus_dir(corpus_id)
        _write_json(d / "studies.json", [s.to_dict() for s in studies])
        _write_json(d / "report.json", report.to_dict())
        pmids = [p for p, _ in pairs]
        matrix = np.vstack([v for _, v in pairs]) if pairs else np.zeros((0, 0))
        np.savez(d / "vectors.npz", pmids=np.array(pmids), matrix=matrix)
        self.save_corpus_meta(
            corpus_id, {"status": "ready", "encoder_fingerprint": fingerprint}
        )

    def load_ingested(self, corpus_id: str):
        d = self.corpus_dir(corpus_id)
        studies_raw = _read_json(d / "studies.json")
        report_raw = _read_json(d / "report.json")
        if studies_raw is None or not (d / "vectors.npz").exists():
            return None
        studies = [Study(**s) for s in studies_raw]
        data = np.load(d / "vectors.npz", allow_pickle=False)
        pairs = [
            (str(p), data["matrix"][i]) for i, p in enumerate(data["pmids"].tolist())
        ]
        return studies, report_raw, pairs

    def list_corpora(self) -> list[str]:
        return sorted(p.name for p in (self.root / "corpora").iterdir() if p.is_dir())

    # -- sessions -------------------------------------------------------------

    def session_dir(self, session_id: str) -> Path:
        return self.root / "sessions" / session_id

    def save_session_meta(self, session_id: str, meta: dict) -> None:
        d = self.session_dir(session_id)
        d.mkdir(parents=True, exist_ok=True)
        _write_json(d / "meta.json", meta)

    def load_session_meta(self, session_id: str) -> dict | None:
        return _read_json(self.session_dir(session_id) / "meta.json")

    def append_events(self, session_id: str, events: list[JudgementEvent]) -> None:
        path = self.session_dir(session_id) / "log.jsonl"
        with open(path, "a", encoding="utf-8") as f:
            for event in events:
                f.write(json.dumps(event.to_dict(), sort_keys=True) + "\n")
            f.flush()
            os.fsync(f.fileno())

    def load_events(self, session_id: str) -> list[JudgementEvent]:
        path = self.session_dir(session_id) / "log.jsonl"
        if not path.exists():
            return []
        events = []
        with open(path, encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if line:
                    events.append(JudgementEvent.from_dict(json.loads(line)))
        return events

    def list_sessions(self) -> list[str]:
        return sorted(p.name for p in (self.root / "sessions").iterdir() if p.is_dir())


def _write_json(path: Path, payload) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(payload, sort_keys=True, indent=1), encoding="utf-8")
    tmp.replace(path)


def _read_json(path: Path):
    if not path.exists():
        return None
    return json.loads(path.read_text(encoding="utf-8"))
