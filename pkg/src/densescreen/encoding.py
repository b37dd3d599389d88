"""Dense encoders for PICO queries and study passages.

Two implementations behind one interface: a deterministic feature-hash
encoder (offline use and tests) and a client for a remote encoding
service speaking a small JSON-over-HTTP contract.
"""
from __future__ import annotations

import logging
import re
import time
from dataclasses import dataclass

import numpy as np
import requests

from .errors import (
    CountMismatch,
    DimMismatch,
    EmptyText,
    EncodeFailed,
    InvalidQuery,
    RemoteUnavailable,
)
from .nbib import Study

log = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"[a-z0-9]+")

FNV64_OFFSET = 0xCBF29CE484222325
FNV64_PRIME = 0x100000001B3


@dataclass
class PicoQuery:
    population: str = ""
    intervention: str = ""
    comparison: str = ""
    outcome: str = ""


@dataclass
class EncoderConfig:
    kind: str = "hash"  # "hash" or "remote"
    dim: int = 256
    q_max_len: int = 128
    p_max_len: int = 256
    endpoint: str = ""
    batch_size: int = 32

    def fingerprint(self) -> str:
        return f"{self.kind}:{self.dim}:{self.q_max_len}:{self.p_max_len}:{self.endpoint}"


def serialize_pico(q: PicoQuery) -> str:
    """Join non-empty PICO fields with single spaces, P I C O order."""
    parts = []
    for text in (q.population, q.intervention, q.comparison, q.outcome):
        collapsed = " ".join(text.split())
        if collapsed:
            parts.append(collapsed)
    if not parts:
        raise InvalidQuery("all PICO fields are empty")
    return " ".join(parts)


def serialize_passage(s: Study) -> str:
    """Title, one space, abstract; trimmed."""
    return f"{s.title} {s.abstract}".strip()


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


def fnv1a64(token: str) -> int:
    h = FNV64_OFFSET
    for b in token.encode("utf-8"):
        h ^= b
        h = (h * FNV64_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


class HashEncoder:
    """Signed feature-hash encoder: FNV-1a 64 per token, index = hash mod
    dim, sign from bit 63, signed counts L2-normalized."""

    def __init__(self, cfg: EncoderConfig):
        self.cfg = cfg

    @property
    def dim(self) -> int:
        return self.cfg.dim

    def encode(self, text: str, role: str) -> np.ndarray:
        tokens = _truncate(tokenize(_require_text(text)), role, self.cfg)
        vec = np.zeros(self.cfg.dim, dtype=np.float64)
        for tok in tokens:
            h = fnv1a64(tok)
            sign = 1.0 if (h >> 63) == 0 else -1.0
            vec[h % self.cfg.dim] += sign
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            log.warning("hash encoder produced a zero vector for %r", text[:40])
            return vec
        return vec / norm

    def encode_batch(self, texts: list[str], role: str) -> list[np.ndarray]:
        return [self.encode(t, role) for t in texts]


class RemoteEncoder:
    """Client for a remote encoder: POST {"texts": [...], "role": ...} ->
    {"vectors": [[...]]}. Retries transient failures 3 times with
    exponential backoff; dimension is learned from the first response and
    enforced afterwards."""

    MAX_ATTEMPTS = 3
    BACKOFF_BASE = 0.5

    def __init__(self, cfg: EncoderConfig, session: requests.Session | None = None):
        self.cfg = cfg
        self._session = session or requests.Session()
        self._dim: int | None = cfg.dim if cfg.dim > 0 else None

    @property
    def dim(self) -> int | None:
        return self._dim

    def encode(self, text: str, role: str) -> np.ndarray:
        return self.encode_batch([text], role)[0]

    def encode_batch(self, texts: list[str], role: str) -> list[np.ndarray]:
        payload_texts = [
            " ".join(_truncate(tokenize(_require_text(t)), role, self.cfg)) for t in texts
        ]
        body = self._post({"texts": payload_texts, "role": role})
        vectors = body.get("vectors")
        if not isinstance(vectors, list) or len(vectors) != len(texts):
            raise CountMismatch(
                f"remote returned {0 if not isinstance(vectors, list) else len(vectors)} "
                f"vectors for {len(texts)} texts"
            )
        out = []
        for v in vectors:
            arr = np.asarray(v, dtype=np.float64)
            if self._dim is None:
                self._dim = arr.shape[0]
            if arr.ndim != 1 or arr.shape[0] != self._dim:
                raise DimMismatch(f"remote vector dim {arr.shape} != {self._dim}")
            if not np.all(np.isfinite(arr)):
                raise DimMismatch("remote vector contains non-finite entries")
            out.append(arr)
        return out

    def _post(self, payload: dict) -> dict:
        last: Exception | None = None
        for attempt in range(self.MAX_ATTEMPTS):
            if attempt:
                time.sleep(self.BACKOFF_BASE * (2 ** (attempt - 1)))
            try:
                resp = self._session.post(self.cfg.endpoint, json=payload, timeout=30)
            except requests.RequestException as exc:
                last = RemoteUnavailable(None, str(exc))
                continue
            if resp.status_code != 200:
                last = RemoteUnavailable(resp.status_code)
                continue
            return resp.json()
        raise last  # type: ignore[misc]


def make_encoder(cfg: EncoderConfig):
    if cfg.kind == "hash":
        return HashEncoder(cfg)
    if cfg.kind == "remote":
        return RemoteEncoder(cfg)
    raise ValueError(f"unknown encoder kind: {cfg.kind}")


def encode(text: str, role: str, cfg: EncoderConfig) -> np.ndarray:
    return make_encoder(cfg).encode(text, role)


def encode_corpus(
    studies: list[Study], cfg: EncoderConfig, encoder=None
) -> list[tuple[str, np.ndarray]]:
    """One passage vector per study, in input order. Batching is internal;
    errors carry the offending pmid."""
    if not studies:
        raise EmptyText("corpus is empty")
    enc = encoder if encoder is not None else make_encoder(cfg)
    out: list[tuple[str, np.ndarray]] = []
    bs = max(1, cfg.batch_size)
    for start in range(0, len(studies), bs):
        batch = studies[start : start + bs]
        try:
            vecs = enc.encode_batch([serialize_passage(s) for s in batch], "passage")
        except CountMismatch:
            raise
        except Exception:
            # re-encode one by one so the failing pmid is known
            vecs = []
            for s in batch:
                try:
                    vecs.append(enc.encode(serialize_passage(s), "passage"))
                except Exception as inner:
                    raise EncodeFailed(s.pmid, inner) from inner
        for s, v in zip(batch, vecs):
            out.append((s.pmid, v))
    return out


def _require_text(text: str) -> str:
    if not text.strip():
        raise EmptyText("cannot encode empty text")
    return text


def _truncate(tokens: list[str], role: str, cfg: EncoderConfig) -> list[str]:
    limit = cfg.q_max_len if role == "query" else cfg.p_max_len
    return tokens[:limit]
