"""Rocchio query-vector updating from cumulative include/exclude
judgements.

The updated query is alpha * q0 + beta * centroid(included vectors)
- gamma * centroid(excluded vectors), always anchored to the original
PICO query vector so a session is replayable from its judgement log.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimMismatch, UnknownPmid
from .ranking import VectorIndex

# flag defaults from the screening command line
DEFAULT_ALPHA = 1.0
DEFAULT_BETA = 0.8
DEFAULT_GAMMA = 0.2


@dataclass(frozen=True)
class RocchioParams:
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    gamma: float = DEFAULT_GAMMA

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {v}")


@dataclass
class FeedbackState:
    included: set[str] = field(default_factory=set)
    excluded: set[str] = field(default_factory=set)
    neutral: set[str] = field(default_factory=set)

    def judged(self) -> set[str]:
        return self.included | self.excluded | self.neutral


def centroid(vectors: list[np.ndarray], dim: int | None = None) -> np.ndarray:
    """Per-dimension arithmetic mean; the empty list yields the zero
    vector of the ambient dimension."""
    if not vectors:
        if dim is None:
            raise DimMismatch("ambient dim required for an empty centroid")
        return np.zeros(dim, dtype=np.float64)
    first = np.asarray(vectors[0], dtype=np.float64)
    acc = np.zeros(first.shape[0], dtype=np.float64)
    for v in vectors:
        arr = np.asarray(v, dtype=np.float64)
        if arr.shape != acc.shape:
            raise DimMismatch(f"centroid input dims differ: {arr.shape} vs {acc.shape}")
        acc += arr
    return acc / len(vectors)


def rocchio_update(
    q0: np.ndarray,
    pos: list[np.ndarray],
    neg: list[np.ndarray],
    p: RocchioParams = RocchioParams(),
) -> np.ndarray:
    q0 = np.asarray(q0, dtype=np.float64)
    dim = q0.shape[0]
    c_pos = centroid(pos, dim)
    c_neg = centroid(neg, dim)
    if c_pos.shape != q0.shape or c_neg.shape != q0.shape:
        raise DimMismatch("feedback vectors do not match query dim")
    return p.alpha * q0 + p.beta * c_pos - p.gamma * c_neg


def collect_feedback(
    state: FeedbackState, index: VectorIndex
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Vectors of included / excluded pmids in ascending-pmid order;
    neutral judgements contribute nothing."""
    known = set(index.pmids)
    for pmid in state.judged():
        if pmid not in known:
            raise UnknownPmid(pmid)
    pos = [index.vector(p) for p in sorted(state.included, key=int)]
    neg = [index.vector(p) for p in sorted(state.excluded, key=int)]
    return pos, neg
