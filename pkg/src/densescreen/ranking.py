"""Brute-force dense index: exhaustive dot-product scoring with a
deterministic total order (score descending, numeric pmid ascending)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, DuplicatePmid, UnknownPmid


@dataclass(frozen=True)
class VectorIndex:
    pmids: tuple[str, ...]
    matrix: np.ndarray  # shape (n, dim), row i belongs to pmids[i]

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def __len__(self) -> int:
        return len(self.pmids)

    def vector(self, pmid: str) -> np.ndarray:
        try:
            return self.matrix[self.pmids.index(pmid)]
        except ValueError:
            raise UnknownPmid(pmid) from None


Ranking = list[tuple[str, float]]


def build_index(pairs: list[tuple[str, np.ndarray]]) -> VectorIndex:
    if not pairs:
        raise DimMismatch("cannot build an index from zero vectors")
    dim = len(pairs[0][1])
    seen: set[str] = set()
    rows = []
    for pmid, vec in pairs:
        if pmid in seen:
            raise DuplicatePmid(pmid)
        seen.add(pmid)
        arr = np.asarray(vec, dtype=np.float64)
        if arr.ndim != 1 or arr.shape[0] != dim:
            raise DimMismatch(f"vector for pmid {pmid} has dim {arr.shape}, expected {dim}")
        rows.append(arr)
    return VectorIndex(pmids=tuple(p for p, _ in pairs), matrix=np.vstack(rows))


def rank(index: VectorIndex, q: np.ndarray, subset: set[str] | None = None) -> Ranking:
    """Score every candidate (or the given subset) by dot(q, d) and sort
    by score descending, ties broken by ascending numeric pmid."""
    q = np.asarray(q, dtype=np.float64)
    if q.shape != (index.dim,):
        raise DimMismatch(f"query dim {q.shape} != index dim {index.dim}")
    scores = index.matrix @ q
    if subset is None:
        items = list(zip(index.pmids, scores))
    else:
        known = set(index.pmids)
        for pmid in subset:
            if pmid not in known:
                raise UnknownPmid(pmid)
        items = [(p, s) for p, s in zip(index.pmids, scores) if p in subset]
    items.sort(key=lambda it: (-it[1], int(it[0])))
    return [(p, float(s)) for p, s in items]


def page(r: Ranking, page_no: int, page_size: int) -> Ranking:
    """1-based page slice; a short last page is fine, past the end is []."""
    if page_size < 1:
        raise ValueError("page_size must be >= 1")
    start = (page_no - 1) * page_size
    return r[start : start + page_size]
