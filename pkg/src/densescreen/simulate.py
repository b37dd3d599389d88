"""Headless screening simulation: qrels act as the oracle screener and
the run reports standard screening-prioritisation metrics.

The simulated screener takes the top_k unjudged studies each iteration,
judges them from the qrels (relevant -> include, else exclude), updates
the query from the cumulative feedback, and re-ranks the remainder.
Metrics are computed over the concatenation of the screened pages
followed by the final residual ranking, a total order over the corpus.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyCorpus, UnknownTopic
from .feedback import FeedbackState, RocchioParams, collect_feedback, rocchio_update
from .ranking import VectorIndex, rank

Qrels = dict[str, dict[str, int]]


def parse_qrels(text: str) -> Qrels:
    """TREC qrels: whitespace-separated `topic 0 pmid relevance` lines."""
    qrels: Qrels = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"bad qrels line: {line!r}")
        topic, _, pmid, rel = parts
        qrels.setdefault(topic, {})[pmid] = int(rel)
    return qrels


@dataclass
class IterationRecord:
    iteration_no: int
    page_pmids: list[str]
    oracle_labels: list[str]
    cumulative_recall: float

    def to_dict(self) -> dict:
        return {
            "iteration_no": self.iteration_no,
            "page_pmids": list(self.page_pmids),
            "oracle_labels": list(self.oracle_labels),
            "cumulative_recall": self.cumulative_recall,
        }


@dataclass
class SimulationRun:
    topic: str
    iterations: list[IterationRecord] = field(default_factory=list)
    screening_order: list[str] = field(default_factory=list)  # total order over corpus
    metrics: dict[str, float] = field(default_factory=dict)

    def to_jsonl(self) -> str:
        lines = [json.dumps(r.to_dict(), sort_keys=True) for r in self.iterations]
        summary = {"topic": self.topic, "summary": True, "metrics": self.metrics}
        lines.append(json.dumps(summary, sort_keys=True))
        return "\n".join(lines) + "\n"


def simulate(
    index: VectorIndex,
    q0: np.ndarray,
    qrels: Qrels,
    topic: str,
    params: RocchioParams = RocchioParams(),
    top_k: int = 20,
    n_iteration: int = 20,
) -> SimulationRun:
    if len(index) == 0:
        raise EmptyCorpus("cannot simulate over an empty corpus")
    if topic not in qrels:
        raise UnknownTopic(topic)
    judgements = qrels[topic]
    relevant = {p for p, r in judgements.items() if r > 0}
    n_relevant = len(relevant & set(index.pmids))

    run = SimulationRun(topic=topic)
    state = FeedbackState()
    current = rank(index, q0)
    found = 0
    for it in range(1, n_iteration + 1):
        if not current:
            break
        page = current[:top_k]
        pmids = [p for p, _ in page]
        labels = []
        for pmid in pmids:
            if judgements.get(pmid, 0) > 0:
                labels.append("include")
                state.included.add(pmid)
                found += 1
            else:
                labels.append("exclude")
                state.excluded.add(pmid)
        run.screening_order.extend(pmids)
        recall = found / n_relevant if n_relevant else 0.0
        run.iterations.append(IterationRecord(it, pmids, labels, recall))
        remaining = {p for p, _ in current} - set(pmids)
        if not remaining or (n_relevant and found == n_relevant):
            current = _residual(index, q0, state, params, remaining)
            break
        current = _residual(index, q0, state, params, remaining)
    run.screening_order.extend(p for p, _ in current)

    order = run.screening_order
    run.metrics = {
        "recall_at_10": recall_at(order, judgements, 10),
        "recall_at_100": recall_at(order, judgements, 100),
        "wss_95": wss(order, judgements, 0.95),
        "wss_100": wss(order, judgements, 1.0),
        "last_relevant_rank": float(last_relevant_rank(order, judgements)),
        "iterations": float(len(run.iterations)),
        "final_recall": run.iterations[-1].cumulative_recall if run.iterations else 0.0,
    }
    return run


def _residual(index, q0, state, params, remaining):
    if not remaining:
        return []
    pos, neg = collect_feedback(state, index)
    q = rocchio_update(q0, pos, neg, params)
    return rank(index, q, subset=remaining)


def recall_at(order: list[str], judgements: dict[str, int], k: int) -> float:
    """|relevant in top k| / |relevant| over the given total order."""
    relevant = {p for p, r in judgements.items() if r > 0 and p in set(order)}
    if not relevant:
        return 0.0
    hit = sum(1 for p in order[:k] if p in relevant)
    return hit / len(relevant)


def wss(order: list[str], judgements: dict[str, int], recall_target: float) -> float:
    """Work saved over sampling at the given recall level:
    (N - rank_needed) / N - (1 - r), with rank_needed the smallest prefix
    reaching recall >= r."""
    n = len(order)
    relevant = {p for p, r in judgements.items() if r > 0 and p in set(order)}
    if not relevant or n == 0:
        return 0.0
    needed_hits = recall_target * len(relevant)
    hits = 0
    rank_needed = n
    for i, pmid in enumerate(order, start=1):
        if pmid in relevant:
            hits += 1
        if hits >= needed_hits:
            rank_needed = i
            break
    return (n - rank_needed) / n - (1.0 - recall_target)


def last_relevant_rank(order: list[str], judgements: dict[str, int]) -> int:
    """1-based rank of the last relevant document in the order."""
    relevant = {p for p, r in judgements.items() if r > 0}
    last = 0
    for i, pmid in enumerate(order, start=1):
        if pmid in relevant:
            last = i
    return last
