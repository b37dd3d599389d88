"""Review-session state machine.

A session ranks the whole corpus against the PICO query vector, then
loops: the screener judges every study on the current page, the page is
completed, the cumulative include/exclude sets update the query via
Rocchio, and the remaining unjudged studies are re-ranked. Sessions are
fully replayable from (corpus, query, params, judgement log).
"""
from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import NotOnCurrentPage, PageIncomplete, UnknownPmid, WrongState
from .feedback import FeedbackState, RocchioParams, collect_feedback, rocchio_update
from .ranking import Ranking, VectorIndex, page, rank

LABELS = ("include", "exclude", "maybe")
DEFAULT_PAGE_SIZE = 20


@dataclass
class JudgementEvent:
    pmid: str
    label: str
    sequence_no: int
    page_no: int
    rank_when_judged: int
    timestamp: float

    def to_dict(self) -> dict:
        return {
            "pmid": self.pmid,
            "label": self.label,
            "sequence_no": self.sequence_no,
            "page_no": self.page_no,
            "rank_when_judged": self.rank_when_judged,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "JudgementEvent":
        return cls(
            pmid=d["pmid"],
            label=d["label"],
            sequence_no=d["sequence_no"],
            page_no=d["page_no"],
            rank_when_judged=d["rank_when_judged"],
            timestamp=d["timestamp"],
        )


@dataclass
class ProgressStats:
    reviewed: int
    unreviewed: int
    label_counts: dict[str, int]
    discovery_curve: list[tuple[int, int]]

    def to_dict(self) -> dict:
        return {
            "reviewed": self.reviewed,
            "unreviewed": self.unreviewed,
            "label_counts": dict(self.label_counts),
            "discovery_curve": [list(p) for p in self.discovery_curve],
        }


class ReviewSession:
    """Single-writer session over one corpus index.

    current_ranking always covers exactly the unjudged studies; the
    current page is a snapshot taken when the page was opened, so judged
    studies stay visible (and re-judgeable) until the page completes.
    """

    def __init__(
        self,
        session_id: str,
        corpus_id: str,
        index: VectorIndex,
        q0: np.ndarray,
        params: RocchioParams = RocchioParams(),
        page_size: int = DEFAULT_PAGE_SIZE,
        stop_at_last_page: bool = False,
    ):
        if page_size < 1:
            raise ValueError("page_size must be >= 1")
        self.session_id = session_id
        self.corpus_id = corpus_id
        self.index = index
        self.q0 = np.asarray(q0, dtype=np.float64)
        self.params = params
        self.page_size = page_size
        self.stop_at_last_page = stop_at_last_page

        self.status = "ranking"
        self.judgements: list[JudgementEvent] = []
        self.active: dict[str, JudgementEvent] = {}  # pmid -> latest event
        self.page_cursor = 1
        self.pages_completed = 0

        self.current_ranking: Ranking = rank(index, self.q0)
        self._rank_at_open: dict[str, int] = {
            p: i + 1 for i, (p, _) in enumerate(self.current_ranking)
        }
        self.current_page: Ranking = page(self.current_ranking, 1, page_size)
        self.status = "screening"

    # -- queries ----------------------------------------------------------

    @property
    def corpus_size(self) -> int:
        return len(self.index)

    def current_page_pmids(self) -> list[str]:
        return [p for p, _ in self.current_page]

    def unjudged_pmids(self) -> set[str]:
        return {p for p, _ in self.current_ranking}

    # -- mutations ---------------------------------------------------------

    def record_judgement(self, pmid: str, label: str) -> None:
        if self.status != "screening":
            raise WrongState(f"cannot judge while {self.status}")
        if label not in LABELS:
            raise ValueError(f"label must be one of {LABELS}")
        if pmid not in {p for p, _ in self.current_page}:
            if pmid not in set(self.index.pmids):
                raise UnknownPmid(pmid)
            raise NotOnCurrentPage(pmid)
        event = JudgementEvent(
            pmid=pmid,
            label=label,
            sequence_no=len(self.judgements) + 1,
            page_no=self.pages_completed + 1,
            rank_when_judged=self._rank_at_open[pmid],
            timestamp=time.time(),
        )
        self.judgements.append(event)
        self.active[pmid] = event
        self.current_ranking = [(p, s) for p, s in self.current_ranking if p != pmid]

    def complete_page(self) -> None:
        if self.status != "screening":
            raise WrongState(f"cannot complete a page while {self.status}")
        missing = [p for p in self.current_page_pmids() if p not in self.active]
        if missing:
            raise PageIncomplete(missing)
        was_last_page = len(self._rank_at_open) <= self.page_size
        self.pages_completed += 1
        remaining = self.unjudged_pmids()
        if not remaining or (self.stop_at_last_page and was_last_page):
            self.current_ranking = self._rerank(remaining) if remaining else []
            self.current_page = []
            self.status = "finished"
            return
        self.current_ranking = self._rerank(remaining)
        self._rank_at_open = {p: i + 1 for i, (p, _) in enumerate(self.current_ranking)}
        self.page_cursor = 1
        self.current_page = page(self.current_ranking, 1, self.page_size)

    def _rerank(self, remaining: set[str]) -> Ranking:
        state = self.feedback_state()
        pos, neg = collect_feedback(state, self.index)
        q = rocchio_update(self.q0, pos, neg, self.params)
        return rank(self.index, q, subset=remaining)

    def pause(self) -> None:
        if self.status != "screening":
            raise WrongState(f"cannot pause while {self.status}")
        self.status = "paused"

    def resume(self) -> None:
        if self.status != "paused":
            raise WrongState(f"cannot resume while {self.status}")
        self.status = "screening"

    # -- derived views -----------------------------------------------------

    def feedback_state(self) -> FeedbackState:
        state = FeedbackState()
        for pmid, event in self.active.items():
            if event.label == "include":
                state.included.add(pmid)
            elif event.label == "exclude":
                state.excluded.add(pmid)
            else:
                state.neutral.add(pmid)
        return state

    def stats(self) -> ProgressStats:
        counts = {label: 0 for label in LABELS}
        for event in self.active.values():
            counts[event.label] += 1
        # curve over the active judgement per study, in judgement order;
        # superseded events are dropped so the curve stays monotone
        curve: list[tuple[int, int]] = []
        includes = 0
        ordered = sorted(self.active.values(), key=lambda e: e.sequence_no)
        for i, event in enumerate(ordered, start=1):
            if event.label == "include":
                includes += 1
            curve.append((i, includes))
        return ProgressStats(
            reviewed=len(self.active),
            unreviewed=self.corpus_size - len(self.active),
            label_counts=counts,
            discovery_curve=curve,
        )

    def export_results(self) -> str:
        """CSV: judged studies in judgement order, then unjudged studies
        with their latest rank."""
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["pmid", "label", "sequence_no", "final_rank_when_judged"])
        for event in sorted(self.active.values(), key=lambda e: e.sequence_no):
            writer.writerow(
                [event.pmid, event.label, event.sequence_no, event.rank_when_judged]
            )
        for i, (pmid, _) in enumerate(self.current_ranking, start=1):
            writer.writerow([pmid, "unjudged", "", i])
        return buf.getvalue()


def create_session(
    session_id: str,
    corpus_id: str,
    index: VectorIndex,
    q0: np.ndarray,
    params: RocchioParams = RocchioParams(),
    page_size: int = DEFAULT_PAGE_SIZE,
    stop_at_last_page: bool = False,
) -> ReviewSession:
    return ReviewSession(
        session_id, corpus_id, index, q0, params, page_size, stop_at_last_page
    )


def replay_session(
    session_id: str,
    corpus_id: str,
    index: VectorIndex,
    q0: np.ndarray,
    params: RocchioParams,
    page_size: int,
    events: list[JudgementEvent],
    stop_at_last_page: bool = False,
    paused: bool = False,
) -> ReviewSession:
    """Rebuild a session from its judgement log.

    Events are grouped by page_no; each non-final page group ends with a
    page completion, and the final group completes when the page is fully
    judged (which matches any history where complete_page followed a
    fully-judged page).
    """
    session = ReviewSession(
        session_id, corpus_id, index, q0, params, page_size, stop_at_last_page
    )
    ordered = sorted(events, key=lambda e: e.sequence_no)
    groups: list[list[JudgementEvent]] = []
    for event in ordered:
        if not groups or groups[-1][0].page_no != event.page_no:
            groups.append([])
        groups[-1].append(event)
    for gi, group in enumerate(groups):
        for event in group:
            session.record_judgement(event.pmid, event.label)
            # keep original timestamps rather than replay-time clocks
            session.judgements[-1].timestamp = event.timestamp
        is_last = gi == len(groups) - 1
        page_full = all(p in session.active for p in session.current_page_pmids())
        if not is_last or page_full:
            session.complete_page()
    if paused and session.status == "screening":
        session.pause()
    return session
