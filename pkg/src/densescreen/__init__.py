"""densescreen: screening prioritisation for systematic reviews with
dense vectors and Rocchio relevance feedback."""

from .encoding import (
    EncoderConfig,
    HashEncoder,
    PicoQuery,
    RemoteEncoder,
    encode,
    encode_corpus,
    make_encoder,
    serialize_passage,
    serialize_pico,
)
from .feedback import FeedbackState, RocchioParams, centroid, collect_feedback, rocchio_update
from .nbib import CorpusReport, RawRecord, Study, build_corpus, parse_nbib, to_study, write_nbib
from .ranking import VectorIndex, build_index, page, rank
from .session import JudgementEvent, ProgressStats, ReviewSession, create_session, replay_session
from .simulate import SimulationRun, last_relevant_rank, parse_qrels, recall_at, simulate, wss

__version__ = "0.1.0"

__all__ = [
    "CorpusReport",
    "EncoderConfig",
    "FeedbackState",
    "HashEncoder",
    "JudgementEvent",
    "PicoQuery",
    "ProgressStats",
    "RawRecord",
    "RemoteEncoder",
    "ReviewSession",
    "RocchioParams",
    "SimulationRun",
    "Study",
    "VectorIndex",
    "build_corpus",
    "build_index",
    "centroid",
    "collect_feedback",
    "create_session",
    "encode",
    "encode_corpus",
    "last_relevant_rank",
    "make_encoder",
    "page",
    "parse_nbib",
    "parse_qrels",
    "rank",
    "recall_at",
    "replay_session",
    "rocchio_update",
    "serialize_passage",
    "serialize_pico",
    "simulate",
    "to_study",
    "write_nbib",
    "wss",
]
