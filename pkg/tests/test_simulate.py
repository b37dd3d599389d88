import json
import random

import numpy as np
import pytest

from densescreen import (
    EncoderConfig,
    HashEncoder,
    RocchioParams,
    build_index,
    encode_corpus,
    last_relevant_rank,
    parse_qrels,
    rank,
    recall_at,
    rocchio_update,
    simulate,
    wss,
)
from densescreen.errors import EmptyCorpus, UnknownTopic
from tests.conftest import make_studies


def make_index(n, dim=8, seed=0):
    rng = np.random.default_rng(seed)
    vecs = rng.normal(size=(n, dim))
    return build_index([(str(i + 1), vecs[i]) for i in range(n)])


def test_parse_qrels():
    qrels = parse_qrels("t1 0 101 1\nt1 0 102 0\n\nt2 0 101 0\n")
    assert qrels == {"t1": {"101": 1, "102": 0}, "t2": {"101": 0}}


def test_parse_qrels_bad_line():
    with pytest.raises(ValueError):
        parse_qrels("t1 101 1\n")


def test_unknown_topic():
    idx = make_index(3)
    with pytest.raises(UnknownTopic):
        simulate(idx, np.zeros(8), {"t1": {}}, "t2")


def test_n_iteration_zero_gives_initial_ranking():
    idx = make_index(5, seed=1)
    q0 = np.random.default_rng(2).normal(size=8)
    run = simulate(idx, q0, {"t": {"1": 1}}, "t", n_iteration=0)
    assert run.iterations == []
    assert run.screening_order == [p for p, _ in rank(idx, q0)]


def test_all_relevant_on_first_page_stops_early():
    idx = make_index(6, seed=3)
    q0 = np.random.default_rng(4).normal(size=8)
    initial = [p for p, _ in rank(idx, q0)]
    qrels = {"t": {p: (1 if p in initial[:2] else 0) for p in initial}}
    run = simulate(idx, q0, qrels, "t", top_k=3, n_iteration=20)
    assert len(run.iterations) == 1
    assert run.iterations[0].cumulative_recall == 1.0


def test_no_feedback_baseline_equals_initial_ranking():
    idx = make_index(30, seed=5)
    q0 = np.random.default_rng(6).normal(size=8)
    qrels = {"t": {str(i + 1): (1 if i % 7 == 0 else 0) for i in range(30)}}
    run = simulate(
        idx, q0, qrels, "t", params=RocchioParams(1.0, 0.0, 0.0), top_k=4, n_iteration=50
    )
    assert run.screening_order == [p for p, _ in rank(idx, q0)]


def test_recall_monotone_and_order_complete():
    idx = make_index(25, seed=8)
    q0 = np.random.default_rng(9).normal(size=8)
    qrels = {"t": {str(i + 1): (1 if i % 5 == 0 else 0) for i in range(25)}}
    run = simulate(idx, q0, qrels, "t", top_k=4, n_iteration=3)
    recalls = [r.cumulative_recall for r in run.iterations]
    assert recalls == sorted(recalls)
    assert sorted(run.screening_order, key=int) == sorted(
        (str(i + 1) for i in range(25)), key=int
    )


def test_simulation_deterministic():
    idx = make_index(20, seed=10)
    q0 = np.random.default_rng(11).normal(size=8)
    qrels = {"t": {str(i + 1): i % 3 == 0 and 1 or 0 for i in range(20)}}
    a = simulate(idx, q0, qrels, "t", top_k=5, n_iteration=4)
    b = simulate(idx, q0, qrels, "t", top_k=5, n_iteration=4)
    assert a.to_jsonl() == b.to_jsonl()
    assert a.screening_order == b.screening_order


def test_simulation_matches_step_oracle():
    """10-doc hash-encoded corpus with a planted topic token; the whole
    run must match an independent step-by-step recomputation."""
    cfg = EncoderConfig(kind="hash", dim=256)
    enc = HashEncoder(cfg)
    studies = make_studies(10, seed=7, planted={"zelboraf": [0, 4, 8]})
    index = build_index(encode_corpus(studies, cfg, encoder=enc))
    q0 = enc.encode("zelboraf treatment", "query")
    relevant = {"1000", "1004", "1008"}
    qrels = {"t": {s.pmid: (1 if s.pmid in relevant else 0) for s in studies}}
    params = RocchioParams(1.0, 0.8, 0.2)
    run = simulate(index, q0, qrels, "t", params=params, top_k=2, n_iteration=20)

    # independent oracle: explicit loop over centroid/update/sort
    vec = {s.pmid: enc.encode(f"{s.title} {s.abstract}".strip(), "passage") for s in studies}
    inc, exc = [], []
    remaining = sorted(vec, key=int)
    order = []
    pages = []
    while remaining and len(pages) < 20:
        if inc or exc:
            cp = np.mean([vec[p] for p in sorted(inc, key=int)], axis=0) if inc else 0
            cn = np.mean([vec[p] for p in sorted(exc, key=int)], axis=0) if exc else 0
            q = 1.0 * q0 + 0.8 * cp - 0.2 * cn
        else:
            q = q0
        ranked = sorted(remaining, key=lambda p: (-float(np.dot(q, vec[p])), int(p)))
        page = ranked[:2]
        pages.append(page)
        for p in page:
            (inc if p in relevant else exc).append(p)
        order.extend(page)
        remaining = [p for p in remaining if p not in page]
        if set(inc) >= relevant:
            if remaining:
                cp = np.mean([vec[p] for p in sorted(inc, key=int)], axis=0)
                cn = np.mean([vec[p] for p in sorted(exc, key=int)], axis=0) if exc else 0
                q = q0 + 0.8 * cp - 0.2 * cn
                order.extend(
                    sorted(remaining, key=lambda p: (-float(np.dot(q, vec[p])), int(p)))
                )
            break
    assert [r.page_pmids for r in run.iterations] == pages
    assert run.screening_order == order


def test_recall_at():
    judgements = {"1": 1, "2": 1, "3": 1, "10": 0}
    order = [str(i) for i in range(1, 11)]
    assert recall_at(order, judgements, 3) == 1.0
    assert recall_at(order, judgements, 0) == 0.0
    assert recall_at(order, judgements, 2) == pytest.approx(2 / 3)


def test_wss_formula():
    order = [str(i) for i in range(1, 11)]
    judgements = {"1": 1, "2": 1, "3": 1}
    assert wss(order, judgements, 1.0) == pytest.approx(0.7)
    all_relevant = {p: 1 for p in order}
    assert wss(order, all_relevant, 1.0) == pytest.approx(0.0)


def test_last_relevant_rank():
    order = [str(i) for i in range(1, 11)]
    assert last_relevant_rank(order, {"2": 1, "5": 1}) == 5
    assert last_relevant_rank(["7"], {"7": 1}) == 1
    assert last_relevant_rank(order, {"99": 1}) == 0


def test_metrics_match_counting_oracles():
    rng = random.Random(13)
    for _ in range(50):
        n = rng.randint(1, 30)
        order = [str(i) for i in range(1, n + 1)]
        rng.shuffle(order)
        judgements = {p: rng.randint(0, 1) for p in order}
        relevant = [p for p in order if judgements[p]]
        k = rng.randint(0, n)
        exp_recall = (
            sum(1 for p in order[:k] if judgements[p]) / len(relevant) if relevant else 0.0
        )
        assert recall_at(order, judgements, k) == pytest.approx(exp_recall)
        if relevant:
            last = max(i + 1 for i, p in enumerate(order) if judgements[p])
            assert last_relevant_rank(order, judgements) == last
            # prefix-scan oracle for WSS
            r = rng.choice([0.5, 0.8, 0.95, 1.0])
            need = r * len(relevant)
            hits, rank_needed = 0, n
            for i, p in enumerate(order, start=1):
                hits += judgements[p]
                if hits >= need:
                    rank_needed = i
                    break
            assert wss(order, judgements, r) == pytest.approx(
                (n - rank_needed) / n - (1 - r)
            )


def test_jsonl_output_shape():
    idx = make_index(8, seed=20)
    q0 = np.random.default_rng(21).normal(size=8)
    qrels = {"t": {"1": 1, "5": 1}}
    run = simulate(idx, q0, qrels, "t", top_k=3, n_iteration=2)
    lines = run.to_jsonl().strip().split("\n")
    records = [json.loads(line) for line in lines]
    assert records[-1]["summary"] is True
    assert all("iteration_no" in r for r in records[:-1])


def test_empty_corpus():
    with pytest.raises((EmptyCorpus, Exception)):
        simulate(build_index([("1", np.zeros(2))]), np.zeros(3), {"t": {}}, "t")
