import csv
import json

from densescreen.cli import simulate_main
from tests.conftest import make_studies, studies_to_nbib


def test_simulate_cli_end_to_end(tmp_path, capsys):
    studies = make_studies(12, seed=4, planted={"rivaroxaban": [0, 3, 9]})
    corpus = tmp_path / "corpus.nbib"
    corpus.write_text(studies_to_nbib(studies), encoding="utf-8")
    qrels = tmp_path / "qrels.txt"
    qrels.write_text(
        "".join(
            f"CD001 0 {s.pmid} {1 if i in (0, 3, 9) else 0}\n"
            for i, s in enumerate(studies)
        ),
        encoding="utf-8",
    )
    out = tmp_path / "out"
    rc = simulate_main(
        [
            "--corpus", str(corpus),
            "--qrels", str(qrels),
            "--topic", "CD001",
            "--query", "rivaroxaban anticoagulation",
            "--alpha", "1.0",
            "--beta", "0.8",
            "--gamma", "0.2",
            "--top_k", "3",
            "--n_iteration", "5",
            "--output_path", str(out),
        ]
    )
    assert rc == 0
    lines = (out / "CD001.jsonl").read_text().strip().split("\n")
    records = [json.loads(line) for line in lines]
    assert records[-1]["summary"] is True
    assert all(r["cumulative_recall"] <= 1.0 for r in records[:-1])
    with open(out / "CD001_summary.csv") as f:
        rows = list(csv.reader(f))
    assert rows[0][0] == "topic" and rows[1][0] == "CD001"
    assert "final_recall" in rows[0]


def test_simulate_cli_unknown_topic(tmp_path):
    corpus = tmp_path / "c.nbib"
    corpus.write_text(studies_to_nbib(make_studies(3)), encoding="utf-8")
    qrels = tmp_path / "q.txt"
    qrels.write_text("CD001 0 1000 1\n", encoding="utf-8")
    try:
        simulate_main(
            [
                "--corpus", str(corpus),
                "--qrels", str(qrels),
                "--topic", "CD999",
                "--query", "anything",
                "--output_path", str(tmp_path / "o"),
            ]
        )
    except Exception as exc:
        assert "CD999" in str(exc)
    else:
        raise AssertionError("expected UnknownTopic")
