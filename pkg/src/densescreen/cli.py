"""Command-line entry points.

`densescreen-simulate` replays screening headlessly with a qrels file as
the oracle judge and writes per-iteration JSON lines plus a summary CSV.
`densescreen-serve` starts the REST service.
"""
from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import nbib
from .encoding import EncoderConfig, encode_corpus, make_encoder
from .feedback import RocchioParams
from .ranking import build_index
from .simulate import parse_qrels, simulate


def simulate_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="densescreen-simulate",
        description="Simulate screening prioritisation with qrels as the oracle judge.",
    )
    parser.add_argument("--corpus", required=True, help="nbib file of candidate studies")
    parser.add_argument("--qrels", required=True, help="TREC qrels file")
    parser.add_argument("--topic", required=True, help="topic id within the qrels")
    parser.add_argument("--query", required=True, help="query text (serialized PICO)")
    parser.add_argument("--alpha", type=float, default=1.0)
    parser.add_argument("--beta", type=float, default=0.8)
    parser.add_argument("--gamma", type=float, default=0.2)
    parser.add_argument("--top_k", type=int, default=20)
    parser.add_argument("--n_iteration", type=int, default=20)
    parser.add_argument("--output_path", required=True, help="output directory")
    parser.add_argument("--dim", type=int, default=256, help="hash encoder dimension")
    parser.add_argument("--q_max_len", type=int, default=128)
    parser.add_argument("--p_max_len", type=int, default=256)
    parser.add_argument("--encoder", choices=["hash", "remote"], default="hash")
    parser.add_argument("--endpoint", default="", help="remote encoder URL")
    args = parser.parse_args(argv)

    cfg = EncoderConfig(
        kind=args.encoder,
        dim=args.dim,
        q_max_len=args.q_max_len,
        p_max_len=args.p_max_len,
        endpoint=args.endpoint,
    )
    encoder = make_encoder(cfg)

    records = nbib.parse_nbib(Path(args.corpus).read_text(encoding="utf-8"))
    studies, report = nbib.build_corpus(records)
    if report.rejected:
        print(f"warning: {len(report.rejected)} records rejected", file=sys.stderr)
    index = build_index(encode_corpus(studies, cfg, encoder=encoder))
    qrels = parse_qrels(Path(args.qrels).read_text(encoding="utf-8"))
    q0 = encoder.encode(args.query, "query")

    run = simulate(
        index,
        q0,
        qrels,
        args.topic,
        params=RocchioParams(args.alpha, args.beta, args.gamma),
        top_k=args.top_k,
        n_iteration=args.n_iteration,
    )

    out = Path(args.output_path)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{args.topic}.jsonl").write_text(run.to_jsonl(), encoding="utf-8")
    with open(out / f"{args.topic}_summary.csv", "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["topic"] + sorted(run.metrics))
        writer.writerow([args.topic] + [run.metrics[k] for k in sorted(run.metrics)])
    print(f"topic {args.topic}: {run.metrics}")
    return 0


def serve_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="densescreen-serve", description="Run the screening REST service."
    )
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--data-dir", default="./data")
    parser.add_argument("--encoder", choices=["hash", "remote"], default="hash")
    parser.add_argument("--dim", type=int, default=256)
    parser.add_argument("--endpoint", default="")
    parser.add_argument("--q_max_len", type=int, default=128)
    parser.add_argument("--p_max_len", type=int, default=256)
    args = parser.parse_args(argv)

    import uvicorn

    from .service.app import create_app

    cfg = EncoderConfig(
        kind=args.encoder,
        dim=args.dim,
        q_max_len=args.q_max_len,
        p_max_len=args.p_max_len,
        endpoint=args.endpoint,
    )
    uvicorn.run(create_app(args.data_dir, cfg), host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    sys.exit(simulate_main())
