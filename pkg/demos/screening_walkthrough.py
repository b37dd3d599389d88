"""Walk through one interactive screening session in memory.

Builds a tiny corpus where three studies share a drug name, ranks it
against a PICO query, judges the first page, and shows how the
re-ranking pulls the remaining related studies forward.
"""
import numpy as np

from densescreen import (
    EncoderConfig,
    HashEncoder,
    PicoQuery,
    ReviewSession,
    RocchioParams,
    Study,
    build_index,
    encode_corpus,
    serialize_pico,
)

rows = [
    ("1000", "Vemurafenib in advanced melanoma", "braf mutant vemurafenib zelboraf response"),
    ("1001", "Aspirin cardiovascular prevention", "aspirin cardiovascular events"),
    ("1002", "Statin therapy cholesterol", "statin ldl cholesterol"),
    ("1003", "Metformin glycemic control", "metformin glucose"),
    ("1004", "Combination targeted therapy trial", "zelboraf cobimetinib combination"),
    ("1005", "Salt reduction hypertension", "sodium blood pressure"),
    ("1006", "Influenza vaccination elderly", "influenza vaccine"),
    ("1007", "Inhaled corticosteroids asthma", "asthma corticosteroid"),
    ("1008", "Kinase inhibition skin cancer", "zelboraf braf skin cancer"),
    ("1009", "Cognitive behavioural therapy insomnia", "cbt sleep"),
]
studies = [Study(pmid=p, title=t, abstract=a, authors=["Demo A"]) for p, t, a in rows]

cfg = EncoderConfig(kind="hash", dim=256)
encoder = HashEncoder(cfg)
index = build_index(encode_corpus(studies, cfg, encoder=encoder))

pico = PicoQuery(population="melanoma patients", intervention="vemurafenib")
q0 = encoder.encode(serialize_pico(pico), "query")

session = ReviewSession("demo", "corpus", index, q0, RocchioParams(), page_size=2)

print("Initial ranking:")
for i, (pmid, score) in enumerate(session.current_ranking, 1):
    print(f"  {i:2d}. {pmid}  score={score:+.3f}")

relevant = {"1000", "1004", "1008"}
page_no = 1
while session.status == "screening":
    print(f"\nPage {page_no}: {session.current_page_pmids()}")
    for pmid in session.current_page_pmids():
        label = "include" if pmid in relevant else "exclude"
        session.record_judgement(pmid, label)
        print(f"  judged {pmid}: {label}")
    session.complete_page()
    page_no += 1
    if session.current_ranking:
        top = session.current_ranking[0]
        print(f"  re-ranked; new top study: {top[0]} (score {top[1]:+.3f})")

stats = session.stats()
print(f"\nDone. reviewed={stats.reviewed}, includes={stats.label_counts['include']}")
print("Discovery curve:", stats.discovery_curve)
print("\nExport preview:")
print("\n".join(session.export_results().splitlines()[:5]))
