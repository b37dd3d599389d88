import random

import pytest

from densescreen import Study


def make_studies(n: int, seed: int = 0, planted: dict[str, list[int]] | None = None):
    """Synthetic studies with random filler vocab; `planted` maps a token
    to the study indices whose text carries it."""
    rng = random.Random(seed)
    vocab = [f"term{i}" for i in range(50)]
    studies = []
    for i in range(n):
        words = rng.sample(vocab, 6)
        if planted:
            for token, indices in planted.items():
                if i in indices:
                    words = [token] * 3 + words
        studies.append(
            Study(
                pmid=str(1000 + i),
                title=f"Study {i} on {' '.join(words[:3])}",
                abstract=" ".join(words),
                authors=[f"Author {i}"],
            )
        )
    return studies


def studies_to_nbib(studies) -> str:
    chunks = []
    for s in studies:
        lines = [f"PMID- {s.pmid}", f"TI  - {s.title}"]
        if s.abstract:
            lines.append(f"AB  - {s.abstract}")
        lines.extend(f"AU  - {a}" for a in s.authors)
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


@pytest.fixture
def small_studies():
    return make_studies(10, seed=7)
