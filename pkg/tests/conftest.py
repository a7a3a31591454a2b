from pathlib import Path

import pytest

from secondbasis.family import ground_size
from secondbasis.tables import parse_entry

GOLDEN = Path(__file__).parent / "golden"


def load_corpus(d):
    """Parse a corpus file into (ordered piece labels, entries per piece)."""
    pieces: dict[str, list] = {}
    label = None
    n = ground_size(d)
    for line in (GOLDEN / f"table_d{d}.txt").read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("piece "):
            label = line[len("piece "):].rstrip(":")
            pieces[label] = []
            continue
        pieces[label].append(parse_entry(line, n))
    return pieces


@pytest.fixture
def corpus_loader():
    return load_corpus
