import time

import pytest

from tgs.exclusion import scan_unexcluded


@pytest.fixture(scope="session")
def scan12():
    """Full-range scan of unexcluded restricted triples, shared between the
    tests that consume it, with its wall-clock cost."""
    t0 = time.monotonic()
    triples = scan_unexcluded(max_rank=12)
    return triples, time.monotonic() - t0
