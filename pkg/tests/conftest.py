import random

import pytest

from conflictlab.truthtable import TruthTable


def random_nonconstant_tables(n, count, seed):
    """Deterministic sample of distinct nonconstant n-variable tables."""
    rng = random.Random(seed)
    size = 1 << n
    seen = set()
    tables = []
    while len(tables) < count:
        bits = rng.getrandbits(size)
        if bits == 0 or bits == (1 << size) - 1 or bits in seen:
            continue
        seen.add(bits)
        tables.append(TruthTable(n, bits))
    return tables


def all_nonconstant_tables(n):
    return [TruthTable(n, bits) for bits in range(1, (1 << (1 << n)) - 1)]


@pytest.fixture
def two_bit_tables():
    return all_nonconstant_tables(2)
