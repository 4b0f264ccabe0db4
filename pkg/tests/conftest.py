import random
from fractions import Fraction

import pytest

from l2flat.models import model


@pytest.fixture(scope="session")
def models_cache():
    cache = {}

    def get(kind, **kw):
        key = (kind, tuple(sorted(kw.items())))
        if key not in cache:
            cache[key] = model(kind, **kw)
        return cache[key]

    return get


def random_weights(X, rng: random.Random, top: int = 9):
    return {c: Fraction(rng.randint(1, top), rng.randint(1, top)) for c in X}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
