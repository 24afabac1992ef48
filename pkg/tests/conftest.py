"""Shared fixtures and a dense numpy oracle independent of the packed code path."""

import itertools
import random

import numpy as np
import pytest

from mceliece_he import fixtures
from mceliece_he.gf2 import BitMatrix, BitVector


def dense(m: BitMatrix) -> np.ndarray:
    return np.array([[m[i, j] for j in range(m.ncols)] for i in range(m.nrows)], dtype=np.int64)


def dense_vec(v: BitVector) -> np.ndarray:
    return np.array([v[i] for i in range(len(v))], dtype=np.int64)


def oracle_mul(*ms: np.ndarray) -> np.ndarray:
    out = ms[0]
    for m in ms[1:]:
        out = (out @ m) % 2
    return out


def oracle_rank(a: np.ndarray) -> int:
    """Rank by enumerating the row span; only for small row counts."""
    rows = [tuple(r) for r in a]
    span = set()
    for coeffs in itertools.product((0, 1), repeat=len(rows)):
        acc = np.zeros(a.shape[1], dtype=np.int64)
        for c, r in zip(coeffs, rows):
            if c:
                acc = (acc + np.array(r)) % 2
        span.add(tuple(acc))
    return len(span).bit_length() - 1


def as_bits(a: np.ndarray) -> list:
    return [int(x) for x in np.ravel(a)]


@pytest.fixture
def example_keys():
    return fixtures.keypair()


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in RESULTS.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
