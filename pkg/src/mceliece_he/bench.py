"""Timing harness: homomorphic encryption, per-item decryption, aggregate decryption.

Every (data count, operation) cell is warmed up once, then sampled
``repeats`` times with repetitions interleaved across cells; the median is
reported.  Cells faster than ``MIN_SAMPLE_S`` are looped within a sample.
Results are discarded as they are produced and garbage collection is paused
inside timed regions.
"""

from __future__ import annotations

import csv
import gc
import io
import math
import platform
import random
import statistics
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from .gf2 import BitVector
from .mceliece import aggregate, decrypt, encrypt_homomorphic, fold_xor, generate_keypair

DEFAULT_SIZES = (100, 1_000, 10_000, 100_000)
DEFAULT_REPEATS = 5
MIN_SAMPLE_S = 0.02


@dataclass
class BenchRow:
    n_items: int
    enc_total_ms: float
    dec_total_ms: float
    agg_dec_total_ms: float
    agg_decode_calls: int


@dataclass
class BenchReport:
    r: int
    seed: int
    environment: str
    repeats: int
    rows: list[BenchRow] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        names = list(BenchRow.__dataclass_fields__)
        w = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
        w.writeheader()
        for row in self.rows:
            w.writerow(asdict(row))
        return buf.getvalue()

    def to_markdown(self) -> str:
        lines = [
            f"r={self.r}, seed={self.seed}, median of {self.repeats} runs",
            f"environment: {self.environment}",
            "",
            "Encryption time (ms)",
            "",
            "| items | homomorphic encrypt |",
            "|---:|---:|",
        ]
        lines += [f"| {row.n_items:,} | {row.enc_total_ms:.3f} |" for row in self.rows]
        lines += [
            "",
            "Decryption time (ms)",
            "",
            "| items | decrypt each | aggregate then decrypt once |",
            "|---:|---:|---:|",
        ]
        lines += [
            f"| {row.n_items:,} | {row.dec_total_ms:.3f} | {row.agg_dec_total_ms:.3f} |"
            for row in self.rows
        ]
        return "\n".join(lines) + "\n"


def environment_descriptor() -> str:
    return (
        f"{platform.python_implementation()} {platform.python_version()} on "
        f"{platform.system()} {platform.machine()} ({platform.processor() or 'unknown cpu'})"
    )


def _calibrate(fn: Callable[[], object], min_sample_s: float) -> int:
    t0 = time.perf_counter()
    fn()
    single = time.perf_counter() - t0
    return max(1, math.ceil(min_sample_s / single)) if single > 0 else 1000


def time_cells(
    cells: Sequence[Callable[[], object]],
    repeats: int = DEFAULT_REPEATS,
    min_sample_s: float = MIN_SAMPLE_S,
) -> list[float]:
    """Median wall time of one call of each cell, in milliseconds.

    A warm-up call per cell also calibrates how many back-to-back calls make
    up one sample, so that no sample is shorter than ``min_sample_s``.
    Repetitions are interleaved across cells so that slow drift in machine
    state (clock speed, heap layout) affects every cell alike.
    """
    loops = [_calibrate(fn, min_sample_s) for fn in cells]
    samples: list[list[float]] = [[] for _ in cells]
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(repeats):
            for fn, count, out in zip(cells, loops, samples):
                t0 = time.perf_counter_ns()
                for _ in range(count):
                    fn()
                out.append((time.perf_counter_ns() - t0) / count)
    finally:
        if gc_was_enabled:
            gc.enable()
    return [statistics.median(out) / 1e6 for out in samples]


def time_ms(
    fn: Callable[[], object], repeats: int = DEFAULT_REPEATS, min_sample_s: float = MIN_SAMPLE_S
) -> float:
    return time_cells([fn], repeats, min_sample_s)[0]


def _cells(pk, sk, xs, cts):
    def encrypt_all():
        for x in xs:
            encrypt_homomorphic(pk, x)

    def decrypt_all():
        for c in cts:
            decrypt(sk, c)

    def aggregate_then_decrypt():
        decrypt(sk, aggregate(cts))

    return [encrypt_all, decrypt_all, aggregate_then_decrypt]


def run_bench(
    sizes: Sequence[int] = DEFAULT_SIZES,
    r: int = 3,
    seed: int = 0,
    repeats: int = DEFAULT_REPEATS,
) -> BenchReport:
    sizes = list(sizes)
    if not sizes:
        raise ValueError("sizes must be nonempty")
    if any(s < 1 for s in sizes) or any(a >= b for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be positive and strictly increasing")
    rng = random.Random(seed)
    sk, pk = generate_keypair(r, rng)
    k = pk.k
    report = BenchReport(r=r, seed=seed, environment=environment_descriptor(), repeats=repeats)

    cells = []
    calls = []
    for count in sizes:
        xs = [BitVector.from_int(rng.getrandbits(k), k) for _ in range(count)]
        cts = [encrypt_homomorphic(pk, x) for x in xs]
        stats: Counter = Counter()
        if decrypt(sk, aggregate(cts), stats=stats) != fold_xor(xs):
            raise AssertionError("aggregate decryption disagrees with XOR of plaintexts")
        calls.append(stats["decode_pipeline"])
        cells.extend(_cells(pk, sk, xs, cts))

    times = time_cells(cells, repeats)
    for i, count in enumerate(sizes):
        enc_ms, dec_ms, agg_ms = times[3 * i:3 * i + 3]
        report.rows.append(BenchRow(count, enc_ms, dec_ms, agg_ms, calls[i]))
    return report
