"""Timing harness for correlation-matrix generation."""

from __future__ import annotations

import statistics
import time
from dataclasses import asdict, dataclass
from typing import Sequence

from .core import SamplerStats
from .randcorr import METHODS, randcorr
from .rng import RandomSource

FIELDS = (
    "p",
    "method",
    "reps",
    "seconds",
    "angles",
    "proposals",
    "acceptances",
    "acceptance_rate",
)
TIMING_FIELDS = ("seconds",)


@dataclass
class BenchRow:
    p: int
    method: str
    reps: int
    seconds: float
    angles: int
    proposals: int
    acceptances: int
    acceptance_rate: float

    def as_dict(self) -> dict:
        return asdict(self)


def time_randcorr(p: int, method: str, reps: int, seed: int) -> BenchRow:
    """Median wall time of ``reps`` full generations, each from a fresh seed-``seed`` stream.

    Every repetition sees the same stream, so the counters are identical
    across reps and only the clock varies.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    times = []
    stats = SamplerStats()
    for _ in range(reps):
        stats = SamplerStats()
        rng = RandomSource(seed)
        t0 = time.perf_counter()
        randcorr(p, rng, method=method, stats=stats)
        times.append(time.perf_counter() - t0)
    angles = p * (p - 1) // 2
    rate = stats.acceptances / stats.proposals if stats.proposals else 1.0
    return BenchRow(
        p=p,
        method=method,
        reps=reps,
        seconds=statistics.median(times),
        angles=angles,
        proposals=stats.proposals,
        acceptances=stats.acceptances,
        acceptance_rate=rate,
    )


def run_bench(
    ps: Sequence[int], methods: Sequence[str], reps: int, seed: int
) -> list[BenchRow]:
    if not ps:
        raise ValueError("need at least one p")
    return [time_randcorr(p, m, reps, seed) for p in ps for m in methods]
