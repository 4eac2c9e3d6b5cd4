"""End-to-end statistical check of a sampler against the recursive CDF."""

from __future__ import annotations

import math

import numpy as np

from . import oracle
from .core import SamplerStats, SinKDistribution, log_bound, sample
from .rng import RandomSource

MEAN_Z = 4.0
RATE_Z = 3.0


def validate(k: int, n: int, seed: int, method: str = "rejection") -> dict:
    """Draw ``n`` variates and score them.

    Checks: one-sample KS against the oracle CDF at α = 0.01, sample mean
    within ``MEAN_Z`` standard errors of π/2 and, for the rejection sampler,
    acceptance rate within ``RATE_Z`` binomial standard deviations of 1/M_k.
    """
    dist = SinKDistribution(k)
    oracle._integer_k(dist)
    if n < 1000:
        raise ValueError(f"n must be >= 1000, got {n}")
    rng = RandomSource(seed)
    stats = SamplerStats()
    if method == "rejection":
        x = sample(dist, rng, size=n, stats=stats)
    elif method == "inverse":
        x = oracle.sample_inverse_transform(dist, rng, size=n)
        stats.proposals = stats.acceptances = n
    else:
        raise ValueError(f"unknown method {method!r}")

    ks = oracle.ks_statistic(x, lambda v: oracle.cdf(dist, v))
    ks_crit = oracle.ks_critical(n)
    mean = float(np.mean(x))
    mean_se = float(np.std(x, ddof=1) / math.sqrt(n))
    theoretical = math.exp(-log_bound(dist))
    rate = stats.acceptance_rate
    if method == "rejection":
        rate_sigma = math.sqrt(theoretical * (1.0 - theoretical) / stats.proposals)
        rate_pass = abs(rate - theoretical) <= RATE_Z * rate_sigma
    else:
        rate_sigma = 0.0
        rate_pass = True
    report = {
        "k": int(dist.k),
        "n": n,
        "seed": seed,
        "method": method,
        "ks": ks,
        "ks_critical": ks_crit,
        "ks_pass": ks < ks_crit,
        "mean": mean,
        "mean_se": mean_se,
        "mean_pass": abs(mean - math.pi / 2) <= MEAN_Z * mean_se,
        "proposals": stats.proposals,
        "acceptances": stats.acceptances,
        "acceptance_rate": rate,
        "theoretical_rate": theoretical,
        "rate_sigma": rate_sigma,
        "rate_pass": rate_pass,
    }
    report["passed"] = bool(report["ks_pass"] and report["mean_pass"] and rate_pass)
    return report
