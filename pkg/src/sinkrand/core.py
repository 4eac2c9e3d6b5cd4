"""Density, envelope, bound and rejection sampler for f(x) ∝ sin(x)**k on (0, π).

Proposals come from a Beta(k+1, k+1) law stretched onto (0, π).  The target
density is dominated by ``M_k`` times the envelope, so the expected number of
proposals per accepted draw is ``M_k``, which never exceeds π/(2√2).

Normalisers are written as ratios of gamma functions and evaluated in log
space without cancellation, so large (possibly non-integer) ``k`` neither
overflows nor loses digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import betaln

from .rng import RandomSource

PI = math.pi
LOG_PI = math.log(PI)
LOG_4 = math.log(4.0)
BOUND_LIMIT = PI / (2.0 * math.sqrt(2.0))
_HALF_PI = 0.5 * PI


@dataclass(frozen=True)
class SinKDistribution:
    """Law with density proportional to ``sin(x)**k`` on (0, π), ``k >= 1``."""

    k: float

    def __post_init__(self) -> None:
        k = float(self.k)
        if not math.isfinite(k):
            raise ValueError(f"k must be finite, got {self.k!r}")
        if k < 1.0:
            raise ValueError(f"k must satisfy k >= 1, got {self.k!r}")
        object.__setattr__(self, "k", k)


@dataclass
class SamplerStats:
    """Running count of proposals and accepted proposals."""

    proposals: int = 0
    acceptances: int = 0

    def __post_init__(self) -> None:
        if self.proposals < 0 or self.acceptances < 0:
            raise ValueError("counts must be nonnegative")
        if self.acceptances > self.proposals:
            raise ValueError("acceptances cannot exceed proposals")

    @property
    def acceptance_rate(self) -> float:
        if self.proposals == 0:
            return float("nan")
        return self.acceptances / self.proposals

    def merge(self, other: "SamplerStats") -> None:
        self.proposals += other.proposals
        self.acceptances += other.acceptances


def _as_dist(dist) -> SinKDistribution:
    return dist if isinstance(dist, SinKDistribution) else SinKDistribution(dist)


def _check_open_support(x) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if not np.all((arr > 0.0) & (arr < PI)):
        raise ValueError("x must lie in the open interval (0, pi)")
    return arr


def _scalar_or_array(arr: np.ndarray, like):
    return float(arr) if np.ndim(like) == 0 else arr


# Bernoulli numbers B_2 .. B_12 for the Stirling series
_BERNOULLI = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0)
_STIRLING_MIN = 20.0


def _stirling_tail(w: float) -> float:
    inv = 1.0 / w
    inv2 = inv * inv
    total = 0.0
    power = inv
    for n, b in enumerate(_BERNOULLI, start=1):
        total += b / (2 * n * (2 * n - 1)) * power
        power *= inv2
    return total


def log_gamma_ratio(z: float, a: float, b: float) -> float:
    """``log Γ(z+a) - log Γ(z+b)`` for ``z + min(a, b) > 0`` and small ``a, b``.

    For large ``z`` the leading Stirling terms are combined analytically,
    ``(z+a-1/2) log1p((a-b)/(z+b)) + (a-b) log(z+b) - (a-b)``, so the two
    O(z log z) log-gammas never get subtracted in floating point.
    """
    if z < _STIRLING_MIN:
        return math.lgamma(z + a) - math.lgamma(z + b)
    wa, wb = z + a, z + b
    lead = (wa - 0.5) * math.log1p((a - b) / wb) + (a - b) * math.log(wb) - (a - b)
    return lead + (_stirling_tail(wa) - _stirling_tail(wb))


def log_normalizer(dist: SinKDistribution) -> float:
    """``log c_k`` with ``c_k = Γ(k/2+1) / (√π Γ(k/2+1/2))``."""
    k = _as_dist(dist).k
    return log_gamma_ratio(0.5 * k, 1.0, 0.5) - 0.5 * LOG_PI


def log_density(dist: SinKDistribution, x):
    """Log of the normalised target density; ``x`` may be a scalar or array."""
    dist = _as_dist(dist)
    arr = _check_open_support(x)
    # fold onto (0, π/2] so the value at x and π - x is bitwise identical
    folded = np.where(arr > _HALF_PI, PI - arr, arr)
    out = log_normalizer(dist) + dist.k * np.log(np.sin(folded))
    return _scalar_or_array(out, x)


def log_envelope_density(dist: SinKDistribution, x):
    """Log density of π·V with V ~ Beta(k+1, k+1)."""
    dist = _as_dist(dist)
    k = dist.k
    arr = _check_open_support(x)
    log_norm = betaln(k + 1.0, k + 1.0) + (2.0 * k + 1.0) * LOG_PI
    out = k * (np.log(arr) + np.log(PI - arr)) - log_norm
    return _scalar_or_array(out, x)


def log_bound(dist: SinKDistribution) -> float:
    """``log M_k``, the supremum of the target/envelope density ratio.

    ``M_k = √π 2**(k-1) Γ(k/2+1)**2 / Γ(k+3/2)``.  Applying the duplication
    formula to Γ(k+3/2) gives ``M_k = π/(2√2) · Γ(z+1)**2 / (Γ(z+3/4) Γ(z+5/4))``
    with ``z = k/2``, which tends to π/(2√2) from below.
    """
    z = 0.5 * _as_dist(dist).k
    ratio = log_gamma_ratio(z, 1.0, 0.75) - log_gamma_ratio(z, 1.25, 1.0)
    return math.log(BOUND_LIMIT) + ratio


def _gamma_marsaglia_tsang(shape: float, size: int, rng: RandomSource) -> np.ndarray:
    # Marsaglia & Tsang (2000) squeeze method, valid for shape >= 1
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(size)
    filled = 0
    while filled < size:
        need = size - filled
        m = int(need * 1.05 + 4.0 * math.sqrt(need)) + 4
        z = rng.standard_normal(m)
        u = rng.uniform(m)
        t = 1.0 + c * z
        ok = t > 0.0
        v = np.where(ok, t * t * t, 1.0)
        z2 = z * z
        squeeze = u < 1.0 - 0.0331 * z2 * z2
        with np.errstate(divide="ignore", invalid="ignore"):
            full = np.log(u) < 0.5 * z2 + d * (1.0 - v + np.log(v))
        accept = ok & (squeeze | full)
        draws = (d * v)[accept][:need]
        out[filled : filled + draws.size] = draws
        filled += draws.size
    return out


def sample_beta_symmetric(k: float, rng: RandomSource, size: int | None = None):
    """Draw from Beta(k+1, k+1) as ``G1 / (G1 + G2)`` with ``G ~ Gamma(k+1, 1)``."""
    k = float(k)
    if not k >= 1.0:
        raise ValueError(f"k must satisfy k >= 1, got {k!r}")
    n = 1 if size is None else int(size)
    g1 = _gamma_marsaglia_tsang(k + 1.0, n, rng)
    g2 = _gamma_marsaglia_tsang(k + 1.0, n, rng)
    v = g1 / (g1 + g2)
    return float(v[0]) if size is None else v


def _log_acceptance_ratio(v: np.ndarray) -> np.ndarray:
    """``log(π² sin X / (4 X (π - X)))`` for ``X = π v``."""
    # sin evaluated on the folded angle π·min(v, 1-v); 1 - v is exact for v >= 1/2
    folded = PI * np.minimum(v, 1.0 - v)
    x = PI * v
    return 2.0 * LOG_PI + np.log(np.sin(folded)) - LOG_4 - np.log(x) - np.log(PI - x)


def sample(
    dist: SinKDistribution,
    rng: RandomSource,
    size: int | None = None,
    stats: SamplerStats | None = None,
):
    """Draw from the sin**k law by beta-envelope rejection.

    Each proposal is ``X = π V`` with ``V ~ Beta(k+1, k+1)`` and is accepted
    when ``log(U)/k <= log(π² sin X / (4 X (π - X)))`` for a fresh uniform
    ``U``.  Proposals are drawn in blocks, but accounting follows the
    sequential algorithm: ``stats`` is charged only for proposals up to and
    including the last acceptance that was used.

    Parameters
    ----------
    dist : SinKDistribution
    rng : RandomSource
    size : int, optional
        Number of draws.  ``None`` returns a single float.
    stats : SamplerStats, optional
        Accumulator updated in place.
    """
    dist = _as_dist(dist)
    k = dist.k
    n = 1 if size is None else int(size)
    if n < 0:
        raise ValueError("size must be nonnegative")
    expected = math.exp(log_bound(dist))
    out = np.empty(n)
    filled = 0
    proposals = 0
    while filled < n:
        need = n - filled
        m = int(need * expected + 4.0 * math.sqrt(need)) + 2
        v = sample_beta_symmetric(k, rng, m)
        u = rng.uniform(m)
        x = PI * v
        inside = (x > 0.0) & (x < PI)
        with np.errstate(divide="ignore", invalid="ignore"):
            accept = inside & (np.log(u) / k <= _log_acceptance_ratio(v))
        idx = np.flatnonzero(accept)
        if idx.size >= need:
            idx = idx[:need]
            proposals += int(idx[-1]) + 1
        else:
            proposals += m
        out[filled : filled + idx.size] = x[idx]
        filled += idx.size
    if stats is not None:
        stats.proposals += proposals
        stats.acceptances += n
    return float(out[0]) if size is None else out
