"""Reference machinery that does not touch the rejection sampler.

``cdf`` evaluates the integral of ``sin(t)**k`` with the textbook reduction
formula in O(k) steps, ``quantile`` inverts it by bisection, and
``sample_inverse_transform`` turns the pair into the slow but obviously
correct baseline sampler.  The KS helpers are used by the validation report
and the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import betaln

from .core import PI, SinKDistribution
from .rng import RandomSource

KS_C_ALPHA_01 = 1.628
_HALF_PI = 0.5 * PI
_BISECT_MAX_ITER = 80
_TAIL_SWITCH = 1e-3
_SERIES_REL_TOL = 1e-17
_SERIES_MAX_TERMS = 10_000_000
# terms below this cannot move a probability and risk stalling in subnormals
_SERIES_FLOOR = 1e-300


@dataclass(frozen=True)
class EmpiricalSample:
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.sort(np.asarray(self.values, dtype=np.float64).ravel())
        if arr.size < 1:
            raise ValueError("empirical sample must contain at least one value")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)


def _integer_k(dist, allow_zero: bool = False) -> int:
    k = dist.k if isinstance(dist, SinKDistribution) else dist
    kf = float(k)
    if not math.isfinite(kf) or kf != math.floor(kf):
        raise ValueError(f"the recursive CDF needs an integer k, got {k!r}")
    lo = 0 if allow_zero else 1
    if kf < lo:
        raise ValueError(f"k must be >= {lo}, got {k!r}")
    return int(kf)


def _upper_half_integral(k: int, t: np.ndarray) -> np.ndarray:
    """``∫_t^{π/2} sin(s)**k ds`` for ``0 <= t <= π/2``.

    Same reduction as for ``∫_0^x`` but written for the complementary
    integral, where every term is nonnegative:
    ``J_m = cos(t) sin(t)**(m-1) / m + (m-1)/m · J_{m-2}``.
    """
    sin_t = np.sin(t)
    cos_t = np.cos(t)
    if k % 2 == 0:
        acc = _HALF_PI - t
        power = sin_t  # sin**(m-1) for m = 2
        m = 2
    else:
        acc = cos_t
        power = sin_t * sin_t  # sin**(m-1) for m = 3
        m = 3
    sin2 = sin_t * sin_t
    while m <= k:
        acc = cos_t * power / m + ((m - 1) / m) * acc
        power = power * sin2
        m += 2
    return acc


def _lower_tail_series(k: int, t: np.ndarray) -> np.ndarray:
    """``∫_0^t sin(s)**k ds`` for ``0 <= t < π/2`` with full relative accuracy.

    The reduction ``I_m = cos sin**(m+1) / (m+1) + (m+2)/(m+1) · I_{m+2}``
    run downward gives a series of positive terms whose ratio is
    ``sin(t)**2 (k+2j)/(k+2j+1)``.
    """
    s2 = np.sin(t) ** 2
    term = np.cos(t) * np.sin(t) ** (k + 1) / (k + 1)
    total = term.copy()
    active = term > 0.0
    j = 1
    while active.any() and j < _SERIES_MAX_TERMS:
        term = np.where(active, term * s2 * (k + 2 * j) / (k + 2 * j + 1), 0.0)
        total += term
        active &= (term > _SERIES_REL_TOL * total) & (term > _SERIES_FLOOR)
        j += 1
    return total


def _lower_tail_mass(k: int, t: np.ndarray, norm: float) -> np.ndarray:
    """Probability of (0, t] for ``0 <= t <= π/2``."""
    mass = 0.5 - norm * _upper_half_integral(k, t)
    # 0.5 - c·J cancels badly in the tail; redo small masses with the series
    tail = mass < _TAIL_SWITCH
    if tail.any():
        mass = mass.copy()
        mass[tail] = norm * _lower_tail_series(k, t[tail])
    return mass


def _cdf_k(k: int, x) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if not np.all((arr >= 0.0) & (arr <= PI)):
        raise ValueError("x must lie in [0, pi]")
    norm = math.exp(-betaln(0.5 * (k + 1.0), 0.5))
    upper = arr > _HALF_PI
    t = np.atleast_1d(np.where(upper, PI - arr, arr))
    mass = _lower_tail_mass(k, t, norm).reshape(arr.shape)
    out = np.where(upper, 1.0 - mass, mass)
    return np.clip(out, 0.0, 1.0)


def cdf(dist, x):
    """CDF of the sin**k law at ``x`` in [0, π].

    ``dist`` is a :class:`SinKDistribution` with integer ``k`` or a bare
    integer ``k >= 0`` (``k = 0`` is the uniform law on (0, π)).
    """
    k = _integer_k(dist, allow_zero=True)
    out = _cdf_k(k, x)
    return float(out) if np.ndim(x) == 0 else out


def quantile(dist, u):
    """Inverse CDF by bisection on [0, π].

    Bisection runs until the bracket collapses to adjacent floats, which
    leaves ``|cdf(x) - u|`` at the rounding level of the CDF itself.
    """
    k = _integer_k(dist, allow_zero=True)
    target = np.asarray(u, dtype=np.float64)
    if not np.all((target > 0.0) & (target < 1.0)):
        raise ValueError("u must lie in the open interval (0, 1)")
    lo = np.zeros(target.shape)
    hi = np.full(target.shape, PI)
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if not np.any((mid > lo) & (mid < hi)):
            break
        below = _cdf_k(k, mid) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    out = np.clip(0.5 * (lo + hi), np.nextafter(0.0, 1.0), np.nextafter(PI, 0.0))
    return float(out) if np.ndim(u) == 0 else out


def sample_inverse_transform(dist, rng: RandomSource, size: int | None = None):
    """Baseline sampler: ``quantile(U)`` for uniform ``U``."""
    k = _integer_k(dist)
    u = rng.uniform(size)
    return quantile(k, u)


def ks_statistic(sample, cdf_fn: Callable[[np.ndarray], np.ndarray]) -> float:
    """One-sample Kolmogorov-Smirnov distance between ``sample`` and ``cdf_fn``."""
    if not isinstance(sample, EmpiricalSample):
        sample = EmpiricalSample(sample)
    x = sample.values
    n = sample.n
    f = np.asarray(cdf_fn(x), dtype=np.float64)
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - f)
    d_minus = np.max(f - (i - 1) / n)
    return float(max(d_plus, d_minus))


def ks_two_sample(a: Sequence[float], b: Sequence[float]) -> float:
    """Two-sample KS distance ``sup |F_a - F_b|``."""
    a = EmpiricalSample(a).values
    b = EmpiricalSample(b).values
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def ks_critical(n: int, m: int | None = None, c_alpha: float = KS_C_ALPHA_01) -> float:
    """Asymptotic KS critical value; two-sample when ``m`` is given."""
    if m is None:
        return c_alpha / math.sqrt(n)
    return c_alpha * math.sqrt((n + m) / (n * m))
