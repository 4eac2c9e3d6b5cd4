"""Random correlation matrices through the hyperspherical Cholesky parametrisation.

Row ``i`` of the lower-triangular factor ``B`` is a unit vector written in
spherical coordinates with angles ``θ_i1 … θ_i,i-1``.  Drawing the angles in
column ``j`` from the sin**(p-j) law (``j`` 1-based) makes ``R = B Bᵀ``
uniform over the set of ``p × p`` correlation matrices.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import PI, SamplerStats, SinKDistribution, sample
from .oracle import sample_inverse_transform
from .rng import RandomSource

METHODS = ("rejection", "inverse")
PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class AngleMatrix:
    """Angles stored in the strict lower triangle of a ``p × p`` array."""

    p: int
    theta: np.ndarray

    def __post_init__(self) -> None:
        theta = np.asarray(self.theta, dtype=np.float64)
        if theta.shape != (self.p, self.p):
            raise ValueError(f"theta must have shape ({self.p}, {self.p})")
        lower = np.tril_indices(self.p, -1)
        vals = theta[lower]
        if not np.all((vals > 0.0) & (vals < PI)):
            raise ValueError("every angle must lie in (0, pi)")
        object.__setattr__(self, "theta", theta)

    @property
    def values(self) -> np.ndarray:
        """The ``p(p-1)/2`` stored angles, row by row."""
        return self.theta[np.tril_indices(self.p, -1)]


@dataclass(frozen=True)
class CholeskyFactor:
    p: int
    B: np.ndarray


@dataclass(frozen=True)
class CorrelationMatrix:
    p: int
    R: np.ndarray


def _check_p(p) -> int:
    if isinstance(p, bool) or int(p) != p or p < 1:
        raise ValueError(f"p must be an integer >= 1, got {p!r}")
    return int(p)


def _draw_column(k: int, n: int, rng: RandomSource, method: str, stats: SamplerStats | None):
    if method == "rejection":
        return sample(SinKDistribution(k), rng, size=n, stats=stats)
    if method == "inverse":
        out = sample_inverse_transform(k, rng, size=n)
        if stats is not None:
            stats.proposals += n
            stats.acceptances += n
        return out
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def sample_angles(
    p: int,
    rng: RandomSource,
    method: str = "rejection",
    stats: SamplerStats | None = None,
    parallel: bool = False,
    max_workers: int | None = None,
) -> AngleMatrix:
    """Draw the ``p(p-1)/2`` angles column by column.

    Column ``j`` (0-based) holds ``p - j - 1`` angles, all from the sin**k law
    with ``k = p - j - 1``.  Sequential mode consumes ``rng`` in column order.
    Parallel mode gives column ``j`` the ``j``-th stream spawned from the
    seed of ``rng``, so its output is also fixed by the seed (but differs
    from sequential mode).
    """
    p = _check_p(p)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    theta = np.zeros((p, p))
    cols = range(p - 1)
    if not parallel:
        for j in cols:
            theta[j + 1 :, j] = _draw_column(p - j - 1, p - j - 1, rng, method, stats)
    else:
        streams = rng.spawn(p - 1)
        col_stats = [SamplerStats() for _ in cols]

        def work(j: int) -> np.ndarray:
            return _draw_column(p - j - 1, p - j - 1, streams[j], method, col_stats[j])

        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            for j, column in zip(cols, pool.map(work, cols)):
                theta[j + 1 :, j] = column
        if stats is not None:
            for s in col_stats:
                stats.merge(s)
    return AngleMatrix(p, theta)


def build_cholesky(angles: AngleMatrix) -> CholeskyFactor:
    """Map angles to the lower-triangular factor with unit-norm rows.

    ``B[i, j] = cos θ_ij ∏_{l<j} sin θ_il`` for ``j < i`` and
    ``B[i, i] = ∏_{l<i} sin θ_il``.
    """
    p = angles.p
    strict = np.tri(p, p, -1, dtype=bool)
    sin_t = np.where(strict, np.sin(angles.theta), 1.0)
    cos_t = np.where(strict, np.cos(angles.theta), 0.0)
    # prefix[i, j] = prod_{l<j} sin θ_il, accumulated left to right
    prefix = np.ones((p, p))
    if p > 1:
        np.cumprod(sin_t[:, :-1], axis=1, out=prefix[:, 1:])
    B = cos_t * prefix
    B[np.diag_indices(p)] = np.diagonal(prefix)
    return CholeskyFactor(p, B)


def correlation_matrix(factor: CholeskyFactor) -> CorrelationMatrix:
    """``R = B Bᵀ`` with a mirrored lower triangle and an exact unit diagonal."""
    B = factor.B
    full = B @ B.T
    R = np.tril(full, -1)
    R = R + R.T
    np.fill_diagonal(R, 1.0)
    return CorrelationMatrix(factor.p, R)


def randcorr(
    p: int,
    rng: RandomSource,
    method: str = "rejection",
    stats: SamplerStats | None = None,
    parallel: bool = False,
) -> CorrelationMatrix:
    """Random ``p × p`` correlation matrix, uniform over the elliptope."""
    angles = sample_angles(p, rng, method=method, stats=stats, parallel=parallel)
    return correlation_matrix(build_cholesky(angles))


def log_det_from_factor(factor: CholeskyFactor) -> float:
    return float(2.0 * np.sum(np.log(np.diagonal(factor.B))))


def check_correlation(R: np.ndarray, pivot_tol: float = PIVOT_TOL) -> list[str]:
    """Return a list of violated validity conditions (empty when valid)."""
    R = np.asarray(R)
    problems = []
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        return ["matrix is not square"]
    if not np.array_equal(R, R.T):
        problems.append("matrix is not exactly symmetric")
    if not np.all(np.diagonal(R) == 1.0):
        problems.append("diagonal is not exactly one")
    off = R[~np.eye(R.shape[0], dtype=bool)]
    if not np.all((off > -1.0) & (off < 1.0)):
        problems.append("off-diagonal entry outside (-1, 1)")
    try:
        L = np.linalg.cholesky(R)
    except np.linalg.LinAlgError:
        problems.append("Cholesky factorisation failed")
    else:
        if np.min(np.diagonal(L) ** 2) <= pivot_tol:
            problems.append(f"Cholesky pivot below {pivot_tol:g}")
    return problems
