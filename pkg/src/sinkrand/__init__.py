"""Beta-envelope rejection sampling for sin**k(x) and uniform random correlation matrices."""

from .core import (
    BOUND_LIMIT,
    SamplerStats,
    SinKDistribution,
    log_bound,
    log_density,
    log_envelope_density,
    log_normalizer,
    sample,
    sample_beta_symmetric,
)
from .randcorr import (
    AngleMatrix,
    CholeskyFactor,
    CorrelationMatrix,
    build_cholesky,
    check_correlation,
    correlation_matrix,
    randcorr,
    sample_angles,
)
from .rng import DEFAULT_SEED, RandomSource

__version__ = "0.1.0"

__all__ = [
    "AngleMatrix",
    "BOUND_LIMIT",
    "CholeskyFactor",
    "CorrelationMatrix",
    "DEFAULT_SEED",
    "RandomSource",
    "SamplerStats",
    "SinKDistribution",
    "build_cholesky",
    "check_correlation",
    "correlation_matrix",
    "log_bound",
    "log_density",
    "log_envelope_density",
    "log_normalizer",
    "randcorr",
    "sample",
    "sample_angles",
    "sample_beta_symmetric",
]
