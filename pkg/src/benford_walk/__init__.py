"""Random product sequences in fractional-log space and Benford convergence checks."""

from .errors import (
    BenfordWalkError,
    CapacityError,
    ConfigError,
    DomainError,
    PrecisionError,
    UnsupportedFamilyError,
)
from .generators import GeneratorSpec, ScalarDist, derive_seed, gamma_of, make_stream
from .mantissa_core import benford_cdf, first_digit_prob, fraclog, mantissa, unit_phase
from .product_walk import MantissaTrajectory, WeylSeries, accumulate, weyl_series
from .statistics import (
    ConformanceReport,
    EnsembleFourier,
    chi_square_first_digit,
    ensemble_fourier,
    ensemble_ks_at,
    ks_to_benford,
    robbins_rhs,
    star_discrepancy,
)

__version__ = "0.1.0"

__all__ = [
    "BenfordWalkError",
    "CapacityError",
    "ConfigError",
    "ConformanceReport",
    "DomainError",
    "EnsembleFourier",
    "GeneratorSpec",
    "MantissaTrajectory",
    "PrecisionError",
    "ScalarDist",
    "UnsupportedFamilyError",
    "WeylSeries",
    "accumulate",
    "benford_cdf",
    "chi_square_first_digit",
    "derive_seed",
    "ensemble_fourier",
    "ensemble_ks_at",
    "first_digit_prob",
    "fraclog",
    "gamma_of",
    "ks_to_benford",
    "make_stream",
    "mantissa",
    "robbins_rhs",
    "star_discrepancy",
    "unit_phase",
    "weyl_series",
]
