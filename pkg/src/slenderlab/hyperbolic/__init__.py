"""Cayley-graph checks for free and small-cancellation groups."""

from .cayley import (
    CayleyBall,
    DistortionReport,
    GromovReport,
    NgonReport,
    TorsionError,
    ball,
    delta_estimate,
    gromov_product,
    lambda_estimate,
    min_power_exponent,
    ngon_check,
    periodic_distortion_check,
    power_grows,
)
from .metric import ResourceCapError, WordMetric
from .presentation import (
    PieceWitness,
    Presentation,
    StrategyError,
    bs_presentation,
    c16_check,
    dehn_reduce,
    free_presentation,
    surface_presentation,
)
