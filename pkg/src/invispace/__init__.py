"""Null spaces of positive measurement maps and their physical ambiguity
sets: color metamers, dynamically equivalent rigid bodies, and quantum grey
boxes."""

from .errors import (
    InfeasibleRecordError,
    InvalidInputError,
    InvispaceError,
    PreconditionError,
    UnsupportedDimensionError,
)
from .linalg_core import (
    DEFAULT_TOL,
    FeasibleInterval,
    KernelBasis,
    Tolerance,
    kernel_basis,
    numerical_rank,
    positivity_interval,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "FeasibleInterval",
    "InfeasibleRecordError",
    "InvalidInputError",
    "InvispaceError",
    "KernelBasis",
    "PreconditionError",
    "Tolerance",
    "UnsupportedDimensionError",
    "kernel_basis",
    "numerical_rank",
    "positivity_interval",
]
