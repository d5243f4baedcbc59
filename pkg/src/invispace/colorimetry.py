"""Response matrices of sampled spectra and their invisible metamer spaces.

A bank of detector sensitivities and a bank of illuminant spectra sampled on
a shared wavelength grid produce a response matrix by trapezoidal quadrature.
Signed illuminant combinations in its kernel are invisible to every detector;
adding them to a physical combination sweeps out a family of indistinguishable
illuminations.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, UnsupportedDimensionError
from .linalg_core import (
    DEFAULT_TOL,
    FeasibleInterval,
    KernelBasis,
    Tolerance,
    kernel_basis,
    positivity_interval,
)

__all__ = [
    "SpectrumGrid",
    "SpectralBank",
    "ReceptorBank",
    "IlluminantBank",
    "MetamerFamily",
    "response_matrix",
    "metamer_space",
    "indistinguishable",
    "metamer_family",
    "discrimination_table",
    "is_physical_weights",
]


@dataclass(frozen=True)
class SpectrumGrid:
    """Strictly increasing wavelength samples in nanometers."""

    wavelengths: np.ndarray

    def __post_init__(self):
        wl = np.asarray(self.wavelengths, dtype=float)
        object.__setattr__(self, "wavelengths", wl)
        if wl.ndim != 1 or wl.size < 2:
            raise InvalidInputError("grid needs at least 2 wavelength samples")
        if not np.all(np.isfinite(wl)):
            raise InvalidInputError("non-finite wavelengths")
        if np.any(np.diff(wl) <= 0):
            raise InvalidInputError("wavelengths must be strictly increasing")
        if np.any(wl <= 0) or np.any(wl >= 1e4):
            raise InvalidInputError("wavelengths must lie in (0, 1e4) nm")

    def __len__(self):
        return self.wavelengths.size

    def matches(self, other):
        return np.array_equal(self.wavelengths, other.wavelengths)


@dataclass(frozen=True)
class SpectralBank:
    """Named nonnegative sampled functions on a shared grid.

    ``samples`` has shape (n_channels, n_wavelengths); each channel must have
    at least one strictly positive sample.
    """

    grid: SpectrumGrid
    names: tuple
    samples: np.ndarray

    def __post_init__(self):
        samples = np.atleast_2d(np.asarray(self.samples, dtype=float))
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) != samples.shape[0]:
            raise InvalidInputError("one name per channel required")
        if samples.shape[1] != len(self.grid):
            raise InvalidInputError("sample count does not match the grid")
        if not np.all(np.isfinite(samples)):
            raise InvalidInputError("non-finite samples")
        if np.any(samples < 0):
            raise InvalidInputError("samples must be nonnegative")
        if np.any(~np.any(samples > 0, axis=1)):
            raise InvalidInputError("every channel needs a strictly positive sample")

    @property
    def n_channels(self):
        return self.samples.shape[0]


class ReceptorBank(SpectralBank):
    """Detector sensitivity functions (dimensionless response per intensity)."""


class IlluminantBank(SpectralBank):
    """Illuminant intensity spectra (power per unit wavelength)."""


@dataclass(frozen=True)
class MetamerFamily:
    """A physical base combination plus an invisible direction and the
    brightness range keeping every member physical."""

    base: np.ndarray
    direction: np.ndarray
    lambda_range: FeasibleInterval

    def member(self, lam):
        return self.base + lam * self.direction


def is_physical_weights(weights) -> bool:
    """True iff every brightness multiplier is >= 0."""
    w = np.asarray(weights, dtype=float)
    return bool(np.all(np.isfinite(w)) and np.all(w >= 0))


def response_matrix(receptors: ReceptorBank, illuminants: IlluminantBank) -> np.ndarray:
    """Matrix of integrated detector responses, one row per receptor and one
    column per illuminant, by trapezoidal quadrature on the shared grid.

    The two banks must carry identical grids; no resampling is attempted.
    """
    if not receptors.grid.matches(illuminants.grid):
        raise InvalidInputError("receptor and illuminant grids differ")
    wl = receptors.grid.wavelengths
    products = receptors.samples[:, None, :] * illuminants.samples[None, :, :]
    return np.trapezoid(products, x=wl, axis=2)


def metamer_space(M, tol: Tolerance = DEFAULT_TOL) -> KernelBasis:
    """Kernel of a response matrix: the invisible metamer space."""
    basis = kernel_basis(M, tol)
    # positive response entries force a sign change in every kernel vector
    for v in basis.vectors:
        if not (np.any(v > 0) and np.any(v < 0)):
            raise InvalidInputError(
                "kernel vector without sign change; response matrix is not "
                "strictly positive"
            )
    return basis


def indistinguishable(receptors, illuminants, b1, b2, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the two illuminant combinations induce identical responses."""
    M = response_matrix(receptors, illuminants)
    b1 = np.asarray(b1, dtype=float)
    b2 = np.asarray(b2, dtype=float)
    if b1.shape != (M.shape[1],) or b2.shape != (M.shape[1],):
        raise InvalidInputError("weight vector length does not match illuminant count")
    diff = b1 - b2
    resid = np.linalg.norm(M @ diff)
    scale = np.linalg.norm(M, 2) * np.linalg.norm(diff)
    return bool(resid <= tol.cutoff(scale))


def metamer_family(receptors, illuminants, base, tol: Tolerance = DEFAULT_TOL) -> MetamerFamily:
    """Family of combinations indistinguishable from ``base`` for this bank.

    Requires a strictly positive base and an exactly one-dimensional metamer
    space; the feasible range then contains 0 strictly inside.
    """
    base = np.asarray(base, dtype=float)
    M = response_matrix(receptors, illuminants)
    if base.shape != (M.shape[1],):
        raise InvalidInputError("base length does not match illuminant count")
    if not np.all(base > 0):
        raise InvalidInputError("base combination must be strictly positive")
    basis = metamer_space(M, tol)
    if basis.dim != 1:
        raise UnsupportedDimensionError(
            f"metamer space has dimension {basis.dim}, expected 1"
        )
    direction = basis.vectors[0]
    return MetamerFamily(base, direction, positivity_interval(base, direction))


def discrimination_table(banks, illuminants, base, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Which bank distinguishes which bank's metamer family.

    ``banks`` maps names to receptor banks, each with a one-dimensional
    metamer space.  Entry (i, j) is True iff bank j separates the members of
    bank i's family; diagonal entries are always False.
    """
    directions = {}
    matrices = {}
    for name, bank in banks.items():
        fam = metamer_family(bank, illuminants, base, tol)
        directions[name] = fam.direction
        matrices[name] = response_matrix(bank, illuminants)
    table = {}
    for i in banks:
        row = {}
        for j in banks:
            Mj = matrices[j]
            resid = np.linalg.norm(Mj @ directions[i])
            scale = np.linalg.norm(Mj, 2) * np.linalg.norm(directions[i])
            row[j] = bool(resid > tol.cutoff(scale))
        table[i] = row
    return table
