"""Built-in reproducible fixtures.

The receptor banks are synthetic log-wavelength Gaussians (not physiological
data): normal S/M/L peaks at 440/540/570 nm with widths 30/45/50 nm, and
mutant variants shifting one peak (+15 nm S', -10 nm M', +8 nm L').  The
default illuminants are four Gaussian LEDs at 450/510/570/630 nm with 15 nm
width, which give rank-3 response matrices and one-dimensional metamer
spaces for every built-in bank.
"""

import numpy as np

from .colorimetry import IlluminantBank, ReceptorBank, SpectrumGrid
from .rigid_body import PointMassSet, platonic_fixture

__all__ = [
    "default_grid",
    "receptor_bank",
    "led_bank",
    "RECEPTOR_BANK_NAMES",
    "minimal_invisible_body",
    "minimal_base_body",
    "pauli_matrices",
]

RECEPTOR_BANK_NAMES = ("normal", "s_mutant", "m_mutant", "l_mutant")

_NORMAL_PEAKS = {"S": (440.0, 30.0), "M": (540.0, 45.0), "L": (570.0, 50.0)}
_MUTANT_SHIFTS = {"s_mutant": ("S", 15.0), "m_mutant": ("M", -10.0), "l_mutant": ("L", 8.0)}

_LED_PEAKS = (450.0, 510.0, 570.0, 630.0)
_LED_SIGMA = 15.0


def default_grid() -> SpectrumGrid:
    """380..780 nm in 1 nm steps."""
    return SpectrumGrid(np.arange(380.0, 781.0, 1.0))


def log_gaussian(wl, peak, sigma):
    """Gaussian in log-wavelength whose width near the peak is ``sigma`` nm."""
    wl = np.asarray(wl, dtype=float)
    return np.exp(-0.5 * (np.log(wl / peak) / (sigma / peak)) ** 2)


def gaussian(wl, peak, sigma):
    wl = np.asarray(wl, dtype=float)
    return np.exp(-0.5 * ((wl - peak) / sigma) ** 2)


def receptor_bank(kind: str = "normal", grid: SpectrumGrid | None = None) -> ReceptorBank:
    """One of the built-in banks: normal, s_mutant, m_mutant, l_mutant."""
    if kind not in RECEPTOR_BANK_NAMES:
        raise KeyError(f"unknown receptor bank {kind!r}; choose from {RECEPTOR_BANK_NAMES}")
    grid = grid or default_grid()
    peaks = {name: (peak, sigma) for name, (peak, sigma) in _NORMAL_PEAKS.items()}
    if kind in _MUTANT_SHIFTS:
        channel, shift = _MUTANT_SHIFTS[kind]
        peak, sigma = peaks[channel]
        peaks[channel] = (peak + shift, sigma)
    names = tuple(peaks)
    samples = np.array(
        [log_gaussian(grid.wavelengths, peak, sigma) for peak, sigma in peaks.values()]
    )
    return ReceptorBank(grid, names, samples)


def led_bank(grid: SpectrumGrid | None = None) -> IlluminantBank:
    """Four Gaussian LEDs at 450/510/570/630 nm, sigma 15 nm."""
    grid = grid or default_grid()
    names = tuple(f"led_{int(peak)}" for peak in _LED_PEAKS)
    samples = np.array([gaussian(grid.wavelengths, peak, _LED_SIGMA) for peak in _LED_PEAKS])
    return IlluminantBank(grid, names, samples)


def minimal_invisible_body(m: float = 1.0, l1: float = 1.0, l2: float = 2.0) -> PointMassSet:
    """Four collinear signed masses on the z-axis forming the smallest
    nontrivial invisible body (a parity image of two positive masses)."""
    masses = np.array([m, m * l1 / l2, -m, -m * l1 / l2])
    z = np.array([l1, -l2, -l1, l2])
    positions = np.column_stack([np.zeros(4), np.zeros(4), z])
    return PointMassSet(masses, positions)


def minimal_base_body(M=(1.0, 1.0, 1.0, 1.0), l1: float = 1.0, l2: float = 2.0) -> PointMassSet:
    """Physical four-mass body on the sites of the minimal invisible body."""
    z = np.array([l1, -l2, -l1, l2])
    positions = np.column_stack([np.zeros(4), np.zeros(4), z])
    return PointMassSet(np.asarray(M, dtype=float), positions)


def pauli_matrices() -> dict:
    return {
        "sigma1": np.array([[0, 1], [1, 0]], dtype=complex),
        "sigma2": np.array([[0, -1j], [1j, 0]], dtype=complex),
        "sigma3": np.array([[1, 0], [0, -1]], dtype=complex),
    }


# re-exported so fixture consumers need a single import
platonic_fixture = platonic_fixture
