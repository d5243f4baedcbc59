"""Invisible density-matrix spaces for finite observable suites.

A suite of expectation values pins a density matrix down only up to the
space of traceless Hermitian operators orthogonal (Hilbert-Schmidt) to every
observable.  This module computes that space, the positive-semidefinite step
range along any such direction, a particular affine reconstruction, and
reproducible samples of the physical ambiguity set.

Hermitian matrices are mapped to real coordinate vectors (the d diagonal
entries, then sqrt(2) times the real and imaginary parts of the strict upper
triangle, row-major) so the Hilbert-Schmidt inner product becomes the
Euclidean dot product and the shared kernel machinery applies unchanged.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InfeasibleRecordError, InvalidInputError, PreconditionError
from .linalg_core import FeasibleInterval, Tolerance, kernel_basis

__all__ = [
    "QUANTUM_TOL",
    "MeasurementRecord",
    "InvisibleOperatorBasis",
    "AffineSolution",
    "BlindSpotReport",
    "realify",
    "unrealify",
    "expectation",
    "invisible_space",
    "is_physical",
    "feasible_step_interval",
    "reconstruct_affine",
    "ambiguity_sample",
    "blind_spot_compare",
]

# eigen-solvers return tiny negative values on boundary states
QUANTUM_TOL = Tolerance(rel=1e-9, abs=0.0)

_HERM_TOL = 1e-12


def _as_hermitian(M, name="matrix"):
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidInputError(f"{name} must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M.real)) or not np.all(np.isfinite(M.imag)):
        raise InvalidInputError(f"{name} has non-finite entries")
    scale = max(1.0, np.abs(M).max())
    if np.abs(M - M.conj().T).max() > _HERM_TOL * scale:
        raise InvalidInputError(f"{name} is not Hermitian")
    return 0.5 * (M + M.conj().T)


def realify(H) -> np.ndarray:
    """Real coordinates of a Hermitian matrix, isometric for the
    Hilbert-Schmidt inner product."""
    H = np.asarray(H, dtype=complex)
    d = H.shape[0]
    iu = np.triu_indices(d, 1)
    return np.concatenate(
        [np.real(np.diag(H)), np.sqrt(2) * np.real(H[iu]), np.sqrt(2) * np.imag(H[iu])]
    )


def unrealify(x, d: int) -> np.ndarray:
    """Inverse of :func:`realify`."""
    x = np.asarray(x, dtype=float)
    if x.size != d * d:
        raise InvalidInputError(f"expected {d * d} coordinates, got {x.size}")
    n_off = d * (d - 1) // 2
    diag = x[:d]
    re = x[d : d + n_off] / np.sqrt(2)
    im = x[d + n_off :] / np.sqrt(2)
    H = np.diag(diag.astype(complex))
    iu = np.triu_indices(d, 1)
    H[iu] = re + 1j * im
    H[(iu[1], iu[0])] = re - 1j * im
    return H


@dataclass(frozen=True)
class MeasurementRecord:
    """Observables and their measured expectation values."""

    observables: tuple
    values: np.ndarray

    def __post_init__(self):
        obs = tuple(_as_hermitian(M, f"observable {i}") for i, M in enumerate(self.observables))
        vals = np.atleast_1d(np.asarray(self.values, dtype=float))
        if len(obs) != vals.size:
            raise InvalidInputError("one value per observable required")
        if not np.all(np.isfinite(vals)):
            raise InvalidInputError("non-finite measured values")
        dims = {M.shape[0] for M in obs}
        if len(dims) > 1:
            raise InvalidInputError("observables have mixed dimensions")
        object.__setattr__(self, "observables", obs)
        object.__setattr__(self, "values", vals)

    @property
    def dim(self):
        return self.observables[0].shape[0] if self.observables else None


@dataclass(frozen=True)
class InvisibleOperatorBasis:
    """Orthonormal traceless Hermitian operators annihilated by a suite."""

    dim: int
    operators: tuple

    def __len__(self):
        return len(self.operators)

    def projector(self) -> np.ndarray:
        """Projector onto the spanned subspace, in real coordinates."""
        if not self.operators:
            return np.zeros((self.dim**2, self.dim**2))
        V = np.array([realify(X) for X in self.operators])
        return V.T @ V


@dataclass(frozen=True)
class AffineSolution:
    """Minimum-norm Hermitian solution of the measurement constraints."""

    matrix: np.ndarray
    physical: bool


@dataclass(frozen=True)
class BlindSpotReport:
    dim_a: int
    dim_b: int
    dim_intersection: int
    a_resolved_by_b: Optional[np.ndarray]  # an A-ambiguity that B detects
    b_resolved_by_a: Optional[np.ndarray]


def expectation(rho, M) -> float:
    """Expectation value Tr(rho M) of a Hermitian observable."""
    rho = _as_hermitian(rho, "state")
    M = _as_hermitian(M, "observable")
    if rho.shape != M.shape:
        raise InvalidInputError("state and observable dimensions differ")
    tr = np.trace(rho @ M)
    assert abs(tr.imag) <= 1e-10 * (1.0 + abs(tr.real))
    return float(tr.real)


def _check_suite(suite):
    suite = [_as_hermitian(M, f"observable {i}") for i, M in enumerate(suite)]
    dims = {M.shape[0] for M in suite}
    if len(dims) > 1:
        raise InvalidInputError("observables have mixed dimensions")
    return suite


def invisible_space(suite, dim: Optional[int] = None, tol: Tolerance = QUANTUM_TOL) -> InvisibleOperatorBasis:
    """Basis of traceless Hermitian operators with zero overlap against
    every observable in the suite.

    ``dim`` is required only for an empty suite.  The dimension is at least
    d^2 - 1 - len(suite), with equality for independent suites.
    """
    suite = _check_suite(suite)
    if suite:
        d = suite[0].shape[0]
        if dim is not None and dim != d:
            raise InvalidInputError("dim disagrees with the observables")
    elif dim is None:
        raise InvalidInputError("dim is required for an empty suite")
    else:
        d = dim
    rows = [realify(np.eye(d))] + [realify(M) for M in suite]
    basis = kernel_basis(np.array(rows), tol)
    ops = tuple(unrealify(v, d) for v in basis.vectors)
    return InvisibleOperatorBasis(dim=d, operators=ops)


def is_physical(rho, tol: Tolerance = QUANTUM_TOL) -> bool:
    """True iff rho is Hermitian with unit trace and no eigenvalue below
    ``-tol.rel * (1 + ||rho||)``."""
    rho = _as_hermitian(rho, "state")
    slack = tol.cutoff(1.0 + np.linalg.norm(rho))
    if abs(np.trace(rho).real - 1.0) > slack:
        return False
    return bool(np.linalg.eigvalsh(rho).min() >= -slack)


def _psd_slack(rho, tol):
    return tol.cutoff(1.0 + np.linalg.norm(rho))


def feasible_step_interval(rho, X, tol: Tolerance = QUANTUM_TOL) -> FeasibleInterval:
    """Maximal closed range of ``lam`` keeping ``rho + lam X`` positive
    semidefinite; always contains 0.

    On strictly positive states the bounds come from the eigenvalues of the
    whitened direction rho^{-1/2} X rho^{-1/2}; singular states fall back to
    bisection on the minimum eigenvalue.
    """
    rho = _as_hermitian(rho, "state")
    X = _as_hermitian(X, "direction")
    if rho.shape != X.shape:
        raise InvalidInputError("state and direction dimensions differ")
    x_scale = np.linalg.norm(X)
    if abs(np.trace(X).real) > tol.cutoff(1.0 + x_scale):
        raise InvalidInputError("direction must be traceless")
    if x_scale <= tol.cutoff(1.0):
        return FeasibleInterval.unbounded()

    slack = _psd_slack(rho, tol)
    w, U = np.linalg.eigh(rho)
    if w.min() > np.sqrt(slack) * max(1.0, w.max()):
        # interior state: analytic pencil bounds
        whiten = U @ np.diag(w**-0.5) @ U.conj().T
        mu = np.linalg.eigvalsh(whiten @ X @ whiten)
        lo = -1.0 / mu.max() if mu.max() > 0 else -np.inf
        hi = -1.0 / mu.min() if mu.min() < 0 else np.inf
        return FeasibleInterval(lo, hi)
    return FeasibleInterval(
        -_bisect_boundary(rho, -X, slack), _bisect_boundary(rho, X, slack)
    )


def _bisect_boundary(rho, X, slack):
    """Largest t >= 0 with lambda_min(rho + t X) >= -slack (t_min is concave
    in t, so the feasible t form an interval containing 0)."""

    def feasible(t):
        return np.linalg.eigvalsh(rho + t * X).min() >= -slack

    # PSD with unit trace bounds the Frobenius norm, capping any feasible t
    cap = 2.0 * (1.0 + np.linalg.norm(rho)) / np.linalg.norm(X)
    if feasible(cap):
        return np.inf
    good, bad = 0.0, cap
    for _ in range(200):
        mid = 0.5 * (good + bad)
        if feasible(mid):
            good = mid
        else:
            bad = mid
        if bad - good <= 1e-14 * max(1.0, bad):
            break
    return good


def reconstruct_affine(record: MeasurementRecord, tol: Tolerance = QUANTUM_TOL) -> AffineSolution:
    """Minimum-Frobenius-norm Hermitian solution of Tr(rho) = 1 and
    Tr(rho M_j) = v_j; flagged non-physical rather than rejected when it
    fails positivity."""
    d = record.dim
    if d is None:
        raise InvalidInputError("record has no observables; dimension unknown")
    C = np.array([realify(np.eye(d))] + [realify(M) for M in record.observables])
    b = np.concatenate([[1.0], record.values])
    x, *_ = np.linalg.lstsq(C, b, rcond=None)
    resid = np.linalg.norm(C @ x - b)
    if resid > tol.cutoff(np.linalg.norm(b) + np.linalg.norm(C) * np.linalg.norm(x)):
        raise InfeasibleRecordError(
            f"measurement record is inconsistent (residual {resid:.3e})"
        )
    rho = unrealify(x, d)
    return AffineSolution(matrix=rho, physical=is_physical(rho, tol))


def ambiguity_sample(
    record: MeasurementRecord, count: int, seed: int, tol: Tolerance = QUANTUM_TOL
):
    """Reproducible physical states consistent with the record.

    Each draw picks a uniform unit direction in the invisible space, finds
    its feasible step range from the base reconstruction, and samples the
    step uniformly on that range shrunk by a factor (1 - 1e-6) to keep the
    sample strictly physical.  Fully determined by ``seed``.
    """
    base = reconstruct_affine(record, tol)
    if not base.physical:
        raise PreconditionError("ambiguity_sample: affine reconstruction is not physical")
    space = invisible_space(list(record.observables), dim=record.dim, tol=tol)
    rng = np.random.default_rng(seed)
    if len(space) == 0:
        return [base.matrix.copy() for _ in range(count)]
    samples = []
    for _ in range(count):
        coeffs = rng.standard_normal(len(space))
        coeffs /= np.linalg.norm(coeffs)
        X = sum(c * op for c, op in zip(coeffs, space.operators))
        interval = feasible_step_interval(base.matrix, X, tol)
        mid = 0.5 * (interval.lo + interval.hi)
        half = 0.5 * (interval.hi - interval.lo) * (1.0 - 1e-6)
        lam = mid + (2.0 * rng.random() - 1.0) * half
        samples.append(base.matrix + lam * X)
    return samples


def _first_resolved(space: InvisibleOperatorBasis, other_suite, tol: Tolerance):
    """A basis element of ``space`` not annihilated by ``other_suite``."""
    for X in space.operators:
        for M in other_suite:
            overlap = np.trace(X @ M).real
            if abs(overlap) > tol.cutoff(np.linalg.norm(X) * np.linalg.norm(M)):
                return X
    return None


def blind_spot_compare(suiteA, suiteB, dim: Optional[int] = None, tol: Tolerance = QUANTUM_TOL) -> BlindSpotReport:
    """Compare the invisible spaces of two suites on the same system:
    dimensions, the dimension of their intersection, and (when present) an
    ambiguity direction of each suite that the other one resolves."""
    suiteA = _check_suite(suiteA)
    suiteB = _check_suite(suiteB)
    dims = {M.shape[0] for M in suiteA + suiteB}
    if dim is not None:
        dims.add(dim)
    if len(dims) > 1:
        raise InvalidInputError("suites act on different dimensions")
    if not dims:
        raise InvalidInputError("dim is required when both suites are empty")
    d = dims.pop()
    space_a = invisible_space(suiteA, dim=d, tol=tol)
    space_b = invisible_space(suiteB, dim=d, tol=tol)
    joint = invisible_space(suiteA + suiteB, dim=d, tol=tol)
    return BlindSpotReport(
        dim_a=len(space_a),
        dim_b=len(space_b),
        dim_intersection=len(joint),
        a_resolved_by_b=_first_resolved(space_a, suiteB, tol),
        b_resolved_by_a=_first_resolved(space_b, suiteA, tol),
    )
