"""Rank-revealing kernel computation and positivity-cone interval arithmetic.

All routines are pure functions of immutable inputs.  Null spaces are
computed from a full SVD with a relative rank cutoff, which yields an
orthonormal basis directly; basis vectors carry a deterministic sign
convention (first nonzero component positive).
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

__all__ = [
    "Tolerance",
    "FeasibleInterval",
    "KernelBasis",
    "DEFAULT_TOL",
    "kernel_basis",
    "numerical_rank",
    "positivity_interval",
]


@dataclass(frozen=True)
class Tolerance:
    """Rank / residual cutoff: a singular value (or residual) counts as zero
    when it is below ``rel * scale + abs``.

    Parameters
    ----------
    rel : float
        Relative threshold, > 0.
    abs : float
        Absolute threshold, >= 0.
    """

    rel: float = 1e-10
    abs: float = 0.0

    def __post_init__(self):
        if not (self.rel > 0):
            raise InvalidInputError(f"tolerance rel must be > 0, got {self.rel}")
        if not (self.abs >= 0):
            raise InvalidInputError(f"tolerance abs must be >= 0, got {self.abs}")

    def cutoff(self, scale):
        return self.rel * scale + self.abs


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class FeasibleInterval:
    """A closed interval of admissible scalar parameters.

    Endpoints may be ``-inf`` / ``+inf``.  The empty interval is represented
    by ``lo > hi`` (canonically ``(+inf, -inf)``); never by sentinel finite
    values.
    """

    lo: float
    hi: float

    @classmethod
    def unbounded(cls):
        return cls(-np.inf, np.inf)

    @classmethod
    def empty(cls):
        return cls(np.inf, -np.inf)

    @property
    def is_empty(self):
        return self.lo > self.hi

    def contains(self, x, slack=0.0):
        return (not self.is_empty) and (self.lo - slack <= x <= self.hi + slack)

    def intersect(self, other):
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        return FeasibleInterval(lo, hi) if lo <= hi else FeasibleInterval.empty()


@dataclass(frozen=True)
class KernelBasis:
    """Orthonormal basis of a numerical null space.

    ``vectors`` has shape (dim, dim_ambient); rows are the basis vectors.
    """

    dim_ambient: int
    vectors: np.ndarray

    @property
    def dim(self):
        return self.vectors.shape[0]

    def projector(self):
        """Orthogonal projector onto the spanned subspace."""
        return self.vectors.T @ self.vectors


def _as_matrix(A):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise InvalidInputError(f"expected a 2-d matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidInputError("matrix has non-finite entries")
    return A


def _fix_signs(vectors):
    # first nonzero component of each basis vector made positive
    out = vectors.copy()
    for i, v in enumerate(out):
        nz = np.flatnonzero(np.abs(v) > 1e-14 * max(1.0, np.abs(v).max()))
        if nz.size and v[nz[0]] < 0:
            out[i] = -v
    return out


def numerical_rank(A, tol: Tolerance = DEFAULT_TOL) -> int:
    """Number of singular values above ``tol.rel * sigma_max + tol.abs``."""
    A = _as_matrix(A)
    s = np.linalg.svd(A, compute_uv=False)
    smax = s[0] if s.size else 0.0
    return int(np.sum(s > tol.cutoff(smax)))


def kernel_basis(A, tol: Tolerance = DEFAULT_TOL) -> KernelBasis:
    """Orthonormal basis of the numerical null space of ``A``.

    Every returned vector ``v`` satisfies
    ``||A v|| <= tol.rel * sigma_max(A) * ||v|| + tol.abs``.
    """
    A = _as_matrix(A)
    _, s, vt = np.linalg.svd(A)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > tol.cutoff(smax)))
    vectors = _fix_signs(vt[rank:])
    return KernelBasis(dim_ambient=A.shape[1], vectors=vectors)


def positivity_interval(base, direction) -> FeasibleInterval:
    """Range of ``lam`` keeping ``base + lam * direction`` componentwise >= 0.

    ``base`` must be componentwise nonnegative, so the closed interval always
    contains 0.  Components with zero direction impose no bound.
    """
    base = np.asarray(base, dtype=float)
    direction = np.asarray(direction, dtype=float)
    if base.shape != direction.shape or base.ndim != 1:
        raise InvalidInputError(
            f"shape mismatch: base {base.shape} vs direction {direction.shape}"
        )
    if not (np.all(np.isfinite(base)) and np.all(np.isfinite(direction))):
        raise InvalidInputError("non-finite entries")
    if np.any(base < 0):
        raise InvalidInputError("base has a negative entry")

    lo, hi = -np.inf, np.inf
    pos = direction > 0
    neg = direction < 0
    if np.any(pos):
        lo = np.max(-base[pos] / direction[pos])
    if np.any(neg):
        hi = np.min(-base[neg] / direction[neg])
    return FeasibleInterval(lo, hi)
