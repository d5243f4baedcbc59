"""Signed point-mass distributions and dynamical invisibility.

A rigid body's motion depends only on total mass, center of mass, and the
inertia tensor taken about the center of mass.  Distributions whose total
mass, mass dipole, and origin inertia tensor all vanish are dynamically
invisible; adding them to a physical body (keeping all masses nonnegative)
produces distinct but dynamically equivalent bodies.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidInputError, PreconditionError
from .linalg_core import DEFAULT_TOL, FeasibleInterval, Tolerance, positivity_interval

__all__ = [
    "PointMassSet",
    "MechanicalSummary",
    "summary",
    "is_invisible",
    "parity_construction",
    "rotation_construction",
    "generalized_rotation_construction",
    "superpose",
    "are_equivalent",
    "equivalent_family",
    "platonic_fixture",
]

MERGE_REL = 1e-9  # positions within MERGE_REL * r_max count as one site


@dataclass(frozen=True)
class PointMassSet:
    """Signed point masses: ``masses`` shape (n,), ``positions`` shape (n, 3)."""

    masses: np.ndarray
    positions: np.ndarray

    def __post_init__(self):
        m = np.atleast_1d(np.asarray(self.masses, dtype=float))
        x = np.asarray(self.positions, dtype=float).reshape(-1, 3)
        if m.shape[0] != x.shape[0]:
            raise InvalidInputError("one position per mass required")
        if not (np.all(np.isfinite(m)) and np.all(np.isfinite(x))):
            raise InvalidInputError("non-finite masses or positions")
        object.__setattr__(self, "masses", m)
        object.__setattr__(self, "positions", x)

    @classmethod
    def empty(cls):
        return cls(np.zeros(0), np.zeros((0, 3)))

    @property
    def n_points(self):
        return self.masses.size

    @property
    def is_physical(self):
        return bool(np.all(self.masses >= 0) and np.sum(self.masses) > 0)

    @property
    def abs_mass(self):
        return float(np.sum(np.abs(self.masses)))

    @property
    def r_max(self):
        if self.n_points == 0:
            return 0.0
        return float(np.max(np.linalg.norm(self.positions, axis=1)))

    def translated(self, shift):
        return PointMassSet(self.masses, self.positions + np.asarray(shift, dtype=float))

    def negated(self):
        return PointMassSet(-self.masses, self.positions)

    def scaled(self, c):
        return PointMassSet(c * self.masses, self.positions)


@dataclass(frozen=True)
class MechanicalSummary:
    total_mass: float
    center_of_mass: Optional[np.ndarray]  # None when total mass vanishes
    inertia_about_origin: np.ndarray
    inertia_about_cm: Optional[np.ndarray]


def _inertia(masses, positions):
    r2 = np.sum(positions**2, axis=1)
    iso = np.sum(masses * r2) * np.eye(3)
    return iso - (masses[:, None] * positions).T @ positions


def mass_dipole(body: PointMassSet) -> np.ndarray:
    return body.positions.T @ body.masses if body.n_points else np.zeros(3)


def summary(body: PointMassSet, tol: Tolerance = DEFAULT_TOL) -> MechanicalSummary:
    """Total mass, center of mass, and inertia tensors of a body.

    Center of mass and CM-referred inertia are None when the total mass is
    zero within tolerance (scaled by the total absolute mass).
    """
    total = float(np.sum(body.masses))
    inertia_origin = _inertia(body.masses, body.positions)
    if abs(total) <= tol.cutoff(body.abs_mass):
        return MechanicalSummary(total, None, inertia_origin, None)
    cm = mass_dipole(body) / total
    inertia_cm = _inertia(body.masses, body.positions - cm)
    return MechanicalSummary(total, cm, inertia_origin, inertia_cm)


def is_invisible(body: PointMassSet, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff total mass, mass dipole, and origin inertia all vanish.

    Thresholds are scale-aware: the mass test is scaled by the total absolute
    mass, the dipole by absolute mass times spatial extent, the inertia by
    absolute mass times extent squared.
    """
    m_abs, r = body.abs_mass, body.r_max
    if abs(np.sum(body.masses)) > tol.cutoff(m_abs):
        return False
    if np.linalg.norm(mass_dipole(body)) > tol.cutoff(m_abs * r):
        return False
    inertia = _inertia(body.masses, body.positions)
    return bool(np.linalg.norm(inertia) <= tol.cutoff(m_abs * r**2))


def _require_cm_at_origin(body, tol, who):
    if np.linalg.norm(mass_dipole(body)) > tol.cutoff(body.abs_mass * body.r_max):
        raise PreconditionError(f"{who}: center of mass (mass dipole) not at origin")


def parity_construction(body: PointMassSet, tol: Tolerance = DEFAULT_TOL) -> PointMassSet:
    """Mirror a CM-centered body with negated masses at inverted positions.

    The union is dynamically invisible: masses cancel pairwise, the dipole
    doubles the (vanishing) input dipole, and inertia is even under parity.
    """
    _require_cm_at_origin(body, tol, "parity_construction")
    return PointMassSet(
        np.concatenate([body.masses, -body.masses]),
        np.vstack([body.positions, -body.positions]),
    )


def _check_rotation(R):
    R = np.asarray(R, dtype=float)
    if R.shape != (3, 3) or not np.all(np.isfinite(R)):
        raise InvalidInputError("rotation must be a finite 3x3 matrix")
    if np.linalg.norm(R.T @ R - np.eye(3)) > 1e-10:
        raise InvalidInputError("rotation matrix is not orthogonal")
    return R


def rotation_construction(body: PointMassSet, R, tol: Tolerance = DEFAULT_TOL) -> PointMassSet:
    """Add negated masses at rotated positions of an isotropic-inertia body.

    Requires CM at the origin and origin inertia proportional to the
    identity; improper rotations (reflections) are allowed.
    """
    R = _check_rotation(R)
    _require_cm_at_origin(body, tol, "rotation_construction")
    inertia = _inertia(body.masses, body.positions)
    trace = np.trace(inertia)
    deviation = np.linalg.norm(inertia - (trace / 3) * np.eye(3))
    if deviation > tol.cutoff(abs(trace)):
        raise PreconditionError(
            "rotation_construction: inertia tensor is anisotropic "
            f"(deviation {deviation:.3e} vs trace {trace:.3e})"
        )
    return PointMassSet(
        np.concatenate([body.masses, -body.masses]),
        np.vstack([body.positions, body.positions @ R.T]),
    )


def generalized_rotation_construction(
    bodyA: PointMassSet, bodyB: PointMassSet, tol: Tolerance = DEFAULT_TOL
) -> PointMassSet:
    """Union of one body with the negation of an equal-mass, equal-inertia
    body of different form; both CMs must sit at the origin."""
    _require_cm_at_origin(bodyA, tol, "generalized_rotation_construction: bodyA")
    _require_cm_at_origin(bodyB, tol, "generalized_rotation_construction: bodyB")
    mA, mB = np.sum(bodyA.masses), np.sum(bodyB.masses)
    if abs(mA - mB) > tol.cutoff(abs(mA) + abs(mB)):
        raise PreconditionError(
            f"generalized_rotation_construction: total masses differ ({mA} vs {mB})"
        )
    IA = _inertia(bodyA.masses, bodyA.positions)
    IB = _inertia(bodyB.masses, bodyB.positions)
    if np.linalg.norm(IA - IB) > tol.cutoff(np.linalg.norm(IA) + np.linalg.norm(IB)):
        raise PreconditionError(
            "generalized_rotation_construction: inertia tensors differ"
        )
    return PointMassSet(
        np.concatenate([bodyA.masses, -bodyB.masses]),
        np.vstack([bodyA.positions, bodyB.positions]),
    )


def _merge_sites(masses, positions, merge_tol):
    """Greedy merge of coincident points; returns (masses, positions)."""
    out_m, out_x = [], []
    for m, x in zip(masses, positions):
        for i, site in enumerate(out_x):
            if np.linalg.norm(x - site) <= merge_tol:
                out_m[i] += m
                break
        else:
            out_m.append(float(m))
            out_x.append(np.array(x))
    if not out_m:
        return np.zeros(0), np.zeros((0, 3))
    return np.array(out_m), np.array(out_x)


def superpose(terms) -> PointMassSet:
    """Linear combination of bodies: masses scaled by coefficients and
    concatenated; coincident sites merged, merged zero masses dropped."""
    all_m, all_x = [], []
    for coeff, body in terms:
        all_m.append(coeff * body.masses)
        all_x.append(body.positions)
    if not all_m:
        return PointMassSet.empty()
    masses = np.concatenate(all_m)
    positions = np.vstack(all_x)
    r = np.max(np.linalg.norm(positions, axis=1)) if masses.size else 0.0
    masses, positions = _merge_sites(masses, positions, MERGE_REL * r)
    scale = np.sum(np.abs(masses)) + 1.0
    keep = np.abs(masses) > 1e-12 * scale
    return PointMassSet(masses[keep], positions[keep])


def are_equivalent(a: PointMassSet, b: PointMassSet, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff two physical bodies share total mass, center of mass, and
    CM-referred inertia tensor (hence identical rigid-body dynamics)."""
    if not a.is_physical or not b.is_physical:
        raise InvalidInputError("equivalence is defined between physical bodies")
    sa, sb = summary(a, tol), summary(b, tol)
    extent = max(a.r_max, b.r_max)
    mass_scale = sa.total_mass + sb.total_mass
    if abs(sa.total_mass - sb.total_mass) > tol.cutoff(mass_scale):
        return False
    if np.linalg.norm(sa.center_of_mass - sb.center_of_mass) > tol.cutoff(extent):
        return False
    inertia_scale = np.linalg.norm(sa.inertia_about_cm) + np.linalg.norm(sb.inertia_about_cm)
    inertia_scale = max(inertia_scale, mass_scale * extent**2)
    return bool(
        np.linalg.norm(sa.inertia_about_cm - sb.inertia_about_cm)
        <= tol.cutoff(inertia_scale)
    )


def equivalent_family(
    base: PointMassSet, invisible: PointMassSet, tol: Tolerance = DEFAULT_TOL
) -> FeasibleInterval:
    """Range of ``lam`` such that ``base + lam * invisible`` stays physical.

    Invisible-body sites are matched to base sites within the merge tolerance
    (new sites get zero base mass); the bound is the componentwise positivity
    interval of the merged mass vector.
    """
    if not base.is_physical:
        raise InvalidInputError("base body must be physical")
    if not is_invisible(invisible, tol):
        raise PreconditionError("equivalent_family: direction body is not invisible")
    r = max(base.r_max, invisible.r_max)
    merge_tol = MERGE_REL * r
    site_x = [np.array(x) for x in base.positions]
    base_m = list(base.masses)
    dir_m = [0.0] * len(site_x)
    for m, x in zip(invisible.masses, invisible.positions):
        for i, site in enumerate(site_x):
            if np.linalg.norm(x - site) <= merge_tol:
                dir_m[i] += m
                break
        else:
            site_x.append(np.array(x))
            base_m.append(0.0)
            dir_m.append(float(m))
    return positivity_interval(np.array(base_m), np.array(dir_m))


_PLATONIC_VERTICES = {
    "tetrahedron": np.array(
        [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float
    ),
    "cube": np.array(
        [[sx, sy, sz] for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)],
        dtype=float,
    ),
    "octahedron": np.array(
        [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]],
        dtype=float,
    ),
}


def platonic_fixture(kind: str, mass: float = 1.0, scale: float = 1.0) -> PointMassSet:
    """Equal masses at canonical Platonic vertex sets: CM at the origin and
    inertia tensor proportional to the identity by symmetry."""
    if kind not in _PLATONIC_VERTICES:
        raise InvalidInputError(
            f"unknown solid {kind!r}; choose from {sorted(_PLATONIC_VERTICES)}"
        )
    if not (mass > 0 and scale > 0):
        raise InvalidInputError("mass and scale must be positive")
    vertices = scale * _PLATONIC_VERTICES[kind]
    return PointMassSet(np.full(len(vertices), mass), vertices)
