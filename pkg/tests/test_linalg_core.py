import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invispace.errors import InvalidInputError
from invispace.linalg_core import (
    FeasibleInterval,
    Tolerance,
    kernel_basis,
    numerical_rank,
    positivity_interval,
)


class TestTolerance:
    def test_defaults(self):
        tol = Tolerance()
        assert tol.rel == 1e-10
        assert tol.abs == 0.0

    @pytest.mark.parametrize("rel,abs_", [(0.0, 0.0), (-1e-3, 0.0), (1e-10, -1.0)])
    def test_rejects_bad_thresholds(self, rel, abs_):
        with pytest.raises(InvalidInputError):
            Tolerance(rel=rel, abs=abs_)


class TestNumericalRank:
    def test_zero_matrix(self):
        assert numerical_rank(np.zeros((3, 4))) == 0

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_identity(self, n):
        assert numerical_rank(np.eye(n)) == n

    def test_proportional_rows(self):
        assert numerical_rank([[1.0, 2.0], [2.0, 4.0]]) == 1

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidInputError):
            numerical_rank([[1.0, np.nan]])


class TestKernelBasis:
    def test_full_rank_gives_empty_basis(self):
        basis = kernel_basis(np.eye(3))
        assert basis.dim == 0
        assert basis.dim_ambient == 3

    def test_hand_solved_kernel(self):
        # rows sum the last column into each unit direction, so the kernel
        # is spanned by (-1, -1, -1, 1); sign convention flips it
        A = np.array([[1.0, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]])
        basis = kernel_basis(A)
        assert basis.dim == 1
        v = basis.vectors[0]
        np.testing.assert_allclose(v, [0.5, 0.5, 0.5, -0.5], atol=1e-14)
        np.testing.assert_allclose(A @ v, 0, atol=1e-14)

    def test_positive_rank3_wide_matrix_has_1d_kernel(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            A = rng.uniform(0.1, 2.0, size=(3, 4))
            assert kernel_basis(A).dim == 1

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidInputError):
            kernel_basis([[np.inf, 0.0]])

    def test_residual_and_orthonormality_random(self):
        rng = np.random.default_rng(1234)
        for _ in range(30):
            m = rng.integers(1, 6)
            n = rng.integers(m + 1, 9)
            A = rng.standard_normal((m, n))
            basis = kernel_basis(A)
            V = basis.vectors
            smax = np.linalg.norm(A, 2)
            assert basis.dim + numerical_rank(A) == n
            for v in V:
                assert np.linalg.norm(A @ v) <= 1e-10 * smax * np.linalg.norm(v) + 1e-13
            np.testing.assert_allclose(V @ V.T, np.eye(basis.dim), atol=1e-10)

    def test_scaling_invariance_of_span(self):
        rng = np.random.default_rng(99)
        for c in (3.0, -0.02, 1e4):
            A = rng.standard_normal((3, 6))
            P1 = kernel_basis(A).projector()
            P2 = kernel_basis(c * A).projector()
            np.testing.assert_allclose(P1, P2, atol=1e-10)


class TestPositivityInterval:
    def test_zero_direction_unbounded(self):
        iv = positivity_interval([1.0, 0.0], [0.0, 0.0])
        assert iv.lo == -np.inf and iv.hi == np.inf

    def test_componentwise_bounds(self):
        iv = positivity_interval([1.0, 2.0, 1.0, 0.5], [1.0, -1.0, 1.0, -1.0])
        assert iv.lo == pytest.approx(-1.0)
        assert iv.hi == pytest.approx(0.5)

    def test_boundary_component_pins_endpoint(self):
        iv = positivity_interval([1.0, 0.0], [1.0, -2.0])
        assert iv.hi == 0.0
        assert iv.lo == pytest.approx(-1.0)

    def test_always_contains_zero(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            base = rng.uniform(0, 3, size=6)
            direction = rng.standard_normal(6)
            iv = positivity_interval(base, direction)
            assert iv.contains(0.0)

    def test_rejects_negative_base(self):
        with pytest.raises(InvalidInputError):
            positivity_interval([-0.1, 1.0], [1.0, 1.0])

    def test_rejects_shape_mismatch(self):
        with pytest.raises(InvalidInputError):
            positivity_interval([1.0, 1.0], [1.0])

    @settings(max_examples=200, deadline=None)
    @given(
        base=st.lists(st.floats(0.0, 10.0), min_size=1, max_size=8),
        direction=st.lists(
            st.floats(-5.0, 5.0).filter(lambda x: x == 0.0 or abs(x) > 1e-2),
            min_size=1,
            max_size=8,
        ),
        t=st.floats(0.0, 1.0),
    )
    def test_membership_property(self, base, direction, t):
        n = min(len(base), len(direction))
        base = np.array(base[:n])
        direction = np.array(direction[:n])
        iv = positivity_interval(base, direction)
        # sampled interior points stay nonnegative
        lo = max(iv.lo, -1e6)
        hi = min(iv.hi, 1e6)
        lam = lo + t * (hi - lo)
        assert np.all(base + lam * direction >= -1e-12 * (1 + np.abs(base).max()))
        # points outside by a finite margin violate some component
        margin = 1e-6 * (1 + abs(hi))
        if np.isfinite(iv.hi):
            assert np.any(base + (iv.hi + margin) * direction < 0)
        if np.isfinite(iv.lo):
            margin = 1e-6 * (1 + abs(iv.lo))
            assert np.any(base + (iv.lo - margin) * direction < 0)


class TestFeasibleInterval:
    def test_empty_marker(self):
        assert FeasibleInterval.empty().is_empty
        assert not FeasibleInterval(0.0, 0.0).is_empty

    def test_intersect(self):
        a = FeasibleInterval(-1.0, 2.0)
        b = FeasibleInterval(0.5, np.inf)
        assert a.intersect(b) == FeasibleInterval(0.5, 2.0)
        assert a.intersect(FeasibleInterval(3.0, 4.0)).is_empty
