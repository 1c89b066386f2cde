import importlib

import numpy as np
import pytest

from fracdecay.exceptions import GridMismatchError
from fracdecay.kernel.spec import KernelSpec
from fracdecay.kernel.validation import normalize_mass
from fracdecay.lattice.generators import random_test_field
from fracdecay.lattice.grid import Field, build_grid
from fracdecay.operator.applier import BoundaryMode, OperatorApplier, apply, assemble, row_sums


class TestApplierModule:
    def test_import(self):
        importlib.import_module('fracdecay.operator.applier')


class TestHandStencil:
    """J = 1 on three cells with h = 1."""

    def test_apply_spike(self, hand_operator, hand_grid):
        result = apply(hand_operator, Field(hand_grid, [0.0, 1.0, 0.0]))
        np.testing.assert_array_equal(result.values, [1.0, -2.0, 1.0])

    def test_row_sums(self, hand_operator):
        np.testing.assert_array_equal(row_sums(hand_operator).values, [2.0, 2.0, 2.0])

    def test_ones_map_to_zero(self, hand_operator, hand_grid):
        assert not apply(hand_operator, Field.constant(hand_grid, 1.0)).values.any()

    def test_zero_field(self, hand_operator, hand_grid):
        assert not apply(hand_operator, Field.zeros(hand_grid)).values.any()

    def test_conservative_tail_is_zero(self, hand_operator):
        assert hand_operator.is_conservative
        assert not hand_operator.tail.values.any()


class TestConservativeOperator:
    @pytest.fixture(scope="class")
    def grid(self):
        return build_grid(2, 10.0, 16)

    @pytest.fixture(scope="class")
    def dense(self, grid, tail_kernel_2d):
        return assemble(tail_kernel_2d, grid, 'conservative', 'dense')

    @pytest.fixture
    def random_pair(self, grid):
        rng = np.random.default_rng(8)
        return Field(grid, rng.normal(size=grid.cell_count)), Field(grid, rng.normal(size=grid.cell_count))

    def test_constant_maps_to_zero(self, dense, grid):
        assert not dense.apply(Field.constant(grid, 3.7)).values.any()

    def test_dense_matches_on_the_fly(self, dense, grid, tail_kernel_2d, random_pair):
        lazy = assemble(tail_kernel_2d, grid, 'conservative', 'on_the_fly')
        u, _ = random_pair
        expected = lazy.apply(u).values
        np.testing.assert_allclose(dense.apply(u).values, expected, rtol=0,
                                   atol=1e-12 * np.abs(expected).max())

    def test_linearity(self, dense, random_pair):
        u, _ = random_pair
        for alpha in np.random.default_rng(2).uniform(-10.0, 10.0, size=5):
            scaled = dense.apply(alpha * u).values
            np.testing.assert_allclose(scaled, alpha * dense.apply(u).values, rtol=1e-12, atol=1e-14)

    def test_self_adjoint(self, dense, random_pair):
        u, v = random_pair
        left = float(np.dot(dense.apply(u).values, v.values))
        right = float(np.dot(u.values, dense.apply(v).values))
        assert left == pytest.approx(right, rel=1e-12)

    def test_mass_annihilation(self, dense, random_pair):
        u, _ = random_pair
        assert abs(dense.apply(u).values.sum()) <= 1e-12 * np.abs(u.values).sum()

    def test_negative_semidefinite(self, dense, random_pair):
        for u in random_pair:
            assert np.dot(dense.apply(u).values, u.values) <= 0.0

    def test_weights_symmetric_nonnegative(self, dense):
        weights = np.vstack([block for _, block in dense.weight_blocks()])
        assert np.array_equal(weights, weights.T)
        assert weights.min() >= 0.0
        assert not np.diag(weights).any()


class TestStrategyAgreement:
    def test_fft_matches_on_the_fly(self, small_grid, tail_kernel_2d):
        fft = assemble(tail_kernel_2d, small_grid, 'conservative', 'fft_convolution')
        lazy = assemble(tail_kernel_2d, small_grid, 'conservative', 'on_the_fly')
        u = random_test_field(small_grid, 3, 'random_modes')
        scale = np.abs(u.values).max()
        np.testing.assert_allclose(fft.apply(u).values, lazy.apply(u).values, rtol=0, atol=1e-8 * scale)
        np.testing.assert_allclose(fft.row_sum.values, lazy.row_sum.values, rtol=1e-10)

    def test_nonconvolution_dense_matches_on_the_fly(self):
        grid = build_grid(2, 5.0, 12)
        spec = KernelSpec('nonconvolution_fractional', sigma=0.5, modulation=0.4)
        dense = assemble(spec, grid, 'conservative', 'dense')
        lazy = assemble(spec, grid, 'conservative', 'on_the_fly')
        u = Field(grid, np.random.default_rng(0).uniform(size=grid.cell_count))
        np.testing.assert_allclose(dense.apply(u).values, lazy.apply(u).values, rtol=1e-12, atol=1e-14)

    def test_auto_strategy(self, small_grid, tail_kernel_2d):
        assert assemble(tail_kernel_2d, small_grid, 'conservative').strategy == 'fft_convolution'
        spec = KernelSpec('nonconvolution_fractional', sigma=0.5, modulation=0.2)
        assert assemble(spec, build_grid(1, 5.0, 10), 'conservative').strategy == 'on_the_fly'


class TestAbsorbingOperator:
    @pytest.fixture(scope="class")
    def absorbing(self, tail_kernel_2d):
        return assemble(tail_kernel_2d, build_grid(2, 6.0, 16), 'absorbing')

    def test_ones_map_to_minus_tail(self, absorbing):
        ones = Field.constant(absorbing.grid, 1.0)
        np.testing.assert_allclose(absorbing.apply(ones).values, -absorbing.tail.values, rtol=1e-12, atol=1e-15)

    def test_tail_positive(self, absorbing):
        assert absorbing.tail.values.min() > 0.0
        assert absorbing.boundary_mode is BoundaryMode.ABSORBING
        assert not absorbing.is_conservative

    def test_row_sums_dominate_conservative(self, absorbing, tail_kernel_2d):
        conservative = assemble(tail_kernel_2d, absorbing.grid, 'conservative')
        assert np.all(absorbing.row_sum.values >= conservative.row_sum.values)

    def test_tail_larger_at_corner(self, absorbing):
        tail = absorbing.tail.reshape()
        assert tail[0, 0] > tail[8, 8]

    def test_row_sum_converges_to_kernel_mass(self):
        spec = normalize_mass(KernelSpec('fractional_tail', sigma=0.5), 1.0, 1)
        errors = []
        for points in (100, 200):
            op = assemble(spec, build_grid(1, 5.0, points), 'absorbing')
            errors.append(abs(float(op.row_sum.values[points // 2]) - 1.0))
        assert errors[1] < errors[0]


class TestOperatorApplier:
    def test_grid_mismatch(self, hand_operator):
        with pytest.raises(GridMismatchError):
            apply(hand_operator, Field.zeros(build_grid(1, 1.0, 2)))

    def test_to_dict(self, hand_operator):
        info = hand_operator.to_dict()
        assert info['boundary_mode'] == 'conservative'
        assert info['strategy'] == 'dense'
        assert info['max_row_sum'] == 2.0
        assert info['storage_bytes'] == 9 * 8
        assert 'assembly_seconds' not in info

    def test_repr(self, hand_operator):
        assert "boundary_mode='conservative'" in repr(hand_operator)
        assert isinstance(hand_operator, OperatorApplier)
