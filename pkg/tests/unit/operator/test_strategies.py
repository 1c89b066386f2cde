import numpy as np
import pytest

from fracdecay.exceptions import FracDecayError, MemoryBudgetError, UnsupportedOperationError
from fracdecay.kernel.spec import KernelSpec
from fracdecay.lattice.grid import Field, build_grid
from fracdecay.operator.applier import assemble
from fracdecay.operator.pairs import (
    block_rows, distance_power_block, iter_row_slices, kernel_weight_block, offset_norms, pair_sum, stencil_block,
)
from fracdecay.operator.strategies import APPLY_STRATEGIES, DenseStrategy, resolve_strategy


class TestStrategyRegistry:
    def test_names(self):
        assert APPLY_STRATEGIES.names() == ['dense', 'fft_convolution', 'on_the_fly']

    def test_aliases(self):
        assert APPLY_STRATEGIES.resolve('fft') == 'fft_convolution'
        assert APPLY_STRATEGIES.resolve('on-the-fly') == 'on_the_fly'

    def test_resolve_auto(self):
        assert resolve_strategy('auto', KernelSpec('compact_smooth', sigma=None)) == 'fft_convolution'
        assert resolve_strategy('auto', KernelSpec('nonconvolution_fractional')) == 'on_the_fly'
        assert resolve_strategy('dense', KernelSpec()) == 'dense'

    def test_unknown_strategy(self, tail_kernel_2d, small_grid):
        with pytest.raises(FracDecayError, match="Available"):
            assemble(tail_kernel_2d, small_grid, 'conservative', 'sparse')


class TestStrategyErrors:
    def test_memory_budget(self, tail_kernel_2d, small_grid):
        with pytest.raises(MemoryBudgetError, match="on_the_fly") as info:
            assemble(tail_kernel_2d, small_grid, 'conservative', 'dense', memory_budget_bytes=1024)
        assert info.value.required_bytes == small_grid.cell_count ** 2 * 8
        assert info.value.budget_bytes == 1024

    def test_fft_needs_convolution_kernel(self, small_grid):
        spec = KernelSpec('nonconvolution_fractional', sigma=0.5, modulation=0.3)
        with pytest.raises(UnsupportedOperationError, match="convolution"):
            assemble(spec, small_grid, 'conservative', 'fft_convolution')

    def test_fft_rejects_custom_kernel(self, unit_kernel, hand_grid):
        with pytest.raises(UnsupportedOperationError):
            assemble(unit_kernel, hand_grid, 'conservative', 'fft')


class TestStrategyStorage:
    def test_dense_storage(self, unit_kernel, hand_grid):
        strategy = DenseStrategy(hand_grid, unit_kernel)
        strategy.prepare()
        assert strategy.storage_bytes == 72

    def test_on_the_fly_stores_nothing(self, tail_kernel_2d, small_grid):
        op = assemble(tail_kernel_2d, small_grid, 'conservative', 'on_the_fly')
        assert op.to_dict()['storage_bytes'] == 0

    def test_fft_stencil_shape(self, small_operator, small_grid):
        assert small_operator.to_dict()['storage_bytes'] == (2 * 32 - 1) ** 2 * 8


class TestParallelRows:
    def test_workers_match_serial(self, tail_kernel_2d):
        grid = build_grid(2, 10.0, 48)
        serial = assemble(tail_kernel_2d, grid, 'conservative', 'on_the_fly', workers=1)
        threaded = assemble(tail_kernel_2d, grid, 'conservative', 'on_the_fly', workers=4)
        u = Field(grid, np.random.default_rng(6).normal(size=grid.cell_count))
        np.testing.assert_array_equal(serial.apply(u).values, threaded.apply(u).values)


class TestPairs:
    def test_block_rows(self):
        assert block_rows(1000, 10_000) == 10
        assert block_rows(10, 10_000) == 10
        assert block_rows(10**6, 10) == 1

    def test_iter_row_slices(self):
        assert list(iter_row_slices(5, 2)) == [slice(0, 2), slice(2, 4), slice(4, 5)]

    def test_kernel_weight_block(self, unit_kernel, hand_grid):
        block = kernel_weight_block(unit_kernel, hand_grid, slice(1, 3))
        np.testing.assert_array_equal(block, [[1.0, 0.0, 1.0], [1.0, 1.0, 0.0]])

    def test_stencil_block_matches_kernel_block(self, tail_kernel_2d):
        grid = build_grid(2, 4.0, 6)
        stencil = tail_kernel_2d.implementation.profile(tail_kernel_2d, offset_norms(grid), 2) * grid.cell_volume
        stencil[5, 5] = 0.0
        rows = slice(0, grid.cell_count)
        np.testing.assert_allclose(stencil_block(stencil, grid, rows),
                                   kernel_weight_block(tail_kernel_2d, grid, rows), rtol=1e-14)

    def test_distance_power_block(self):
        grid = build_grid(1, 1.0, 2)
        np.testing.assert_array_equal(distance_power_block(grid, slice(0, 2), 1.5), [[0.0, 1.0], [1.0, 0.0]])

    def test_pair_sum(self, unit_kernel, hand_grid):
        blocks = [(slice(0, 3), kernel_weight_block(unit_kernel, hand_grid, slice(0, 3)))]
        u = np.array([0.0, 1.0, 0.0])
        assert pair_sum(blocks, u, lambda ui, uj: (uj - ui) ** 2) == 4.0
