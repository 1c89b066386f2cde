"""
Operator Apply Strategies

Interchangeable ways of evaluating the interior part of the nonlocal
operator, (W u)_i - D0_i u_i = sum_j w_ij (u_j - u_i):

- dense: stores the full weight matrix
- on_the_fly: recomputes weight blocks from the kernel on every call
- fft_convolution: translation-invariant stencil applied with FFTs
"""

import logging
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, Tuple

import numpy as np
from scipy.signal import fftconvolve

from fracdecay.exceptions import MemoryBudgetError, UnsupportedOperationError
from fracdecay.kernel.spec import KernelSpec
from fracdecay.lattice.grid import Grid
from fracdecay.operator.pairs import (
    DEFAULT_BLOCK_ENTRIES, block_rows, iter_row_slices, kernel_weight_block, offset_norms, stencil_block,
)
from fracdecay.registry import Registry

DEFAULT_MEMORY_BUDGET_BYTES = 1024 * 1024 * 1024


class ApplyStrategy(ABC):
    """
    Strategy interface for the interior operator.

    Parameters
    ----------
    grid : Grid
    spec : KernelSpec
    memory_budget_bytes : int
        Upper bound on stored weights
    workers : int
        Threads used for row blocks (on_the_fly only)
    """
    name: str = ''

    def __init__(self, grid: Grid, spec: KernelSpec,
                 memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET_BYTES, workers: int = 1):
        self.grid = grid
        self.spec = spec
        self.memory_budget_bytes = int(memory_budget_bytes)
        self.workers = max(1, int(workers))
        self.logger = logging.getLogger(f"{self.__class__.__module__}.{self.__class__.__name__}")
        self._rows = block_rows(grid.cell_count, DEFAULT_BLOCK_ENTRIES)

    @abstractmethod
    def prepare(self) -> None:
        """Build strategy-specific storage."""
        pass

    @abstractmethod
    def interior_row_sums(self) -> np.ndarray:
        """D0_i = sum over j != i of w_ij."""
        pass

    @abstractmethod
    def apply_interior(self, u: np.ndarray) -> np.ndarray:
        """sum_j w_ij (u_j - u_i) for a flat value array."""
        pass

    def weight_blocks(self) -> Iterator[Tuple[slice, np.ndarray]]:
        """Yield (row slice, weight block) pairs covering the whole weight matrix."""
        for rows in iter_row_slices(self.grid.cell_count, self._rows):
            yield rows, kernel_weight_block(self.spec, self.grid, rows)

    @property
    def storage_bytes(self) -> int:
        return 0


def _difference_rows(block: np.ndarray, u: np.ndarray, rows: slice) -> np.ndarray:
    return (block * (u[None, :] - u[rows, None])).sum(axis=1)


class DenseStrategy(ApplyStrategy):
    """Full weight matrix, applied in the difference form so constants map to zero exactly."""
    name = 'dense'

    def prepare(self):
        N = self.grid.cell_count
        required = N * N * 8
        if required > self.memory_budget_bytes:
            raise MemoryBudgetError(
                f"Dense operator needs {required / 2**20:.1f} MiB for {N}x{N} weights, "
                f"budget is {self.memory_budget_bytes / 2**20:.1f} MiB; use strategy 'on_the_fly'",
                required_bytes=required,
                budget_bytes=self.memory_budget_bytes,
            )
        self.weights = np.empty((N, N))
        for rows, block in super().weight_blocks():
            self.weights[rows] = block
        self._row_sums = self.weights.sum(axis=1)
        self.logger.info("Dense weights assembled: %d x %d (%.1f MiB)", N, N, required / 2**20)

    def interior_row_sums(self):
        return self._row_sums

    def apply_interior(self, u):
        out = np.empty_like(u)
        for rows in iter_row_slices(self.grid.cell_count, self._rows):
            out[rows] = _difference_rows(self.weights[rows], u, rows)
        return out

    def weight_blocks(self):
        for rows in iter_row_slices(self.grid.cell_count, self._rows):
            yield rows, self.weights[rows]

    @property
    def storage_bytes(self):
        return int(self.weights.nbytes)


class OnTheFlyStrategy(ApplyStrategy):
    """Weights recomputed per row block; optional thread parallelism over blocks."""
    name = 'on_the_fly'

    def prepare(self):
        self._row_sums = np.empty(self.grid.cell_count)
        for rows, block in self.weight_blocks():
            self._row_sums[rows] = block.sum(axis=1)

    def interior_row_sums(self):
        return self._row_sums

    def _apply_rows(self, u, rows):
        return rows, _difference_rows(kernel_weight_block(self.spec, self.grid, rows), u, rows)

    def apply_interior(self, u):
        out = np.empty_like(u)
        slices = list(iter_row_slices(self.grid.cell_count, self._rows))
        if self.workers > 1 and len(slices) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                for rows, values in pool.map(lambda s: self._apply_rows(u, s), slices):
                    out[rows] = values
        else:
            for rows in slices:
                out[rows] = self._apply_rows(u, rows)[1]
        return out


class FFTConvolutionStrategy(ApplyStrategy):
    """Translation-invariant stencil on the (2M-1)^n offset lattice, applied by FFT."""
    name = 'fft_convolution'

    def prepare(self):
        if not self.spec.is_convolution:
            raise UnsupportedOperationError(
                f"fft_convolution needs a convolution kernel, got '{self.spec.family}'; "
                f"use 'dense' or 'on_the_fly'",
                operation='fft_convolution',
            )
        r = offset_norms(self.grid)
        stencil = self.spec.implementation.profile(self.spec, r, self.grid.dimension) * self.grid.cell_volume
        stencil[tuple(s // 2 for s in stencil.shape)] = 0.0
        self.stencil = stencil
        self._row_sums = self._convolve(np.ones(self.grid.cell_count))
        self.logger.info("FFT stencil assembled: %s offsets", 'x'.join(map(str, stencil.shape)))

    def _convolve(self, u: np.ndarray) -> np.ndarray:
        result = fftconvolve(u.reshape(self.grid.shape), self.stencil, mode='same').ravel()
        if u.min() >= 0.0:
            # nonnegative data and weights: clip FFT roundoff
            np.maximum(result, 0.0, out=result)
        return result

    def interior_row_sums(self):
        return self._row_sums

    def apply_interior(self, u):
        return self._convolve(u) - self._row_sums * u

    def weight_blocks(self):
        for rows in iter_row_slices(self.grid.cell_count, self._rows):
            yield rows, stencil_block(self.stencil, self.grid, rows)

    @property
    def storage_bytes(self):
        return int(self.stencil.nbytes)


APPLY_STRATEGIES: Registry = Registry('apply strategy')
APPLY_STRATEGIES.register(DenseStrategy.name, DenseStrategy)
APPLY_STRATEGIES.register(OnTheFlyStrategy.name, OnTheFlyStrategy, aliases=['on-the-fly'])
APPLY_STRATEGIES.register(FFTConvolutionStrategy.name, FFTConvolutionStrategy, aliases=['fft'])


def resolve_strategy(name: str, spec: KernelSpec) -> str:
    """Resolve 'auto' to fft_convolution for convolution kernels, on_the_fly otherwise."""
    if name == 'auto':
        return FFTConvolutionStrategy.name if spec.is_convolution else OnTheFlyStrategy.name
    return APPLY_STRATEGIES.resolve(name)
