"""
Nonlocal Operator Module

(Lu)_i = sum_j w_ij (u_j - u_i) - tail_i u_i with w_ij = J(x_i, x_j) h^n.

In conservative mode tail_i = 0 and mass is conserved exactly; in absorbing
mode tail_i is the kernel mass lying outside the box, so mass leaks to the
exterior where u is taken to vanish.
"""

import logging
import time
from enum import Enum
from typing import Any, Dict, Iterator, Tuple

import numpy as np

from fracdecay.exceptions import GridMismatchError
from fracdecay.kernel.spec import KernelSpec
from fracdecay.kernel.validation import tail_mass_field
from fracdecay.lattice.grid import Field, Grid
from fracdecay.operator.strategies import (
    APPLY_STRATEGIES, DEFAULT_MEMORY_BUDGET_BYTES, ApplyStrategy, resolve_strategy,
)

logger = logging.getLogger(__name__)


class BoundaryMode(str, Enum):
    CONSERVATIVE = 'conservative'
    ABSORBING = 'absorbing'


class OperatorApplier:
    """
    Assembled discrete operator.

    Immutable after assembly; apply is safe to call concurrently.

    Attributes
    ----------
    grid : Grid
    spec : KernelSpec
    boundary_mode : BoundaryMode
    strategy : str
        dense, on_the_fly or fft_convolution
    row_sum : Field
        D_i = sum_j w_ij + tail_i
    tail : Field
        tail_i, zero in conservative mode
    """

    def __init__(self, grid: Grid, spec: KernelSpec, boundary_mode: BoundaryMode,
                 strategy: ApplyStrategy, tail: Field):
        self.grid = grid
        self.spec = spec
        self.boundary_mode = BoundaryMode(boundary_mode)
        self._strategy = strategy
        self.strategy = strategy.name
        self.tail = tail
        interior = strategy.interior_row_sums()
        self.interior_row_sum = Field(grid, interior)
        self.row_sum = Field(grid, interior + tail.values)
        self.assembly_seconds = 0.0

    @property
    def is_conservative(self) -> bool:
        return self.boundary_mode is BoundaryMode.CONSERVATIVE

    def apply_values(self, u: np.ndarray) -> np.ndarray:
        """Apply to a flat value array on this grid."""
        result = self._strategy.apply_interior(np.asarray(u, dtype=float))
        if not self.is_conservative:
            result = result - self.tail.values * u
        return result

    def apply(self, u: Field) -> Field:
        u.require_grid(self.grid)
        return Field(self.grid, self.apply_values(u.values))

    def row_sums(self) -> Field:
        return self.row_sum

    def weight_blocks(self) -> Iterator[Tuple[slice, np.ndarray]]:
        """Interior weights w_ij in row blocks, diagonal zeroed."""
        return self._strategy.weight_blocks()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'grid': self.grid.to_dict(),
            'kernel': self.spec.to_dict(),
            'boundary_mode': self.boundary_mode.value,
            'strategy': self.strategy,
            'max_row_sum': float(self.row_sum.values.max()),
            'max_tail': float(self.tail.values.max()),
            'storage_bytes': self._strategy.storage_bytes,
        }

    def __repr__(self):
        return (f"OperatorApplier(grid={self.grid!r}, family='{self.spec.family}', "
                f"boundary_mode='{self.boundary_mode.value}', strategy='{self.strategy}')")


def assemble(spec: KernelSpec, grid: Grid, boundary_mode='conservative', strategy: str = 'auto',
             memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET_BYTES, workers: int = 1) -> OperatorApplier:
    """
    Build an OperatorApplier.

    Parameters
    ----------
    spec : KernelSpec
    grid : Grid
    boundary_mode : str or BoundaryMode
        'conservative' or 'absorbing'
    strategy : str
        'dense', 'on_the_fly', 'fft_convolution' or 'auto'
    memory_budget_bytes : int
        Limit for the dense weight matrix
    workers : int
        Threads for on_the_fly row blocks

    Returns
    -------
    OperatorApplier

    Raises
    ------
    MemoryBudgetError
        Dense weights would exceed memory_budget_bytes
    UnsupportedOperationError
        fft_convolution requested for a nonconvolution kernel
    """
    started = time.perf_counter()
    mode = BoundaryMode(boundary_mode)
    name = resolve_strategy(strategy, spec)
    impl: ApplyStrategy = APPLY_STRATEGIES.create(
        name, grid, spec, memory_budget_bytes=memory_budget_bytes, workers=workers,
    )
    impl.prepare()

    if mode is BoundaryMode.ABSORBING:
        tail = tail_mass_field(spec, grid, impl.interior_row_sums())
    else:
        tail = Field.zeros(grid)

    op = OperatorApplier(grid, spec, mode, impl, tail)
    op.assembly_seconds = time.perf_counter() - started
    logger.info("Assembled %r in %.3fs", op, op.assembly_seconds)
    return op


def apply(op: OperatorApplier, u: Field) -> Field:
    """
    (Lu)_i = sum_j w_ij (u_j - u_i) - tail_i u_i.

    Raises
    ------
    GridMismatchError
        u lives on a different grid
    """
    if u.grid != op.grid:
        raise GridMismatchError(f"Field grid {u.grid!r} does not match operator grid {op.grid!r}")
    return op.apply(u)


def row_sums(op: OperatorApplier) -> Field:
    """D_i = sum_j w_ij + tail_i."""
    return op.row_sums()
