"""
Blocked pair sums.

Double sums over cell pairs are evaluated in row blocks so memory stays
bounded by a fixed number of pair entries.
"""

from typing import Iterator

import numpy as np

from fracdecay.kernel.spec import KernelSpec, evaluate
from fracdecay.lattice.grid import Grid

DEFAULT_BLOCK_ENTRIES = 1 << 20


def block_rows(count: int, block_entries: int = DEFAULT_BLOCK_ENTRIES) -> int:
    """Rows per block so that rows * count stays within block_entries."""
    return int(max(1, min(count, block_entries // max(count, 1))))


def iter_row_slices(count: int, rows: int) -> Iterator[slice]:
    for start in range(0, count, rows):
        yield slice(start, min(count, start + rows))


def kernel_weight_block(spec: KernelSpec, grid: Grid, rows: slice) -> np.ndarray:
    """
    Weights w_ij = J(x_i, x_j) h^n for i in rows and all j, with w_ii = 0.

    Returns
    -------
    np.ndarray
        Shape (rows, M^n)
    """
    centers = grid.centers
    x = centers[rows]
    b, N = x.shape[0], centers.shape[0]
    xs = np.repeat(x, N, axis=0)
    ys = np.tile(centers, (b, 1))
    block = evaluate(spec, xs, ys).reshape(b, N) * grid.cell_volume
    block[np.arange(b), np.arange(rows.start, rows.start + b)] = 0.0
    return block


def offset_norms(grid: Grid) -> np.ndarray:
    """|z| on the (2M-1)^n offset lattice, shaped grid.offset_shape()."""
    axis = grid.offset_axis()
    mesh = np.meshgrid(*([axis] * grid.dimension), indexing='ij')
    return np.sqrt(sum(m ** 2 for m in mesh))


def stencil_block(stencil: np.ndarray, grid: Grid, rows: slice) -> np.ndarray:
    """
    Rows of the translation-invariant matrix w_ij = stencil[idx_i - idx_j + M - 1].

    The stencil's center entry is expected to be zero.
    """
    multi = np.stack(np.unravel_index(np.arange(grid.cell_count), grid.shape), axis=-1)
    offset = multi[rows, None, :] - multi[None, :, :] + (grid.points_per_axis - 1)
    return stencil[tuple(offset[..., k] for k in range(grid.dimension))]


def distance_power_block(grid: Grid, rows: slice, exponent: float) -> np.ndarray:
    """|x_i - x_j|^(-exponent) for i in rows and all j, zero on the diagonal."""
    centers = grid.centers
    diff = centers[rows, None, :] - centers[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=-1))
    b = dist.shape[0]
    dist[np.arange(b), np.arange(rows.start, rows.start + b)] = np.inf
    return dist ** (-exponent)


def pair_sum(blocks, u: np.ndarray, term) -> float:
    """
    sum_i sum_j w_ij term(u_i, u_j) over the blocks of a weight matrix.

    Parameters
    ----------
    blocks : iterable of (slice, np.ndarray)
        Row blocks of the weight matrix
    u : np.ndarray
        Flat values
    term : callable
        Vectorised term(u_i, u_j) on broadcast (b, 1) and (1, N) arrays
    """
    total = 0.0
    for rows, weights in blocks:
        total += float((weights * term(u[rows, None], u[None, :])).sum())
    return total
