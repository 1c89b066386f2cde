"""
Discrete fractional seminorm

[u]_{s,q} = (sum_i sum_{j != i} |u_j - u_i|^q |x_j - x_i|^-(n + q s) h^2n)^(1/q)
"""

import numpy as np
from scipy.signal import fftconvolve

from fracdecay.exceptions import DomainError
from fracdecay.lattice.grid import Field, Grid
from fracdecay.operator.pairs import block_rows, distance_power_block, iter_row_slices, offset_norms, pair_sum

# above this many cells the q = 2 seminorm goes through FFT autocorrelation
FFT_CELL_THRESHOLD = 4096


def _singular_stencil(grid: Grid, exponent: float) -> np.ndarray:
    r = offset_norms(grid)
    center = tuple(s // 2 for s in r.shape)
    r[center] = 1.0
    stencil = r ** (-exponent)
    stencil[center] = 0.0
    return stencil


def _quadratic_pair_sum_fft(u: Field, exponent: float) -> float:
    # sum_ij k_ij (u_j - u_i)^2 = 2 sum_i u_i^2 K_i - 2 sum_i u_i (k * u)_i
    grid = u.grid
    stencil = _singular_stencil(grid, exponent)
    values = u.reshape()
    row_mass = fftconvolve(np.ones(grid.shape), stencil, mode='same')
    smoothed = fftconvolve(values, stencil, mode='same')
    total = 2.0 * float((values ** 2 * row_mass).sum()) - 2.0 * float((values * smoothed).sum())
    return max(total, 0.0)


def seminorm_power(u: Field, s: float, q: float) -> float:
    """[u]_{s,q}^q."""
    if not 0.0 < s < 1.0:
        raise DomainError(f"seminorm order s must lie in (0,1), got {s}")
    if not q >= 1.0:
        raise DomainError(f"seminorm exponent q must be >= 1, got {q}")
    grid = u.grid
    exponent = grid.dimension + q * s
    if q == 2.0 and grid.cell_count > FFT_CELL_THRESHOLD:
        total = _quadratic_pair_sum_fft(u, exponent)
    else:
        rows = block_rows(grid.cell_count)
        blocks = ((r, distance_power_block(grid, r, exponent)) for r in iter_row_slices(grid.cell_count, rows))
        total = pair_sum(blocks, u.values, lambda ui, uj: np.power(np.abs(uj - ui), q))
    return total * grid.cell_volume ** 2


def fractional_seminorm(u: Field, s: float, q: float) -> float:
    """
    Gagliardo-type seminorm of a lattice field, diagonal excluded.

    Parameters
    ----------
    u : Field
    s : float
        Order in (0, 1)
    q : float
        Exponent >= 1

    Returns
    -------
    float
    """
    return float(seminorm_power(u, s, q) ** (1.0 / q))
