"""
Mollifier Module

Unit-mass bump stencil psi on the lattice and the split u = v + w with
v = psi * u (zero padding) and w = u - v.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from fracdecay.exceptions import GridError
from fracdecay.kernel.families import bump
from fracdecay.lattice.grid import Field, Grid

logger = logging.getLogger(__name__)

MIN_CELLS_PER_RADIUS = 3.0


@dataclass(frozen=True, eq=False)
class MollifierSpec:
    """
    Discrete mollifier.

    Attributes
    ----------
    grid : Grid
        Lattice the stencil was sampled for
    radius : float
        Support radius rho
    normalized_values : np.ndarray
        Stencil on the offsets k h, |k_a| <= ceil(rho / h), with
        sum(values) * h^n = 1
    """
    grid: Grid
    radius: float
    normalized_values: np.ndarray

    @property
    def reach(self) -> int:
        return self.normalized_values.shape[0] // 2

    def offsets(self) -> np.ndarray:
        """|z| for every stencil entry."""
        axis = np.arange(-self.reach, self.reach + 1) * self.grid.spacing
        mesh = np.meshgrid(*([axis] * self.grid.dimension), indexing='ij')
        return np.sqrt(sum(m ** 2 for m in mesh))

    def integral(self) -> float:
        return float(self.normalized_values.sum() * self.grid.cell_volume)


@dataclass(frozen=True)
class Decomposition:
    """
    u = smooth_part + remainder.

    Attributes
    ----------
    smooth_part : Field
        v = psi * u
    remainder : Field
        w = u - v
    truncated : bool
        True when u does not vanish within radius of the boundary, so the
        zero-padded convolution misses mass outside the box
    """
    smooth_part: Field
    remainder: Field
    truncated: bool = False


def build_mollifier(grid: Grid, radius: float = 1.0) -> MollifierSpec:
    """
    Sample exp(-1 / (1 - |z / rho|^2)) on |z| < rho and renormalize to unit discrete mass.

    Raises
    ------
    GridError
        radius < 3 h
    """
    h = grid.spacing
    if radius < MIN_CELLS_PER_RADIUS * h:
        raise GridError(
            f"Mollifier radius {radius} is below {MIN_CELLS_PER_RADIUS:g} cells (h={h:.4g}); "
            f"refine the grid to h <= {radius / MIN_CELLS_PER_RADIUS:.4g}"
        )
    reach = int(np.ceil(radius / h))
    axis = np.arange(-reach, reach + 1) * h
    mesh = np.meshgrid(*([axis] * grid.dimension), indexing='ij')
    r = np.sqrt(sum(m ** 2 for m in mesh))
    values = bump(r / radius)
    values = values / (values.sum() * grid.cell_volume)
    values.flags.writeable = False
    return MollifierSpec(grid, float(radius), values)


def mollifier_decompose(u: Field, psi: MollifierSpec) -> Decomposition:
    """
    Split u into the mollified part and the remainder.

    A field that does not vanish on the band of width psi.radius along the
    boundary yields truncated=True and a warning.
    """
    u.require_grid(psi.grid)
    grid = u.grid
    smooth = fftconvolve(u.reshape(), psi.normalized_values, mode='same').ravel() * grid.cell_volume
    if u.values.min() >= 0.0:
        np.maximum(smooth, 0.0, out=smooth)
    band = grid.boundary_distance < psi.radius
    truncated = bool(np.any(u.values[band] != 0.0))
    if truncated:
        logger.warning("Field is nonzero within %g of the boundary; mollified part is truncated", psi.radius)
    v = Field(grid, smooth)
    return Decomposition(v, Field(grid, u.values - smooth), truncated)
