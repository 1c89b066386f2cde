"""
Lattice Module

Cell-centered uniform lattices on the truncated cube [-L, L]^n and the fields
living on them. Both types are immutable once built; values are stored flat,
row-major by axis (axis 0 varies slowest).
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Tuple

import numpy as np

from fracdecay.exceptions import GridError, GridMismatchError, NonFiniteValueError

logger = logging.getLogger(__name__)

SUPPORTED_DIMENSIONS = (1, 2, 3)


@dataclass(frozen=True)
class Grid:
    """
    Cell-centered lattice on [-half_width, half_width]^dimension.

    Attributes
    ----------
    dimension : int
        Space dimension n, one of 1, 2, 3
    half_width : float
        Half side L of the truncation cube
    points_per_axis : int
        Number of cells M along each axis

    Notes
    -----
    The constructor accepts any positive M so that small hand-checked
    stencils (M = 3) can be built; ``build_grid`` additionally requires M even.
    """
    dimension: int
    half_width: float
    points_per_axis: int

    def __post_init__(self):
        if self.dimension not in SUPPORTED_DIMENSIONS:
            raise GridError(f"dimension must be one of {SUPPORTED_DIMENSIONS}, got {self.dimension}")
        if not self.half_width > 0:
            raise GridError(f"half_width must be positive, got {self.half_width}")
        if int(self.points_per_axis) != self.points_per_axis or self.points_per_axis < 1:
            raise GridError(f"points_per_axis must be a positive integer, got {self.points_per_axis}")

    @property
    def spacing(self) -> float:
        """Cell side h = 2L / M."""
        return 2.0 * self.half_width / self.points_per_axis

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.dimension

    @property
    def cell_count(self) -> int:
        return self.points_per_axis ** self.dimension

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.points_per_axis,) * self.dimension

    @cached_property
    def axis_coordinates(self) -> np.ndarray:
        """Cell centers along one axis, -L + (i + 1/2) h."""
        i = np.arange(self.points_per_axis)
        coords = -self.half_width + (i + 0.5) * self.spacing
        # exact antisymmetry under index reversal
        coords = 0.5 * (coords - coords[::-1])
        coords.flags.writeable = False
        return coords

    @cached_property
    def centers(self) -> np.ndarray:
        """All cell centers, shape (M^n, n), in storage order."""
        axes = np.meshgrid(*([self.axis_coordinates] * self.dimension), indexing='ij')
        points = np.stack([a.ravel() for a in axes], axis=-1)
        points.flags.writeable = False
        return points

    @cached_property
    def boundary_distance(self) -> np.ndarray:
        """Distance from every cell center to the boundary of the cube."""
        dist = self.half_width - np.abs(self.centers).max(axis=1)
        dist.flags.writeable = False
        return dist

    def offset_axis(self) -> np.ndarray:
        """Pairwise center offsets along one axis, k h for k = -(M-1) .. M-1."""
        k = np.arange(-(self.points_per_axis - 1), self.points_per_axis)
        return k * self.spacing

    def offset_points(self) -> np.ndarray:
        """All pairwise offsets on the (2M-1)^n offset lattice, shape ((2M-1)^n, n)."""
        axis = self.offset_axis()
        axes = np.meshgrid(*([axis] * self.dimension), indexing='ij')
        return np.stack([a.ravel() for a in axes], axis=-1)

    def offset_shape(self) -> Tuple[int, ...]:
        return (2 * self.points_per_axis - 1,) * self.dimension

    def cell_index(self, flat_index: int) -> Tuple[int, ...]:
        """Multi-index of a flat cell index."""
        return tuple(int(i) for i in np.unravel_index(flat_index, self.shape))

    def nearest_cell(self, point) -> int:
        """Flat index of the cell whose center is closest to point."""
        point = np.asarray(point, dtype=float).reshape(self.dimension)
        return int(np.argmin(((self.centers - point) ** 2).sum(axis=1)))

    def to_dict(self) -> dict:
        return {
            'dimension': self.dimension,
            'half_width': self.half_width,
            'points_per_axis': self.points_per_axis,
            'spacing': self.spacing,
        }


@dataclass(frozen=True, eq=False)
class Field:
    """
    Real values on a Grid.

    Attributes
    ----------
    grid : Grid
        The lattice the values live on
    values : np.ndarray
        Flat read-only array of length grid.cell_count
    """
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        if values.size != self.grid.cell_count:
            raise GridMismatchError(
                f"Field has {values.size} values but the grid has {self.grid.cell_count} cells"
            )
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            cell = self.grid.cell_index(bad[0])
            raise NonFiniteValueError(
                f"Non-finite value {values[bad[0]]} at cell {cell} "
                f"(center {tuple(self.grid.centers[bad[0]])})",
                cell=cell,
            )
        values.flags.writeable = False
        object.__setattr__(self, 'values', values)

    @classmethod
    def zeros(cls, grid: Grid) -> 'Field':
        return cls(grid, np.zeros(grid.cell_count))

    @classmethod
    def constant(cls, grid: Grid, value: float) -> 'Field':
        return cls(grid, np.full(grid.cell_count, float(value)))

    def reshape(self) -> np.ndarray:
        """Values as an array of shape grid.shape."""
        return self.values.reshape(self.grid.shape)

    def with_values(self, values) -> 'Field':
        return Field(self.grid, values)

    def require_grid(self, grid: Grid) -> None:
        """Raise GridMismatchError unless the field lives on grid."""
        if self.grid != grid:
            raise GridMismatchError(f"Field lives on {self.grid}, expected {grid}")

    def __add__(self, other: 'Field') -> 'Field':
        other.require_grid(self.grid)
        return Field(self.grid, self.values + other.values)

    def __sub__(self, other: 'Field') -> 'Field':
        other.require_grid(self.grid)
        return Field(self.grid, self.values - other.values)

    def __mul__(self, scalar: float) -> 'Field':
        return Field(self.grid, float(scalar) * self.values)

    __rmul__ = __mul__

    def __neg__(self) -> 'Field':
        return Field(self.grid, -self.values)


def build_grid(dimension: int, half_width: float, points_per_axis: int) -> Grid:
    """
    Build a cell-centered lattice.

    Parameters
    ----------
    dimension : int
        1, 2 or 3
    half_width : float
        Half side L > 0
    points_per_axis : int
        Even M >= 2

    Returns
    -------
    Grid

    Raises
    ------
    GridError
        On odd or nonpositive M, nonpositive L or unsupported dimension
    """
    if int(points_per_axis) != points_per_axis or points_per_axis < 2 or points_per_axis % 2:
        raise GridError(f"points_per_axis must be an even integer >= 2, got {points_per_axis}")
    grid = Grid(int(dimension), float(half_width), int(points_per_axis))
    logger.debug("Built grid n=%d L=%g M=%d h=%g", grid.dimension, grid.half_width,
                 grid.points_per_axis, grid.spacing)
    return grid


def sample_function(grid: Grid, f: Callable, vectorized: bool = False) -> Field:
    """
    Sample a pointwise function at the cell centers, values[i] = f(center_i).

    Parameters
    ----------
    grid : Grid
    f : callable
        Called once per center with a length-n array. With vectorized=True,
        f receives the (M^n, n) array of centers and must return exactly
        M^n values.
    vectorized : bool

    Returns
    -------
    Field

    Raises
    ------
    GridError
        A vectorized f returned the wrong number of values
    NonFiniteValueError
        Naming the first cell where f is not finite
    """
    points = grid.centers
    if vectorized:
        values = np.asarray(f(points), dtype=float)
        if values.shape != (grid.cell_count,):
            raise GridError(
                f"vectorized f must return shape ({grid.cell_count},), got {values.shape}"
            )
    else:
        values = np.array([f(p) for p in points], dtype=float)
    return Field(grid, values)
