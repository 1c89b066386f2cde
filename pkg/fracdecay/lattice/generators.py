"""
Field Generators

Deterministic test fields for the inequality checks and initial data for
experiments. Test fields vanish on the boundary band so that convolution
and seminorm sums see no truncation.
"""

import logging
from enum import Enum

import numpy as np

from fracdecay.exceptions import GridError
from fracdecay.lattice.grid import Field, Grid, sample_function

logger = logging.getLogger(__name__)

BOUNDARY_BAND = 2.0


class TestProfile(str, Enum):
    GAUSSIAN_BUMP = 'gaussian_bump'
    DOUBLE_BUMP = 'double_bump'
    RANDOM_MODES = 'random_modes'

    # keep pytest from collecting the enum
    __test__ = False


class DatumProfile(str, Enum):
    GAUSSIAN = 'gaussian'
    INDICATOR = 'indicator'


def interior_mask(grid: Grid, band: float = BOUNDARY_BAND) -> np.ndarray:
    """Boolean mask of cells farther than band from the boundary of the cube."""
    return grid.boundary_distance > band


def _gaussian(points: np.ndarray, center: np.ndarray, width: float) -> np.ndarray:
    r2 = ((points - center) ** 2).sum(axis=1)
    return np.exp(-0.5 * r2 / width ** 2)


def random_test_field(grid: Grid, seed: int, profile='gaussian_bump') -> Field:
    """
    Build a deterministic, boundary-clean test field.

    Parameters
    ----------
    grid : Grid
    seed : int
        Seed for numpy.random.default_rng
    profile : str or TestProfile
        gaussian_bump (centered at the origin), double_bump (two bumps of
        random sign inside |x| <= L/4) or random_modes (random Fourier modes
        under a smooth window)

    Returns
    -------
    Field
        Exactly zero on cells within distance 2 of the boundary, not
        identically zero

    Raises
    ------
    GridError
        If no cell lies farther than 2 from the boundary
    """
    profile = TestProfile(profile)
    mask = interior_mask(grid)
    if not mask.any():
        raise GridError(
            f"No cell lies farther than {BOUNDARY_BAND} from the boundary "
            f"(L={grid.half_width}); use a larger half_width"
        )

    rng = np.random.default_rng(seed)
    L = grid.half_width
    points = grid.centers
    n = grid.dimension

    if profile is TestProfile.GAUSSIAN_BUMP:
        width = L / 16.0 * (1.0 + rng.uniform())
        amplitude = rng.uniform(0.5, 2.0)
        values = amplitude * _gaussian(points, np.zeros(n), width)
    elif profile is TestProfile.DOUBLE_BUMP:
        values = np.zeros(grid.cell_count)
        for sign in (1.0, rng.choice([-1.0, 1.0])):
            center = rng.uniform(-L / 4.0, L / 4.0, size=n)
            width = L / 16.0 * (1.0 + rng.uniform())
            values += sign * rng.uniform(0.5, 1.5) * _gaussian(points, center, width)
    else:
        inner = L - BOUNDARY_BAND
        window = np.prod(np.cos(0.5 * np.pi * np.clip(points / inner, -1.0, 1.0)) ** 2, axis=1)
        values = np.zeros(grid.cell_count)
        for _ in range(6):
            wavevector = rng.normal(scale=4.0 / L, size=n)
            phase = rng.uniform(0.0, 2.0 * np.pi)
            values += rng.normal() * np.cos(points @ wavevector + phase)
        values *= window
        if not np.any(values[mask]):
            values = window

    values = np.where(mask, values, 0.0)
    if not np.any(values):
        # bump narrower than the lattice: fall back to the center cell
        values[grid.nearest_cell(np.zeros(n))] = 1.0
    return Field(grid, values)


def initial_datum(grid: Grid, profile='gaussian', width: float = 2.0, mass: float = 1.0) -> Field:
    """
    Initial condition u0 normalised to a prescribed discrete mass.

    Parameters
    ----------
    grid : Grid
    profile : str or DatumProfile
        gaussian: exp(-|x|^2 / (2 width^2)); indicator: 1 on |x| <= width
    width : float
    mass : float
        Target value of sum(u0) h^n

    Returns
    -------
    Field
    """
    profile = DatumProfile(profile)
    if not width > 0:
        raise GridError(f"initial datum width must be positive, got {width}")
    if profile is DatumProfile.GAUSSIAN:
        def f(x):
            return _gaussian(x, np.zeros(grid.dimension), width)
    else:
        def f(x):
            return (np.sqrt((x ** 2).sum(axis=1)) <= width).astype(float)
    field = sample_function(grid, f, vectorized=True)
    raw_mass = field.values.sum() * grid.cell_volume
    if raw_mass <= 0:
        raise GridError(f"{profile.value} datum of width {width} covers no cell of the grid")
    logger.debug("Initial datum %s width=%g normalised from mass %g to %g",
                 profile.value, width, raw_mass, mass)
    return field * (mass / raw_mass)
