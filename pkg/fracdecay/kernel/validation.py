"""
Kernel Validation Module

Checks of the kernel hypotheses on sampled pairs, the exterior tail mass
used by the absorbing boundary mode, and mass normalisation.
"""

import logging
import math
from dataclasses import replace
from typing import Iterator, List

import numpy as np
from scipy.signal import fftconvolve

from fracdecay.exceptions import KernelError, UnsupportedOperationError
from fracdecay.kernel.families import modulation_profile
from fracdecay.kernel.spec import KernelReport, KernelSpec, evaluate
from fracdecay.lattice.grid import Field, Grid

logger = logging.getLogger(__name__)

SHELL_RADIUS_FACTOR = 8.0
MASS_TOLERANCE = 1e-6
_CHUNK_POINTS = 1 << 20


def shell_radius(grid: Grid) -> float:
    """Radius R_max = 8L of the explicitly summed exterior shell."""
    return SHELL_RADIUS_FACTOR * grid.half_width


def _lattice_axis(grid: Grid, lo: float, hi: float) -> np.ndarray:
    # cell centers of the infinite continuation of the grid lying in [lo, hi]
    L, h = grid.half_width, grid.spacing
    i_lo = math.ceil((lo + L) / h - 0.5)
    i_hi = math.floor((hi + L) / h - 0.5)
    return -L + (np.arange(i_lo, i_hi + 1) + 0.5) * h


def _iter_lattice(axes: List[np.ndarray], max_points: int = _CHUNK_POINTS) -> Iterator[np.ndarray]:
    # tensor lattice in chunks along the first axis
    if len(axes) == 1:
        yield axes[0][:, None]
        return
    mesh = np.meshgrid(*axes[1:], indexing='ij')
    rest = np.stack([m.ravel() for m in mesh], axis=-1)
    rows = max(1, max_points // len(rest))
    for start in range(0, len(axes[0]), rows):
        first = axes[0][start:start + rows]
        points = np.empty((len(first) * len(rest), len(axes)))
        points[:, 0] = np.repeat(first, len(rest))
        points[:, 1:] = np.tile(rest, (len(first), 1))
        yield points


def kernel_mass(spec: KernelSpec, dimension: int) -> float:
    """
    Total mass of a convolution kernel, computed analytically.

    Raises
    ------
    UnsupportedOperationError
        For non-convolution families
    """
    return spec.implementation.mass(spec, dimension)


def normalize_mass(spec: KernelSpec, target_mass: float, dimension: int = 2) -> KernelSpec:
    """
    Rescale cap and c1 jointly so the kernel integrates to target_mass.

    Parameters
    ----------
    spec : KernelSpec
        compact_smooth or fractional_tail
    target_mass : float
    dimension : int

    Returns
    -------
    KernelSpec

    Raises
    ------
    UnsupportedOperationError
        For non-convolution families
    """
    if not spec.is_convolution:
        raise UnsupportedOperationError(
            f"normalize_mass needs a convolution kernel, got '{spec.family}'",
            operation='normalize_mass',
        )
    if not target_mass > 0:
        raise KernelError(f"target mass must be positive, got {target_mass}")
    scale = target_mass / kernel_mass(spec, dimension)
    normalized = replace(spec, cap=spec.cap * scale, c1=spec.c1 * scale, mass=float(target_mass))
    logger.debug("Normalised %s kernel by factor %.6g to mass %g", spec.family, scale, target_mass)
    return normalized


def exterior_tail_bound(spec: KernelSpec, dimension: int, radius: float) -> float:
    """
    Analytic integral of the (unmodulated) kernel over |z| > radius.

    For tail families beyond the cap region this is
    c1 |S^{n-1}| radius^{-2 sigma} / (2 sigma).
    """
    return spec.implementation.exterior_bound(spec, dimension, radius)


def tail_mass(spec: KernelSpec, grid: Grid, x) -> float:
    """
    Exterior mass T(x), the integral of J(x, y) over y outside the box.

    Lattice sum over the continuation of the grid inside |y - x| <= 8L plus
    the analytic remainder beyond 8L.

    Parameters
    ----------
    spec : KernelSpec
    grid : Grid
    x : array_like
        Point inside the box

    Returns
    -------
    float
    """
    x = np.asarray(x, dtype=float).reshape(grid.dimension)
    support = spec.implementation.support_radius(spec)
    distance_to_boundary = grid.half_width - np.abs(x).max()
    if support is not None and distance_to_boundary >= support:
        return 0.0

    R = shell_radius(grid)
    L = grid.half_width
    axes = [_lattice_axis(grid, xk - R, xk + R) for xk in x]
    total = 0.0
    for points in _iter_lattice(axes):
        outside = np.abs(points).max(axis=1) > L
        near = ((points - x) ** 2).sum(axis=1) <= R * R
        keep = points[outside & near]
        if len(keep):
            total += evaluate(spec, np.broadcast_to(x, keep.shape), keep).sum()
    total *= grid.cell_volume
    return float(total + exterior_tail_bound(spec, grid.dimension, R))


def lattice_ball_mass(spec: KernelSpec, grid: Grid, radius: float) -> float:
    """
    Lattice kernel mass sum of J(0, z) h^n over z in hZ^n, |z| <= radius (z = 0 included).

    Only meaningful for translation-invariant kernels.
    """
    reach = math.floor(radius / grid.spacing + 1e-9)
    axis = np.arange(-reach, reach + 1) * grid.spacing
    origin = np.zeros(grid.dimension)
    total = 0.0
    for points in _iter_lattice([axis] * grid.dimension):
        keep = points[(points ** 2).sum(axis=1) <= radius * radius]
        total += evaluate(spec, np.broadcast_to(origin, keep.shape), keep).sum()
    return float(total * grid.cell_volume)


def tail_mass_field(spec: KernelSpec, grid: Grid, interior_row_sum: np.ndarray) -> Field:
    """
    Exterior mass T(x_i) at every cell, used by the absorbing boundary mode.

    Parameters
    ----------
    spec : KernelSpec
    grid : Grid
    interior_row_sum : np.ndarray
        D0_i = sum over j != i of J(x_i, x_j) h^n

    Returns
    -------
    Field

    Notes
    -----
    For translation-invariant kernels the lattice ball around every cell is
    the same set of offsets, so T_i = S_R - J(0) h^n - D0_i + remainder.
    The modulated family adds m g(x_i) times the exterior sum of g(y) K(y - x_i),
    computed with two FFT correlations.
    """
    R = shell_radius(grid)
    h_n = grid.cell_volume
    family = spec.implementation
    remainder = exterior_tail_bound(spec, grid.dimension, R)

    if spec.family == 'custom':
        tail = np.array([tail_mass(spec, grid, x) for x in grid.centers])
        return Field(grid, np.maximum(tail, 0.0))

    base_spec = spec if spec.is_convolution else replace(spec, family='fractional_tail', modulation=0.0)
    origin = np.zeros((1, grid.dimension))
    self_weight = float(evaluate(base_spec, origin, origin)[0]) * h_n
    support = family.support_radius(spec)
    ball = lattice_ball_mass(base_spec, grid, R if support is None else min(R, support))

    if spec.is_convolution:
        tail = ball - self_weight - interior_row_sum + remainder
        return Field(grid, np.maximum(tail, 0.0))

    # modulated family: interior_row_sum includes the modulation, so rebuild
    # the unmodulated interior sums and the g-weighted sums separately
    P = math.floor(R / grid.spacing + 1e-9)
    offsets = np.arange(-P, P + 1) * grid.spacing
    mesh = np.meshgrid(*([offsets] * grid.dimension), indexing='ij')
    r = np.sqrt(sum(m ** 2 for m in mesh))
    wide_stencil = np.where(r <= R, family.unmodulated_profile(spec, r, grid.dimension), 0.0) * h_n

    ext_axis = _lattice_axis(grid, -grid.half_width - P * grid.spacing, grid.half_width + P * grid.spacing)
    ext_mesh = np.meshgrid(*([ext_axis] * grid.dimension), indexing='ij')
    g_ext = modulation_profile(np.stack(ext_mesh, axis=-1))
    g_ball = fftconvolve(g_ext, wide_stencil, mode='valid')

    box_offsets = grid.offset_axis()
    box_mesh = np.meshgrid(*([box_offsets] * grid.dimension), indexing='ij')
    box_r = np.sqrt(sum(m ** 2 for m in box_mesh))
    box_stencil = family.unmodulated_profile(spec, box_r, grid.dimension) * h_n
    g_box = modulation_profile(grid.centers).reshape(grid.shape)
    g_inside = fftconvolve(g_box, box_stencil, mode='same')
    plain_inside = fftconvolve(np.ones(grid.shape), box_stencil, mode='same')

    g_x = g_box.ravel()
    plain_tail = ball - plain_inside.ravel() + remainder
    modulated_tail = spec.modulation * g_x * (g_ball.ravel() - g_inside.ravel())
    if g_ball.shape != grid.shape:
        raise KernelError(f"exterior correlation has shape {g_ball.shape}, expected {grid.shape}")
    logger.debug("Exterior mass for %s via %d^%d FFT correlation", spec.family, 2 * P + 1, grid.dimension)
    return Field(grid, np.maximum(plain_tail + modulated_tail, 0.0))


def validate_kernel(spec: KernelSpec, grid: Grid, sample_count: int, seed: int = 0) -> KernelReport:
    """
    Check symmetry, boundedness, the row integral and the tail bound on sampled pairs.

    Parameters
    ----------
    spec : KernelSpec
    grid : Grid
    sample_count : int
        Number of random pairs for the symmetry and tail checks
    seed : int

    Returns
    -------
    KernelReport
        Failures are reported, never raised
    """
    if sample_count < 1:
        raise KernelError(f"sample_count must be >= 1, got {sample_count}")
    rng = np.random.default_rng(seed)
    n = grid.dimension
    L = grid.half_width

    x = rng.uniform(-L, L, size=(sample_count, n))
    y = rng.uniform(-L, L, size=(sample_count, n))
    forward = evaluate(spec, x, y)
    backward = evaluate(spec, y, x)
    symmetry_defect = float(np.max(np.abs(forward - backward)))
    max_value = float(max(forward.max(), evaluate(spec, x, x).max()))

    # tail bound: separations log-uniform in (c2, 8L]
    direction = rng.normal(size=(sample_count, n))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    upper = max(shell_radius(grid), 2.0 * spec.c2)
    separation = spec.c2 * np.exp(rng.uniform(0.0, np.log(upper / spec.c2), size=sample_count))
    far = x + separation[:, None] * direction
    separation = np.sqrt(((x - far) ** 2).sum(axis=1))
    beyond = separation > spec.c2
    x, far, separation = x[beyond], far[beyond], separation[beyond]
    far_values = evaluate(spec, x, far)
    order = n + 2.0 * (spec.sigma if spec.sigma is not None else 0.5)
    lower = spec.c1 * separation ** (-order)
    if len(separation):
        worst_tail_ratio = float((far_values / lower).min())
        max_value = max(max_value, float(far_values.max()))
    else:
        worst_tail_ratio = float('nan')
    tail_bound_satisfied = bool(worst_tail_ratio >= (1.0 - spec.modulation) * (1.0 - 1e-12))

    # row integral: lattice row sum plus exterior mass at the origin and a few cells
    picks = rng.integers(0, grid.cell_count, size=min(3, sample_count))
    sample_points = [np.zeros(n)] + [grid.centers[i] for i in picks]
    row_integrals = []
    for point in sample_points:
        inside = evaluate(spec, np.broadcast_to(point, grid.centers.shape), grid.centers).sum() * grid.cell_volume
        row_integrals.append(inside + tail_mass(spec, grid, point))
    row_integral_estimate = float(max(row_integrals))

    report = KernelReport(
        symmetry_defect=symmetry_defect,
        max_value=max_value,
        row_integral_estimate=row_integral_estimate,
        tail_bound_satisfied=tail_bound_satisfied,
        worst_tail_ratio=worst_tail_ratio,
        pairs_checked=int(beyond.sum()),
        min_separation_checked=float(separation.min()) if len(separation) else float("nan"),
        max_separation_checked=float(separation.max()) if len(separation) else float("nan"),
    )
    logger.info("Kernel %s: symmetry defect %.3g, row integral %.6g, tail bound %s (worst ratio %.4g)",
                spec.family, symmetry_defect, row_integral_estimate,
                'holds' if tail_bound_satisfied else 'fails', worst_tail_ratio)
    return report
