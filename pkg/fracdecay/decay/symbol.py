"""
Fourier symbol of a convolution kernel.

For a unit-mass kernel 1 - K^(xi) ~ A |xi|^(2 sigma) at low frequency; a
log-log fit of the discrete symbol recovers sigma (and sigma = 1 for
compactly supported kernels).
"""

import logging
from dataclasses import asdict, dataclass
from typing import Tuple

import numpy as np
from scipy.stats import linregress

from fracdecay.exceptions import KernelError, UnsupportedOperationError
from fracdecay.kernel.spec import KernelSpec
from fracdecay.kernel.validation import MASS_TOLERANCE, kernel_mass
from fracdecay.lattice.grid import Grid
from fracdecay.operator.pairs import offset_norms

logger = logging.getLogger(__name__)

LOW_FREQUENCY_MODES = (1, 10)


@dataclass
class SymbolFit:
    sigma_estimate: float
    amplitude_estimate: float
    fit_window: Tuple[float, float]
    r_squared: float = float('nan')

    def to_dict(self):
        result = asdict(self)
        result['fit_window'] = list(self.fit_window)
        return result


def _axis_marginal(spec: KernelSpec, grid: Grid) -> Tuple[np.ndarray, np.ndarray]:
    r = offset_norms(grid)
    weights = spec.implementation.profile(spec, r, grid.dimension)
    marginal = weights.reshape(weights.shape[0], -1).sum(axis=1)
    return grid.offset_axis(), marginal


def discrete_symbol_deficit(spec: KernelSpec, grid: Grid, xi: np.ndarray) -> np.ndarray:
    """
    1 - K^(xi e_1) of the lattice kernel normalised by its own lattice mass.

    Uses 2 sin^2 (xi z / 2) in place of 1 - cos(xi z), so the value at xi = 0 is exactly 0.
    """
    z, marginal = _axis_marginal(spec, grid)
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    deficit = (marginal[None, :] * 2.0 * np.sin(0.5 * xi[:, None] * z[None, :]) ** 2).sum(axis=1)
    return deficit / marginal.sum()


def symbol_exponent_fit(spec: KernelSpec, grid: Grid) -> SymbolFit:
    """
    Fit log(1 - K^(xi)) against log |xi| on xi_k = pi k / L, k = 1..10.

    Raises
    ------
    UnsupportedOperationError
        Nonconvolution kernel
    KernelError
        Kernel mass differs from 1; normalise with normalize_mass first
    """
    if not spec.is_convolution:
        raise UnsupportedOperationError(
            f"symbol fit needs a convolution kernel, got '{spec.family}'", operation='symbol_exponent_fit'
        )
    mass = kernel_mass(spec, grid.dimension)
    if abs(mass - 1.0) > MASS_TOLERANCE:
        raise KernelError(f"Kernel mass is {mass:.8g}, not 1; normalise it with normalize_mass first")

    k_lo, k_hi = LOW_FREQUENCY_MODES
    xi = np.pi * np.arange(k_lo, k_hi + 1) / grid.half_width
    deficit = discrete_symbol_deficit(spec, grid, xi)
    result = linregress(np.log(xi), np.log(deficit))
    fit = SymbolFit(float(result.slope / 2.0), float(np.exp(result.intercept)),
                    (float(xi[0]), float(xi[-1])), float(result.rvalue ** 2))
    logger.info("Symbol fit for %s: sigma %.4f, A %.4g", spec.family, fit.sigma_estimate, fit.amplitude_estimate)
    return fit
