"""
Kernel Family Strategies

Each kernel family is a strategy that knows how to evaluate J(x, y) on
arrays of point pairs and, for translation-invariant families, its radial
profile and total mass. Families are looked up by name through
``KERNEL_FAMILIES``.
"""

from abc import ABC, abstractmethod
from typing import Optional

import numpy as np
from scipy.integrate import quad
from scipy.special import gamma

from fracdecay.exceptions import UnsupportedOperationError
from fracdecay.registry import Registry


def sphere_surface(dimension: int) -> float:
    """Surface measure of the unit sphere in R^n (2 for n = 1)."""
    return 2.0 * np.pi ** (dimension / 2.0) / gamma(dimension / 2.0)


def ball_volume(dimension: int, radius: float = 1.0) -> float:
    return sphere_surface(dimension) / dimension * radius ** dimension


def _norm(z: np.ndarray) -> np.ndarray:
    return np.sqrt((z * z).sum(axis=-1))


def bump(s: np.ndarray) -> np.ndarray:
    """Smooth bump exp(1 - 1/(1 - s^2)) on |s| < 1, zero elsewhere; bump(0) = 1."""
    s = np.asarray(s, dtype=float)
    with np.errstate(divide='ignore', over='ignore', invalid='ignore'):
        inner = np.exp(1.0 - 1.0 / (1.0 - s * s))
    return np.where(np.abs(s) < 1.0, inner, 0.0)


def capped_tail(r: np.ndarray, dimension: int, sigma: float, c1: float, cap: float) -> np.ndarray:
    """min(cap, c1 r^-(n + 2 sigma)), equal to cap at r = 0."""
    r = np.asarray(r, dtype=float)
    with np.errstate(divide='ignore'):
        tail = c1 * r ** (-(dimension + 2.0 * sigma))
    return np.minimum(cap, tail)


def modulation_profile(x: np.ndarray) -> np.ndarray:
    """Bounded smooth odd function g(x) = tanh(sum(x) / sqrt(n)), |g| <= 1."""
    x = np.asarray(x, dtype=float)
    return np.tanh(x.sum(axis=-1) / np.sqrt(x.shape[-1]))


class KernelFamily(ABC):
    """
    Strategy interface for a kernel family.

    Subclasses implement ``evaluate``; convolution families also implement
    ``profile`` and ``mass``.
    """
    name: str = ''
    is_convolution: bool = False
    has_tail: bool = False

    @abstractmethod
    def evaluate(self, spec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """
        Evaluate J on point pairs.

        Parameters
        ----------
        spec : KernelSpec
        x, y : np.ndarray
            Arrays of shape (k, n)

        Returns
        -------
        np.ndarray
            Shape (k,), nonnegative
        """
        pass

    def profile(self, spec, r: np.ndarray, dimension: int) -> np.ndarray:
        """Radial profile K(|z|) of a translation-invariant kernel."""
        raise UnsupportedOperationError(
            f"Kernel family '{self.name}' is not translation invariant", operation='profile'
        )

    def mass(self, spec, dimension: int) -> float:
        """Integral of J(0, z) over R^n."""
        raise UnsupportedOperationError(
            f"Kernel family '{self.name}' has no position-independent mass", operation='mass'
        )

    def exterior_bound(self, spec, dimension: int, radius: float) -> float:
        """Integral of the unmodulated kernel over |z| > radius (0 when unknown)."""
        return 0.0

    def support_radius(self, spec) -> Optional[float]:
        """Radius beyond which J vanishes, None for unbounded support."""
        return None


class CompactSmoothFamily(KernelFamily):
    """cap * bump(|x - y| / radius), supported in |x - y| <= radius."""
    name = 'compact_smooth'
    is_convolution = True

    def evaluate(self, spec, x, y):
        return self.profile(spec, _norm(x - y), x.shape[-1])

    def profile(self, spec, r, dimension):
        return spec.cap * bump(np.asarray(r, dtype=float) / spec.radius)

    def mass(self, spec, dimension):
        radial, _ = quad(lambda s: float(bump(np.array(s))) * s ** (dimension - 1), 0.0, 1.0)
        return spec.cap * sphere_surface(dimension) * spec.radius ** dimension * radial

    def support_radius(self, spec):
        return spec.radius


def _capped_tail_exterior(dimension, sigma, c1, cap, radius):
    # integral of min(cap, c1 |z|^-(n+2s)) over |z| > radius
    r0 = (c1 / cap) ** (1.0 / (dimension + 2.0 * sigma))
    S = sphere_surface(dimension)
    if radius >= r0:
        return c1 * S * radius ** (-2.0 * sigma) / (2.0 * sigma)
    core = cap * (ball_volume(dimension, r0) - ball_volume(dimension, radius))
    return core + c1 * S * r0 ** (-2.0 * sigma) / (2.0 * sigma)


class FractionalTailFamily(KernelFamily):
    """min(cap, c1 |x - y|^-(n + 2 sigma))."""
    name = 'fractional_tail'
    is_convolution = True
    has_tail = True

    def evaluate(self, spec, x, y):
        return self.profile(spec, _norm(x - y), x.shape[-1])

    def profile(self, spec, r, dimension):
        return capped_tail(r, dimension, spec.sigma, spec.c1, spec.cap)

    def mass(self, spec, dimension):
        return _capped_tail_exterior(dimension, spec.sigma, spec.c1, spec.cap, 0.0)

    def exterior_bound(self, spec, dimension, radius):
        return _capped_tail_exterior(dimension, spec.sigma, spec.c1, spec.cap, radius)


class NonconvolutionFractionalFamily(FractionalTailFamily):
    """(1 + m g(x) g(y)) * min(cap, c1 |x - y|^-(n + 2 sigma)) with g odd, |g| <= 1."""
    name = 'nonconvolution_fractional'
    is_convolution = False
    has_tail = True

    def evaluate(self, spec, x, y):
        factor = 1.0 + spec.modulation * (modulation_profile(x) * modulation_profile(y))
        return factor * capped_tail(_norm(x - y), x.shape[-1], spec.sigma, spec.c1, spec.cap)

    def profile(self, spec, r, dimension):
        return KernelFamily.profile(self, spec, r, dimension)

    def mass(self, spec, dimension):
        return KernelFamily.mass(self, spec, dimension)

    def unmodulated_profile(self, spec, r, dimension):
        return capped_tail(r, dimension, spec.sigma, spec.c1, spec.cap)


class CustomFamily(KernelFamily):
    """User-supplied vectorised J(x, y); tail bound taken from (sigma, c1) when given."""
    name = 'custom'

    def evaluate(self, spec, x, y):
        values = np.broadcast_to(np.asarray(spec.function(x, y), dtype=float), (x.shape[0],))
        return np.array(values)

    def exterior_bound(self, spec, dimension, radius):
        if spec.sigma is None:
            return 0.0
        return spec.c1 * sphere_surface(dimension) * radius ** (-2.0 * spec.sigma) / (2.0 * spec.sigma)


KERNEL_FAMILIES: Registry = Registry('kernel family')
KERNEL_FAMILIES.register(CompactSmoothFamily.name, CompactSmoothFamily(), aliases=['compact'])
KERNEL_FAMILIES.register(FractionalTailFamily.name, FractionalTailFamily(), aliases=['fat_tail'])
KERNEL_FAMILIES.register(NonconvolutionFractionalFamily.name, NonconvolutionFractionalFamily(),
                         aliases=['nonconvolution'])
KERNEL_FAMILIES.register(CustomFamily.name, CustomFamily())


def get_family(name: str) -> KernelFamily:
    """Return the family strategy registered under name (or alias)."""
    return KERNEL_FAMILIES.get(name)
