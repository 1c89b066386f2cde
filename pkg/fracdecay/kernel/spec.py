"""
Kernel Parameters Module

KernelSpec bundles a kernel family with its parameters and is the only
object the operator, validation and symbol code need to evaluate J(x, y).
KernelReport carries the outcome of the hypothesis checks.
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, Optional

import numpy as np

from fracdecay.exceptions import KernelError
from fracdecay.kernel.families import KERNEL_FAMILIES, KernelFamily


@dataclass(frozen=True)
class KernelSpec:
    """
    Kernel family and parameters.

    Attributes
    ----------
    family : str
        compact_smooth, fractional_tail, nonconvolution_fractional or custom
    sigma : float, optional
        Tail order in (0, 1); required for the tail families
    c1 : float
        Tail constant
    c2 : float
        Tail onset, fixed to 1 by default
    cap : float
        Bound on J
    modulation : float
        m in [0, 1), nonconvolution family only
    mass : float, optional
        Normalisation target recorded by normalize_mass
    radius : float
        Support radius of compact_smooth
    function : callable, optional
        Vectorised J(x, y) for the custom family
    """
    family: str = 'fractional_tail'
    sigma: Optional[float] = 0.5
    c1: float = 1.0
    c2: float = 1.0
    cap: float = 1.0
    modulation: float = 0.0
    mass: Optional[float] = None
    radius: float = 1.0
    function: Optional[Callable] = field(default=None, compare=False)

    def __post_init__(self):
        if not KERNEL_FAMILIES.is_registered(self.family):
            raise KernelError(
                f"Unknown kernel family '{self.family}'. Available: {', '.join(KERNEL_FAMILIES.names())}"
            )
        object.__setattr__(self, 'family', KERNEL_FAMILIES.resolve(self.family))
        if self.implementation.has_tail or self.sigma is not None:
            if self.sigma is None or not 0.0 < self.sigma < 1.0:
                raise KernelError(f"sigma must lie in (0,1), got {self.sigma}")
        for name in ('c1', 'c2', 'cap', 'radius'):
            if not getattr(self, name) > 0:
                raise KernelError(f"{name} must be positive, got {getattr(self, name)}")
        if not 0.0 <= self.modulation < 1.0:
            raise KernelError(f"modulation must lie in [0,1), got {self.modulation}")
        if self.mass is not None and not self.mass > 0:
            raise KernelError(f"mass must be positive, got {self.mass}")
        if self.family == 'custom' and self.function is None:
            raise KernelError("custom kernels need a function J(x, y)")

    @property
    def implementation(self) -> KernelFamily:
        return KERNEL_FAMILIES.get(self.family)

    @property
    def is_convolution(self) -> bool:
        return self.implementation.is_convolution

    def tail_constant(self) -> float:
        """Effective tail constant: c1, reduced by (1 - m) under modulation."""
        return self.c1 * (1.0 - self.modulation)

    def to_dict(self) -> Dict[str, Any]:
        result = asdict(self)
        result.pop('function')
        return result


@dataclass
class KernelReport:
    """
    Diagnostics for the kernel hypotheses.

    Attributes
    ----------
    symmetry_defect : float
        max |J(x,y) - J(y,x)| over sampled pairs
    max_value : float
        Largest sampled value of J
    row_integral_estimate : float
        Largest estimate of the row integral over the sampled points
    tail_bound_satisfied : bool
        Whether J(x,y) >= c1 (1 - m) |x-y|^-(n+2 sigma) on all sampled pairs with |x-y| > c2
    worst_tail_ratio : float
        min of J(x,y) / (c1 |x-y|^-(n+2 sigma)) over those pairs
    """
    symmetry_defect: float
    max_value: float
    row_integral_estimate: float
    tail_bound_satisfied: bool
    worst_tail_ratio: float
    pairs_checked: int = 0
    min_separation_checked: float = float('nan')
    max_separation_checked: float = float('nan')

    def to_dict(self) -> Dict[str, Any]:
        result = asdict(self)
        for key, value in result.items():
            if isinstance(value, float) and not np.isfinite(value):
                result[key] = None
        return result


def evaluate(spec: KernelSpec, x, y):
    """
    Evaluate J(x, y).

    Parameters
    ----------
    spec : KernelSpec
    x, y : array_like
        Single points of shape (n,) or arrays of shape (k, n)

    Returns
    -------
    float or np.ndarray
        A float for a single pair, otherwise shape (k,)
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    single = x.ndim <= 1 and y.ndim <= 1
    x2 = np.atleast_2d(x) if x.ndim else x.reshape(1, 1)
    y2 = np.atleast_2d(y) if y.ndim else y.reshape(1, 1)
    x2, y2 = np.broadcast_arrays(x2, y2)
    values = spec.implementation.evaluate(spec, x2, y2)
    return float(values[0]) if single else values
