"""
Discrete L^q norms and mass, weighted by the cell volume h^n.
"""

import numpy as np

from fracdecay.exceptions import DomainError
from fracdecay.lattice.grid import Field


def lq_norm(u: Field, q: float) -> float:
    """
    (sum_i |u_i|^q h^n)^(1/q); q = inf gives max_i |u_i|.

    Raises
    ------
    DomainError
        q < 1
    """
    if not q >= 1.0:
        raise DomainError(f"lq_norm needs q >= 1, got {q}")
    values = np.abs(u.values)
    if np.isinf(q):
        return float(values.max(initial=0.0))
    if q == 1.0:
        return float(values.sum() * u.grid.cell_volume)
    return float((np.power(values, q).sum() * u.grid.cell_volume) ** (1.0 / q))


def lq_power(u: Field, q: float) -> float:
    """sum_i |u_i|^q h^n, i.e. lq_norm(u, q)^q without the root."""
    if not q >= 1.0:
        raise DomainError(f"lq_power needs q >= 1, got {q}")
    return float(np.power(np.abs(u.values), q).sum() * u.grid.cell_volume)


def total_mass(u: Field) -> float:
    """Signed mass sum_i u_i h^n."""
    return float(u.values.sum() * u.grid.cell_volume)


def signed_power(values: np.ndarray, exponent: float) -> np.ndarray:
    """sign(a) |a|^exponent, the map a -> |a|^(q-2) a for exponent = q - 1."""
    return np.sign(values) * np.power(np.abs(values), exponent)
