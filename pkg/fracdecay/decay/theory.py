"""
Predicted decay rates.

||u(t)||_q decays like t^-(n / 2 sigma)(1 - 1/q) for heavy-tailed kernels
and like t^-(n / 2)(1 - 1/q) for compactly supported ones.
"""

from enum import Enum
from typing import Optional

from fracdecay.exceptions import DomainError
from fracdecay.functionals.norms import lq_norm
from fracdecay.lattice.grid import Field


class DecayRegime(str, Enum):
    DIRECT = 'direct'
    INTERPOLATED = 'interpolated'
    TRIVIAL = 'trivial'
    COMPACT = 'compact'
    EXPLORATORY = 'exploratory'


def _check(sigma: Optional[float], q: float) -> None:
    if not q >= 1.0:
        raise DomainError(f"q must be >= 1, got {q}")
    if sigma is not None and not 0.0 < sigma < 1.0:
        raise DomainError(f"sigma must lie in (0,1), got {sigma}")


def theoretical_exponent(n: int, sigma: Optional[float], q: float) -> float:
    """
    Decay exponent of ||u(t)||_q.

    Parameters
    ----------
    n : int
        Dimension
    sigma : float or None
        Tail order; None for compact kernels
    q : float
        >= 1; q = inf gives the L^inf rate

    Returns
    -------
    float
        n / (2 sigma) (1 - 1/q), or n / 2 (1 - 1/q) when sigma is None
    """
    _check(sigma, q)
    scale = n / 2.0 if sigma is None else n / (2.0 * sigma)
    return scale * (1.0 - 1.0 / q)


def decay_regime(n: int, sigma: Optional[float], q: float) -> DecayRegime:
    """
    Which statement covers the (n, sigma, q) combination.

    n = 1 runs are exploratory; q = 1 does not decay; q > 2 sigma is the
    main range and 1 < q <= 2 sigma is reached by interpolation.
    """
    _check(sigma, q)
    if n < 2:
        return DecayRegime.EXPLORATORY
    if q == 1.0:
        return DecayRegime.TRIVIAL
    if sigma is None:
        return DecayRegime.COMPACT
    return DecayRegime.DIRECT if q > 2.0 * sigma else DecayRegime.INTERPOLATED


def initial_data_scale(u0: Field, q: float, sigma: Optional[float] = None, r: Optional[float] = None) -> float:
    """
    max(||u0||_1, ||u0||_r), the scale the uniform-in-time bound is proportional to.

    r defaults to q; in the interpolation range q <= 2 sigma an r > 2 sigma
    must be supplied.
    """
    _check(sigma, q)
    if r is None:
        if sigma is not None and q <= 2.0 * sigma:
            raise DomainError(f"q={q} <= 2 sigma={2 * sigma}; pass an exponent r > 2 sigma")
        r = q
    elif sigma is not None and not r > 2.0 * sigma:
        raise DomainError(f"r must exceed 2 sigma={2 * sigma}, got {r}")
    return max(lq_norm(u0, 1.0), lq_norm(u0, r))
