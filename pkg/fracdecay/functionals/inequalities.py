"""
Functional Inequality Certificates

Empirical constants for the inequalities behind the decay estimate:

- mollified_energy_ratio: ([v]_{2 sigma / q, q}^q + ||w||_q^q) / E_{J,q}(u)
- sobolev_ratio: ||u||_{q*}^q / [u]_{s,q}^q, q* = nq / (n - sq)
- interpolation_check: ||u||_q^q against ||u0||_1^{q(1-theta)} E^theta and E

The constants are existential; these functions report ratios so their
stability across fields and resolutions can be tracked.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Tuple

from fracdecay.exceptions import DomainError, InequalityViolationError
from fracdecay.functionals.energy import energy
from fracdecay.functionals.mollifier import build_mollifier, mollifier_decompose
from fracdecay.functionals.norms import lq_norm, lq_power
from fracdecay.functionals.seminorm import seminorm_power
from fracdecay.lattice.grid import Field
from fracdecay.operator.applier import OperatorApplier

logger = logging.getLogger(__name__)

MOLLIFIER_RADIUS = 1.0


def _certificate_ratio(numerator: float, denominator: float, what: str) -> float:
    if denominator > 0.0:
        return numerator / denominator
    if numerator == 0.0:
        return 0.0
    raise InequalityViolationError(f"{what}: denominator vanishes while numerator is {numerator:.6g}")


def mollified_energy_ratio(u: Field, op: OperatorApplier, sigma: float, q: float,
                           radius: float = MOLLIFIER_RADIUS) -> float:
    """
    ([v]_{2 sigma / q, q}^q + ||w||_q^q) / E_{J,q}(u) with u = v + w mollified at radius 1.

    Returns 0 for the zero field.

    Raises
    ------
    DomainError
        q <= 2 sigma or q <= 1
    InequalityViolationError
        Zero energy with a nonzero numerator
    """
    if not (q > 2.0 * sigma and q > 1.0):
        raise DomainError(f"need q > max(1, 2 sigma), got q={q}, sigma={sigma}")
    parts = mollifier_decompose(u, build_mollifier(u.grid, radius))
    numerator = seminorm_power(parts.smooth_part, 2.0 * sigma / q, q) + lq_power(parts.remainder, q)
    ratio = _certificate_ratio(numerator, energy(op, u, q), 'mollified energy ratio')
    logger.debug("Mollified energy ratio sigma=%g q=%g: %.6g", sigma, q, ratio)
    return ratio


def critical_exponent(n: int, s: float, q: float) -> float:
    """q* = nq / (n - sq)."""
    if not s * q < n:
        raise DomainError(f"need s q < n, got s={s}, q={q}, n={n}")
    return n * q / (n - s * q)


def sobolev_ratio(u: Field, s: float, q: float) -> float:
    """
    ||u||_{q*}^q / [u]_{s,q}^q.

    Raises
    ------
    DomainError
        s q >= n, or u identically zero
    InequalityViolationError
        Zero seminorm for a nonzero field
    """
    q_star = critical_exponent(u.grid.dimension, s, q)
    if not u.values.any():
        raise DomainError("sobolev_ratio needs a nonzero field")
    return _certificate_ratio(lq_norm(u, q_star) ** q, seminorm_power(u, s, q), 'sobolev ratio')


def interpolation_exponents(n: int, q: float, sigma: float) -> Tuple[float, float]:
    """
    theta = 1 - 2 sigma / (n (q - 1) + 2 sigma) and q~* = nq / (n - 2 sigma).

    They satisfy 1/q = theta / q~* + (1 - theta).
    """
    if not q > 1.0:
        raise DomainError(f"need q > 1, got {q}")
    if not 0.0 < sigma < 1.0:
        raise DomainError(f"need sigma in (0,1), got {sigma}")
    if not n > 2.0 * sigma:
        raise DomainError(f"need n > 2 sigma, got n={n}, sigma={sigma}")
    theta = 1.0 - 2.0 * sigma / (n * (q - 1.0) + 2.0 * sigma)
    return theta, n * q / (n - 2.0 * sigma)


@dataclass
class InterpolationReport:
    """
    ||u||_q^q <= C (||u0||_1^{q(1-theta)} E^theta + E) with the smallest such C.
    """
    lhs: float
    interpolation_term: float
    energy_term: float
    constant: float
    theta: float

    @property
    def rhs_shape(self) -> Tuple[float, float]:
        return self.interpolation_term, self.energy_term

    def to_dict(self):
        return asdict(self)


def interpolation_check(u0: Field, u: Field, op: OperatorApplier, q: float, sigma: float) -> InterpolationReport:
    """
    Empirical constant for bounding ||u||_q^q by the L^1 mass of u0 and the energy of u.

    Raises
    ------
    InequalityViolationError
        E = 0 while ||u||_q > 0
    """
    if not q > 2.0 * sigma:
        raise DomainError(f"need q > 2 sigma, got q={q}, sigma={sigma}")
    theta, _ = interpolation_exponents(u.grid.dimension, q, sigma)
    lhs = lq_power(u, q)
    e = energy(op, u, q)
    term1 = lq_norm(u0, 1.0) ** (q * (1.0 - theta)) * e ** theta
    constant = _certificate_ratio(lhs, term1 + e, 'interpolation bound')
    return InterpolationReport(lhs, term1, e, constant, theta)
