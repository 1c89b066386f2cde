"""
Pairing Inequality Module

(a - b)(|a|^(q-2) a - |b|^(q-2) b) >= C_q |a - b|^q.

With |a| >= |b| and x = b / a the inequality reduces to
f(x) = (1 - x)(1 - |x|^(q-2) x) / |1 - x|^q >= C_q on [-1, 1).
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from fracdecay.exceptions import DomainError
from fracdecay.functionals.norms import signed_power

logger = logging.getLogger(__name__)

SEARCH_CUTOFF = 1e-6
SHRINK_FACTOR = 0.999
_GRID_POINTS = 2001


class PairingMethod(str, Enum):
    EXACT_Q2 = 'exact_q2'
    CLOSED_FORM_BOUND = 'closed_form_bound'
    NUMERIC_MINIMIZATION = 'numeric_minimization'


@dataclass(frozen=True)
class PairingConstant:
    q: float
    constant: float
    method: PairingMethod

    def to_dict(self):
        return {'q': self.q, 'constant': self.constant, 'method': self.method.value}


def _reduced_ratio(x: np.ndarray, q: float) -> np.ndarray:
    return (1.0 - x) * (1.0 - signed_power(x, q - 1.0)) / np.abs(1.0 - x) ** q


def _minimize_reduced_ratio(q: float) -> float:
    lo, hi = -1.0, 1.0 - SEARCH_CUTOFF
    best = np.inf
    while True:
        xs = np.linspace(lo, hi, _GRID_POINTS)
        values = _reduced_ratio(xs, q)
        k = int(np.argmin(values))
        best = min(best, float(values[k]))
        if hi - lo <= SEARCH_CUTOFF:
            return best
        step = xs[1] - xs[0]
        lo, hi = max(-1.0, xs[k] - step), min(1.0 - SEARCH_CUTOFF, xs[k] + step)


def pairing_constant(q: float) -> PairingConstant:
    """
    Constant C_q of the pairing inequality.

    q = 2 gives 1 exactly; q > 2 gives the bound 2^-q; for 1 < q < 2 the
    reduced ratio is minimised over [-1, 1 - 1e-6] on a refining grid and
    shrunk by 0.999.

    Raises
    ------
    DomainError
        q <= 1
    """
    if not q > 1.0:
        raise DomainError(f"pairing constant needs q > 1, got {q}")
    if q == 2.0:
        return PairingConstant(q, 1.0, PairingMethod.EXACT_Q2)
    if q > 2.0:
        return PairingConstant(q, 2.0 ** (-q), PairingMethod.CLOSED_FORM_BOUND)
    constant = SHRINK_FACTOR * _minimize_reduced_ratio(q)
    logger.debug("Pairing constant q=%g by minimisation: %.6g", q, constant)
    return PairingConstant(q, constant, PairingMethod.NUMERIC_MINIMIZATION)


def pairing_check(a, b, q: float, c: PairingConstant):
    """
    Margin lhs - C |a - b|^q; vectorised over a and b.

    The contract is margin >= -1e-12 max(|a|, |b|)^q.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    lhs = (a - b) * (signed_power(a, q - 1.0) - signed_power(b, q - 1.0))
    margin = lhs - c.constant * np.abs(a - b) ** q
    return float(margin) if margin.ndim == 0 else margin
