"""
Power-law fits of sampled norms.

log ||u(t)||_q = intercept + slope log t over the late part of log-time;
the decay exponent is -slope.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.stats import linregress

from fracdecay.decay.series import DecaySeries
from fracdecay.decay.theory import decay_regime, theoretical_exponent
from fracdecay.exceptions import DomainError, InsufficientDataError, NonPositiveNormError

logger = logging.getLogger(__name__)

MIN_WINDOW_POINTS = 5
MIN_R_SQUARED = 0.98


@dataclass
class DecayFit:
    """
    Fitted power law.

    Attributes
    ----------
    q : float
    window : (float, float)
        (t_lo, t_hi) of the fitted samples
    slope : float
        Negated decay exponent
    intercept : float
        log amplitude
    r_squared : float
    theoretical_exponent : float
        nan when the series carries no dimension
    relative_error : float, optional
        |slope + theory| / theory, None when theory is zero or unknown
    points : int
    regime : str, optional
    """
    q: float
    window: Tuple[float, float]
    slope: float
    intercept: float
    r_squared: float
    theoretical_exponent: float
    relative_error: Optional[float]
    points: int = 0
    regime: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        result = asdict(self)
        result['window'] = list(self.window)
        if not np.isfinite(self.theoretical_exponent):
            result['theoretical_exponent'] = None
        return result


@dataclass
class DecayVerdict:
    passed: bool
    details: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {'pass': self.passed, 'details': list(self.details)}


def fit_window(times: np.ndarray, window_fraction: float) -> float:
    """Lower end t_lo of the last window_fraction of log-time."""
    t_first, t_end = float(times[0]), float(times[-1])
    return float(np.exp(np.log(t_end) - window_fraction * (np.log(t_end) - np.log(t_first))))


def fit_decay(series: DecaySeries, q: float, window_fraction: float = 0.5,
              theory: Optional[float] = None) -> DecayFit:
    """
    Least-squares line through (log t, log ||u||_q) on the late window.

    Parameters
    ----------
    series : DecaySeries
    q : float
    window_fraction : float
        Fraction of log-time, counted back from the last sample, in (0, 1)
    theory : float, optional
        Expected exponent; computed from the series' dimension and sigma when omitted

    Raises
    ------
    InsufficientDataError
        Fewer than 5 samples in the window
    NonPositiveNormError
        A windowed norm is not positive
    """
    if not 0.0 < window_fraction < 1.0:
        raise DomainError(f"window_fraction must lie in (0,1), got {window_fraction}")
    times = series.times
    norms = series.norms(q)
    if len(times) < MIN_WINDOW_POINTS:
        raise InsufficientDataError(f"Series has {len(times)} samples, need {MIN_WINDOW_POINTS}")
    t_lo = fit_window(times, window_fraction)
    mask = times >= t_lo * (1.0 - 1e-12)
    if mask.sum() < MIN_WINDOW_POINTS:
        raise InsufficientDataError(
            f"Only {int(mask.sum())} samples in window [{t_lo:.4g}, {times[-1]:.4g}], need {MIN_WINDOW_POINTS}"
        )
    t_win, y_win = times[mask], norms[mask]
    if np.any(~(y_win > 0.0)):
        bad = float(t_win[np.argmax(~(y_win > 0.0))])
        raise NonPositiveNormError(f"||u||_{q:g} is not positive at t={bad:.6g}; cannot fit a power law")

    result = linregress(np.log(t_win), np.log(y_win))
    r_squared = float(result.rvalue ** 2) if np.isfinite(result.rvalue) else 1.0

    regime = None
    if theory is None and series.dimension is not None:
        theory = theoretical_exponent(series.dimension, series.sigma, q)
        regime = decay_regime(series.dimension, series.sigma, q).value
    theory = float('nan') if theory is None else float(theory)
    relative = abs(result.slope + theory) / theory if np.isfinite(theory) and theory != 0.0 else None

    fit = DecayFit(float(q), (float(t_win[0]), float(t_win[-1])), float(result.slope), float(result.intercept),
                   min(r_squared, 1.0), theory, relative, int(mask.sum()), regime)
    logger.info("Fit q=%g on [%.4g, %.4g]: slope %.4f (theory %.4f), r^2 %.5f",
                q, fit.window[0], fit.window[1], fit.slope, -theory, fit.r_squared)
    return fit


def verify_decay(fit: DecayFit, tolerance: float) -> DecayVerdict:
    """Pass iff |slope + theory| <= tolerance and r^2 >= 0.98."""
    details = []
    gap = abs(fit.slope + fit.theoretical_exponent)
    if not gap <= tolerance:
        details.append(f"exponent gap {gap:.6g}")
    if not fit.r_squared >= MIN_R_SQUARED:
        details.append(f"r_squared {fit.r_squared:.6g} below {MIN_R_SQUARED}")
    return DecayVerdict(not details, details)
