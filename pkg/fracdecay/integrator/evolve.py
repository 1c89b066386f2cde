"""
Time integration of du/dt = L u.

The step bound dt <= 1 / max_i D_i makes one Euler step a convex
combination of cell values, so positivity, the maximum principle and the
L^1 / L^inf contractions carry over exactly to the discrete solution.
"""

import logging

import numpy as np

from fracdecay.exceptions import DegenerateKernelError, DomainError, InstabilityError
from fracdecay.integrator.schedule import TimeSchedule, Trajectory
from fracdecay.integrator.schemes import get_scheme
from fracdecay.lattice.grid import Field
from fracdecay.operator.applier import OperatorApplier

logger = logging.getLogger(__name__)

_LANDING_TOLERANCE = 1e-12


def max_stable_dt(op: OperatorApplier, scheme: str = 'euler', dt_safety: float = 0.9) -> float:
    """
    Positivity-safe step dt_safety / max_i D_i.

    rk4 shares the Euler bound.

    Raises
    ------
    DomainError
        dt_safety outside (0, 1]
    DegenerateKernelError
        All row sums vanish
    """
    if not 0.0 < dt_safety <= 1.0:
        raise DomainError(f"dt_safety must lie in (0,1], got {dt_safety}")
    get_scheme(scheme)
    d_max = float(np.max(op.row_sum.values))
    if not d_max > 0.0:
        raise DegenerateKernelError(
            f"Operator row sums are all zero ({op!r}); the kernel does not couple any cells"
        )
    return dt_safety / d_max


def _checked(values: np.ndarray, t: float) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise InstabilityError(f"Non-finite values after step ending at t={t:.6g}", time=t)
    return values


def step(op: OperatorApplier, u: Field, dt: float, scheme: str = 'euler') -> Field:
    """
    One explicit step.

    Raises
    ------
    InstabilityError
        The new state contains non-finite values
    """
    u.require_grid(op.grid)
    values = get_scheme(scheme).step(op.apply_values, u.values, float(dt))
    return Field(op.grid, _checked(values, float(dt)))


def evolve(op: OperatorApplier, u0: Field, schedule: TimeSchedule) -> Trajectory:
    """
    Advance u0 to schedule.t_end, recording snapshots at schedule.sample_times.

    The step before each sample time is shortened so the snapshot is taken
    at the sample time exactly.

    Returns
    -------
    Trajectory

    Raises
    ------
    InstabilityError
        With the time at which non-finite values appeared
    """
    u0.require_grid(op.grid)
    impl = get_scheme(schedule.scheme)
    dt = max_stable_dt(op, schedule.scheme, schedule.dt_safety)
    logger.info("Evolving to t=%g with %s, dt=%.4g, %d samples",
                schedule.t_end, schedule.scheme, dt, len(schedule.sample_times))

    u = u0.values.copy()
    t = 0.0
    steps = 0
    samples = []
    for target in schedule.sample_times:
        while target - t > _LANDING_TOLERANCE * max(1.0, target):
            h = min(dt, target - t)
            u = _checked(impl.step(op.apply_values, u, h), t + h)
            t += h
            steps += 1
        t = target
        samples.append((target, Field(op.grid, u)))
        logger.debug("Sample t=%.6g after %d steps, max|u|=%.6g", target, steps, float(np.abs(u).max()))

    return Trajectory(u0, samples, dt=dt, steps=steps)
