"""
Verification Suites

Named property checks grouped into the suites inequalities, dynamics and
decay. Every check uses fixed seeds and returns a CheckResult with its
measured margin (nonnegative means the property held).
"""

import logging
import time
from functools import lru_cache
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List

import numpy as np
import pandas as pd

from fracdecay.decay.fitting import fit_decay, verify_decay
from fracdecay.decay.series import DecaySeries
from fracdecay.decay.symbol import symbol_exponent_fit
from fracdecay.decay.theory import theoretical_exponent
from fracdecay.exceptions import DomainError
from fracdecay.functionals.energy import dissipation_identity_residual
from fracdecay.functionals.inequalities import interpolation_exponents, mollified_energy_ratio, sobolev_ratio
from fracdecay.functionals.mollifier import build_mollifier, mollifier_decompose
from fracdecay.functionals.norms import lq_norm, total_mass
from fracdecay.functionals.pairing import pairing_check, pairing_constant
from fracdecay.integrator.evolve import evolve, max_stable_dt
from fracdecay.integrator.schedule import TimeSchedule
from fracdecay.kernel.spec import KernelSpec
from fracdecay.kernel.validation import normalize_mass
from fracdecay.lattice.generators import TestProfile, initial_datum, random_test_field
from fracdecay.lattice.grid import build_grid
from fracdecay.operator.applier import assemble
from fracdecay.registry import Registry

logger = logging.getLogger(__name__)

SUITES = ('inequalities', 'dynamics', 'decay')


@dataclass
class CheckResult:
    name: str
    suite: str
    passed: bool
    margin: float
    detail: str = ''
    seconds: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        result = asdict(self)
        result['margin'] = self.margin if np.isfinite(self.margin) else None
        return result


@dataclass
class VerificationReport:
    selector: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'selector': self.selector,
            'passed': self.passed,
            'checks': [c.to_dict() for c in self.checks],
        }


@dataclass(frozen=True)
class VerificationCheck:
    name: str
    suite: str
    run: Callable[[], CheckResult]


VERIFICATION_CHECKS: Registry = Registry('verification check')


def verification_check(suite: str, name: str):
    """Register a zero-argument check returning (margin, detail) under suite."""
    def _register(fn):
        def _run() -> CheckResult:
            started = time.perf_counter()
            margin, detail = fn()
            return CheckResult(name, suite, bool(margin >= 0.0), float(margin), detail,
                               time.perf_counter() - started)
        VERIFICATION_CHECKS.register(name, VerificationCheck(name, suite, _run))
        return fn
    return _register


def _unit_tail_kernel(dimension: int, sigma: float = 0.5) -> KernelSpec:
    return normalize_mass(KernelSpec('fractional_tail', sigma=sigma), 1.0, dimension)


def _unit_compact_kernel(dimension: int) -> KernelSpec:
    return normalize_mass(KernelSpec('compact_smooth', sigma=None), 1.0, dimension)


_PROFILES = list(TestProfile)


# inequalities

@verification_check('inequalities', 'pairing_inequality')
def _pairing():
    rng = np.random.default_rng(11)
    a, b = rng.uniform(-10.0, 10.0, size=(2, 100_000))
    scale = np.maximum(np.abs(a), np.abs(b))
    worst = np.inf
    for q in (1.5, 2.0, 3.0, 4.0):
        c = pairing_constant(q)
        margin = pairing_check(a, b, q, c) + 1e-12 * scale ** q
        worst = min(worst, float((margin / np.maximum(scale ** q, 1e-300)).min()))
    exact = pairing_constant(2.0).constant == 1.0 and pairing_constant(4.0).constant >= 2.0 ** -4
    return (worst if exact else -1.0), 'normalised margin over 1e5 pairs, q in {1.5, 2, 3, 4}'


@verification_check('inequalities', 'mollifier_bounds')
def _mollifier_bounds():
    grid = build_grid(2, 10.0, 64)
    psi = build_mollifier(grid, 1.0)
    worst = np.inf
    for seed in range(100):
        u = random_test_field(grid, seed, _PROFILES[seed % len(_PROFILES)])
        parts = mollifier_decompose(u, psi)
        for q in (1.0, 1.5, 2.0, 3.0):
            norm = lq_norm(u, q)
            worst = min(worst,
                        norm * (1.0 + 1e-10) - lq_norm(parts.smooth_part, q),
                        2.0 * norm * (1.0 + 1e-10) - lq_norm(parts.remainder, q))
    return worst, '||v||_q <= ||u||_q and ||w||_q <= 2 ||u||_q on 100 fields'


@verification_check('inequalities', 'mollified_energy_ratio')
def _mollified_ratio():
    kernel = _unit_tail_kernel(2)
    ops = {m: assemble(kernel, build_grid(2, 10.0, m), 'conservative', 'fft_convolution') for m in (64, 128)}
    ratios = {m: [] for m in ops}
    for seed in range(50):
        for m, op in ops.items():
            u = random_test_field(op.grid, seed, _PROFILES[seed % len(_PROFILES)])
            ratios[m].append(mollified_energy_ratio(u, op, 0.5, 2.0))
    coarse, fine = np.array(ratios[64]), np.array(ratios[128])
    spread = float(fine.max() / fine.min())
    change = float(np.max(np.maximum(fine / coarse, coarse / fine)))
    detail = f"max/min ratio {spread:.4g} over 50 fields, worst M=64->128 change {change:.4g}"
    return min(10.0 - spread, 2.0 - change), detail


@verification_check('inequalities', 'sobolev_ratio')
def _sobolev():
    coarse = sobolev_ratio(initial_datum(build_grid(2, 10.0, 32), 'gaussian', 2.0), 0.5, 2.0)
    fine = sobolev_ratio(initial_datum(build_grid(2, 10.0, 64), 'gaussian', 2.0), 0.5, 2.0)
    change = max(coarse / fine, fine / coarse)
    return 2.0 - change, f"ratio {coarse:.4g} at M=32, {fine:.4g} at M=64"


@verification_check('inequalities', 'interpolation_exponents')
def _exponents():
    theta, q_star = interpolation_exponents(2, 2.0, 0.5)
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 4))
        sigma = rng.uniform(0.01, min(0.99, n / 2.0 - 0.01))
        q = rng.uniform(1.01, 10.0)
        t, qs = interpolation_exponents(n, q, sigma)
        worst = max(worst, abs(1.0 / q - (t / qs + 1.0 - t)))
    exact = abs(theta - 2.0 / 3.0) <= 1e-15 and q_star == 4.0
    return (1e-12 - worst) if exact else -1.0, f"max identity residual {worst:.3g}"


# dynamics

_BOUNDARY_MODES = ('conservative', 'absorbing')
_CONTRACTION_Q = (1.0, 1.5, 2.0, 3.0, 4.0, np.inf)


@lru_cache(maxsize=2)
def _dynamics_run(mode: str, points: int = 64, steps: int = 1000):
    grid = build_grid(2, 10.0, points)
    op = assemble(_unit_tail_kernel(2), grid, mode, 'fft_convolution')
    u0 = initial_datum(grid, 'gaussian', 2.0)
    dt = max_stable_dt(op, 'euler', 0.9)
    schedule = TimeSchedule.uniform(steps * dt, 20, 0.9, 'euler')
    return u0, evolve(op, u0, schedule)


@verification_check('dynamics', 'mass_conservation')
def _mass():
    u0, trajectory = _dynamics_run('conservative')
    m0 = total_mass(u0)
    drift = max(abs(total_mass(u) - m0) for u in trajectory.fields) / abs(m0)
    return 1e-10 - drift, f"relative mass drift {drift:.3g} over 1000 steps"


@verification_check('dynamics', 'absorbing_mass_loss')
def _mass_loss():
    u0, trajectory = _dynamics_run('absorbing')
    masses = [total_mass(u0)] + [total_mass(u) for u in trajectory.fields]
    worst = min(a * (1.0 + 1e-12) - b for a, b in zip(masses, masses[1:]))
    return worst, f"mass nonincreasing, {masses[0]:.6g} -> {masses[-1]:.6g}"


@verification_check('dynamics', 'norm_contraction')
def _contraction():
    worst = np.inf
    for mode in _BOUNDARY_MODES:
        u0, trajectory = _dynamics_run(mode)
        for q in _CONTRACTION_Q:
            norms = [lq_norm(u0, q)] + [lq_norm(u, q) for u in trajectory.fields]
            worst = min(worst, min(a * (1.0 + 1e-12) - b for a, b in zip(norms, norms[1:])))
    orders = ', '.join('inf' if np.isinf(q) else f"{q:g}" for q in _CONTRACTION_Q)
    return worst, f"l^q norms nonincreasing at every snapshot, q in {{{orders}}}, both boundary modes"


@verification_check('dynamics', 'positivity')
def _positivity():
    lowest = min(float(u.values.min()) for mode in _BOUNDARY_MODES for u in _dynamics_run(mode)[1].fields)
    return lowest, f"minimum value {lowest:.3g} over both boundary modes"


@verification_check('dynamics', 'dissipation_identity')
def _dissipation():
    grid = build_grid(2, 10.0, 32)
    op = assemble(_unit_tail_kernel(2), grid, 'conservative', 'fft_convolution')
    u0 = initial_datum(grid, 'gaussian', 2.0)
    worst = np.inf
    factors = []
    for q in (2.0, 3.0):
        residuals = []
        for spacing, index in ((0.5, 3), (0.25, 7)):
            count = index + 2
            trajectory = evolve(op, u0, TimeSchedule.uniform(spacing * count, count, 0.01, 'rk4'))
            residuals.append(dissipation_identity_residual(op, trajectory, q, index))
        factor = residuals[0] / residuals[1]
        factors.append(factor)
        worst = min(worst, factor - 3.5, 4.5 - factor)
    return worst, 'residual reduction factors ' + ', '.join(f"{f:.3f}" for f in factors)


# decay

@verification_check('decay', 'theoretical_exponents')
def _theory():
    values = [theoretical_exponent(2, 0.5, 2.0) - 1.0, theoretical_exponent(2, None, 2.0) - 0.5,
              theoretical_exponent(3, 0.7, 1.0)]
    worst = max(abs(v) for v in values)
    return 1e-15 - worst, f"max deviation {worst:.3g}"


@verification_check('decay', 'synthetic_fit')
def _synthetic():
    t = np.geomspace(0.2, 20.0, 40)
    frame = pd.DataFrame({'t': t, 'mass': 1.0, 'l1': 1.0, 'linf': 3.0 * t ** -0.5,
                          'lq_2': 3.0 * t ** -0.5, 'energy_q2': np.nan})
    fit = fit_decay(DecaySeries([2.0], frame), 2.0, 0.5, theory=0.5)
    error = max(abs(fit.slope + 0.5), abs(fit.intercept - np.log(3.0)))
    verdict = verify_decay(fit, 0.01)
    return (1e-10 - error) if verdict.passed else -1.0, f"slope {fit.slope:.12f}"


@verification_check('decay', 'symbol_exponent')
def _symbol():
    grid = build_grid(1, 40.0, 512)
    tail = symbol_exponent_fit(_unit_tail_kernel(1), grid).sigma_estimate
    compact = symbol_exponent_fit(_unit_compact_kernel(1), grid).sigma_estimate
    margin = min(tail - 0.45, 0.55 - tail, compact - 0.9, 1.1 - compact)
    return margin, f"sigma estimates {tail:.4f} (tail), {compact:.4f} (compact)"


def verify_suite(selector: str = 'all') -> VerificationReport:
    """
    Run every check of the selected suite ('all' runs all suites).

    A check that raises is reported as failed with the error message.
    """
    if selector != 'all' and selector not in SUITES:
        raise DomainError(f"Unknown suite '{selector}'. Available: all, {', '.join(SUITES)}")
    report = VerificationReport(selector)
    for name, check in VERIFICATION_CHECKS.items():
        if selector != 'all' and check.suite != selector:
            continue
        try:
            result = check.run()
        except Exception as e:
            logger.error("Check %s raised %s: %s", name, type(e).__name__, e)
            result = CheckResult(name, check.suite, False, float('nan'), f"{type(e).__name__}: {e}")
        logger.info("[%s] %s: %s (margin %.3g) %s", result.suite, name,
                    'pass' if result.passed else 'FAIL', result.margin, result.detail)
        report.checks.append(result)
    return report
