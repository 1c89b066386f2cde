"""
Experiment Runner Module

Builds grid, kernel, operator and initial datum from an ExperimentConfig,
evolves, records the decay series and fits the exponents. Writes
<directory>/<name>.csv and <directory>/<name>.json; both are removed again
if the run fails part-way.
"""

import json
import logging
import math
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from fracdecay.cli.config import ExperimentConfig
from fracdecay.cli.summary import SummaryValidator
from fracdecay.decay.fitting import DecayFit, fit_decay, verify_decay
from fracdecay.decay.series import DecaySeries, record
from fracdecay.decay.theory import initial_data_scale
from fracdecay.exceptions import DomainError, FracDecayError
from fracdecay.integrator.evolve import evolve
from fracdecay.integrator.schedule import TimeSchedule
from fracdecay.kernel.spec import KernelReport, KernelSpec
from fracdecay.kernel.validation import normalize_mass, validate_kernel
from fracdecay.lattice.generators import initial_datum
from fracdecay.lattice.grid import Grid, build_grid
from fracdecay.operator.applier import OperatorApplier, assemble

logger = logging.getLogger(__name__)

KERNEL_SAMPLE_COUNT = 2000


def build_kernel(config: ExperimentConfig) -> KernelSpec:
    """
    KernelSpec for the configured family, normalised to kernel.mass when requested.

    The modulated family is normalised through its unmodulated profile.
    """
    k = config.kernel
    sigma = None if k.family == 'compact_smooth' else k.sigma
    modulation = k.modulation if k.family == 'nonconvolution_fractional' else 0.0
    spec = KernelSpec(family=k.family, sigma=sigma, c1=k.c1, cap=k.cap, radius=k.radius, modulation=modulation)
    if not k.normalize:
        return spec
    if spec.is_convolution:
        return normalize_mass(spec, k.mass, config.grid.dimension)
    base = normalize_mass(replace(spec, family='fractional_tail', modulation=0.0), k.mass, config.grid.dimension)
    return replace(base, family=spec.family, modulation=spec.modulation)


def build_schedule(config: ExperimentConfig) -> TimeSchedule:
    t = config.time
    return TimeSchedule.log_spaced(t.t_end, t.sample_count, t.first_sample, t.dt_safety, t.scheme)


def _json_ready(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value) if math.isfinite(value) else None
    return value


@dataclass
class ExperimentResult:
    """Outcome of run_experiment."""
    config: ExperimentConfig
    series: DecaySeries
    fits: List[DecayFit]
    kernel_report: KernelReport
    summary: Dict[str, Any]
    csv_path: Optional[Path] = None
    summary_path: Optional[Path] = None
    timings_ms: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(fit['verdict']['pass'] for fit in self.summary['fits'])


class ExperimentRunner:
    """
    Orchestrates one decay experiment.

    Parameters
    ----------
    config : ExperimentConfig
    write : bool
        Write the CSV and JSON outputs
    """

    def __init__(self, config: ExperimentConfig, write: bool = True):
        self.config = config
        self.write = write
        self.logger = logging.getLogger(f"{self.__class__.__module__}.{self.__class__.__name__}")
        directory = Path(config.output.directory)
        self.csv_path = directory / f"{config.output.name}.csv"
        self.summary_path = directory / f"{config.output.name}.json"
        self._timings: Dict[str, float] = {}

    def _timed(self, label: str, fn, *args, **kwargs):
        started = time.perf_counter()
        result = fn(*args, **kwargs)
        self._timings[label] = (time.perf_counter() - started) * 1000.0
        return result

    def _fits(self, series: DecaySeries) -> List[DecayFit]:
        return [fit_decay(series, q, self.config.analysis.window_fraction) for q in self.config.analysis.q_list]

    def _fit_entry(self, fit: DecayFit) -> Dict[str, Any]:
        entry = fit.to_dict()
        entry['verdict'] = verify_decay(fit, self.config.analysis.tolerance).to_dict()
        return entry

    def _scale(self, u0, sigma) -> Optional[float]:
        q = max(self.config.analysis.q_list)
        try:
            return initial_data_scale(u0, q, sigma)
        except DomainError:
            return None

    def run(self) -> ExperimentResult:
        config = self.config
        started = time.perf_counter()
        grid: Grid = build_grid(config.grid.dimension, config.grid.half_width, config.grid.points_per_axis)
        if grid.dimension == 1:
            self.logger.warning("n = 1 run: results are exploratory and not compared against the predicted rate")
        spec = self._timed('kernel', build_kernel, config)
        report = self._timed('validation', validate_kernel, spec, grid, KERNEL_SAMPLE_COUNT, config.seed)
        op: OperatorApplier = self._timed(
            'assemble', assemble, spec, grid, config.operator.boundary_mode, config.operator.strategy,
            config.operator.memory_budget_bytes, config.operator.workers,
        )
        u0 = initial_datum(grid, config.initial.profile, config.initial.width, config.initial.mass)
        trajectory = self._timed('evolve', evolve, op, u0, build_schedule(config))
        series = self._timed('record', record, trajectory, op, config.analysis.q_list, spec.sigma)
        fits = self._timed('fit', self._fits, series)
        self._timings['total'] = (time.perf_counter() - started) * 1000.0

        summary = _json_ready({
            'config_echo': config.to_dict(),
            'kernel_report': report.to_dict(),
            'fits': [self._fit_entry(fit) for fit in fits],
            'timings_ms': dict(self._timings),
            'exploratory': grid.dimension == 1,
            'operator': {**op.to_dict(), 'dt': trajectory.dt, 'steps': trajectory.steps},
            'initial_data_scale': self._scale(u0, spec.sigma),
            'csv': self.csv_path.name,
        })
        SummaryValidator().validate(summary)

        result = ExperimentResult(config, series, fits, report, summary, timings_ms=dict(self._timings))
        if self.write:
            self._write(series, summary)
            result.csv_path, result.summary_path = self.csv_path, self.summary_path
        return result

    @staticmethod
    def _staging(path: Path) -> Path:
        return path.with_name(path.name + '.partial')

    def _write(self, series: DecaySeries, summary: Dict[str, Any]) -> None:
        self.csv_path.parent.mkdir(parents=True, exist_ok=True)
        csv_staging, summary_staging = self._staging(self.csv_path), self._staging(self.summary_path)
        try:
            series.to_csv(csv_staging)
            with open(summary_staging, 'w', encoding='utf-8') as f:
                json.dump(summary, f, indent=2, sort_keys=False)
                f.write('\n')
            csv_staging.replace(self.csv_path)
            summary_staging.replace(self.summary_path)
        except Exception:
            self.cleanup()
            raise
        self.logger.info("Wrote %s and %s", self.csv_path, self.summary_path)

    def cleanup(self) -> None:
        """Remove staging files of this run; outputs of earlier runs are left alone."""
        for path in (self.csv_path, self.summary_path):
            staging = self._staging(path)
            if staging.exists():
                staging.unlink()
                self.logger.info("Removed partial output %s", staging)


def run_experiment(config: ExperimentConfig, write: bool = True) -> ExperimentResult:
    """
    Run one experiment end to end.

    Raises
    ------
    FracDecayError
        Any module error; partial outputs are removed first
    """
    runner = ExperimentRunner(config, write=write)
    logger.info("Starting run '%s' (%s kernel, n=%d, M=%d)", config.output.name, config.kernel.family,
                config.grid.dimension, config.grid.points_per_axis)
    try:
        return runner.run()
    except FracDecayError:
        logger.error("Run '%s' failed", config.output.name)
        if write:
            runner.cleanup()
        raise
