"""
Parameter Sweeps

One experiment per value of sigma, q or kernel_family; the fitted slopes
are collected in <directory>/<name>_sweep_<axis>.csv. A failing run is
recorded in the table and the sweep continues.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

import pandas as pd

from fracdecay.cli.config import ExperimentConfig
from fracdecay.cli.experiment import run_experiment
from fracdecay.decay.series import FLOAT_FORMAT
from fracdecay.exceptions import ConfigurationError, FracDecayError

logger = logging.getLogger(__name__)

SWEEP_AXES = ('sigma', 'q', 'kernel_family')
TABLE_COLUMNS = ['value', 'slope', 'theoretical_exponent', 'relative_error', 'r_squared', 'status']


@dataclass
class SweepResult:
    axis: str
    table: pd.DataFrame
    path: Path


def _value_label(value: Any) -> str:
    return value if isinstance(value, str) else f"{float(value):.17g}"


def sweep_configs(config: ExperimentConfig, axis: str, values: Sequence[Any]) -> List[Tuple[Any, ExperimentConfig]]:
    """
    One validated config per value; all are built before any run starts.

    Raises
    ------
    ConfigurationError
        Unknown axis, empty values or an illegal value
    """
    if axis not in SWEEP_AXES:
        raise ConfigurationError(f"Unknown sweep axis '{axis}'. Available: {', '.join(SWEEP_AXES)}",
                                 key='axis', constraint='one of ' + ', '.join(SWEEP_AXES))
    if not values:
        raise ConfigurationError("Sweep needs at least one value", key='values', constraint='nonempty')
    configs = []
    for value in values:
        name = f"{config.output.name}_{axis}_{_value_label(value)}"
        if axis == 'sigma':
            overrides = {'kernel.sigma': float(value)}
        elif axis == 'q':
            overrides = {'analysis.q_list': [float(value)]}
        else:
            overrides = {'kernel.family': str(value)}
        configs.append((value, config.replace(**overrides, **{'output.name': name})))
    return configs


def _run_one(item: Tuple[Any, ExperimentConfig]) -> Dict[str, Any]:
    value, config = item
    row = {'value': value, 'slope': None, 'theoretical_exponent': None, 'relative_error': None,
           'r_squared': None, 'status': 'ok'}
    try:
        result = run_experiment(config)
    except FracDecayError as e:
        logger.warning("Sweep run %s failed: %s", config.output.name, e)
        row['status'] = f"{type(e).__name__}: {e}"
        return row
    fit = result.fits[0]
    row.update(slope=fit.slope, theoretical_exponent=fit.theoretical_exponent,
               relative_error=fit.relative_error, r_squared=fit.r_squared)
    return row


def sweep(config: ExperimentConfig, axis: str, values: Sequence[Any], jobs: int = 1) -> SweepResult:
    """
    Run the experiment for every value and write the summary table.

    Parameters
    ----------
    config : ExperimentConfig
        Base configuration
    axis : str
        sigma, q or kernel_family
    values : sequence
    jobs : int
        Worker processes; runs are independent
    """
    items = sweep_configs(config, axis, values)
    logger.info("Sweeping %s over %d values with %d job(s)", axis, len(items), jobs)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run_one, items))
    else:
        rows = [_run_one(item) for item in items]

    table = pd.DataFrame(rows, columns=TABLE_COLUMNS)
    path = Path(config.output.directory) / f"{config.output.name}_sweep_{axis}.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep='', lineterminator='\n')
    logger.info("Wrote sweep table %s", path)
    return SweepResult(axis, table, path)
