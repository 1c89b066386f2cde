"""
Decay Series Module

Per-snapshot diagnostics of a trajectory held in a pandas DataFrame with
columns t, mass, l1, linf, lq_<q> for each q, energy_q2.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from fracdecay.exceptions import DomainError, InsufficientDataError
from fracdecay.functionals.energy import energy
from fracdecay.functionals.norms import lq_norm, total_mass
from fracdecay.integrator.schedule import Trajectory
from fracdecay.operator.applier import OperatorApplier

logger = logging.getLogger(__name__)

BASE_COLUMNS = ['t', 'mass', 'l1', 'linf']
ENERGY_COLUMN = 'energy_q2'
FLOAT_FORMAT = '%.17g'


def lq_column(q: float) -> str:
    """Column name lq_<q> with q at full precision."""
    return f"lq_{float(q):.17g}"


@dataclass
class DecaySeries:
    """
    Sampled diagnostics over time.

    Attributes
    ----------
    q_list : list of float
    frame : pd.DataFrame
        One row per snapshot, times strictly ascending
    dimension : int, optional
    sigma : float, optional
        None for compact kernels or unknown
    metadata : dict
        Grid and kernel description
    """
    q_list: List[float]
    frame: pd.DataFrame
    dimension: Optional[int] = None
    sigma: Optional[float] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        t = self.frame['t'].to_numpy()
        if np.any(np.diff(t) <= 0):
            raise DomainError("DecaySeries times must be strictly ascending")

    @property
    def columns(self) -> List[str]:
        return BASE_COLUMNS + [lq_column(q) for q in self.q_list] + [ENERGY_COLUMN]

    @property
    def times(self) -> np.ndarray:
        return self.frame['t'].to_numpy()

    def norm_column(self, q: float) -> str:
        """Column holding ||u||_q."""
        if np.isinf(q):
            return 'linf'
        name = lq_column(q)
        if name in self.frame.columns:
            return name
        if q == 1.0:
            return 'l1'
        raise InsufficientDataError(f"Series has no column for q={q}; recorded: {self.q_list}")

    def norms(self, q: float) -> np.ndarray:
        return self.frame[self.norm_column(q)].to_numpy()

    def to_csv(self, path: Union[str, Path]) -> None:
        """Full-precision CSV with a blank energy column when energy was not recorded."""
        self.frame[self.columns].to_csv(path, index=False, float_format=FLOAT_FORMAT,
                                        na_rep='', lineterminator='\n')

    @classmethod
    def from_csv(cls, path: Union[str, Path], dimension: Optional[int] = None,
                 sigma: Optional[float] = None) -> 'DecaySeries':
        frame = pd.read_csv(path, float_precision='round_trip')
        missing = [c for c in BASE_COLUMNS if c not in frame.columns]
        if missing:
            raise InsufficientDataError(f"{path} lacks columns {missing}")
        q_list = [float(c[len('lq_'):]) for c in frame.columns if c.startswith('lq_')]
        if ENERGY_COLUMN not in frame.columns:
            frame[ENERGY_COLUMN] = np.nan
        return cls(q_list, frame, dimension, sigma, {'source': str(path)})


def record(trajectory: Trajectory, op: Optional[OperatorApplier], q_list: Sequence[float],
           sigma: Optional[float] = None) -> DecaySeries:
    """
    Tabulate mass and norms of every snapshot.

    energy_q2 is filled only when a conservative operator is supplied.
    """
    q_list = [float(q) for q in q_list]
    if not q_list:
        raise DomainError("record needs a nonempty q_list")
    with_energy = op is not None and op.is_conservative
    rows = []
    for t, u in trajectory.samples:
        row = {'t': t, 'mass': total_mass(u), 'l1': lq_norm(u, 1.0), 'linf': lq_norm(u, np.inf)}
        for q in q_list:
            row[lq_column(q)] = lq_norm(u, q)
        row[ENERGY_COLUMN] = energy(op, u, 2.0) if with_energy else np.nan
        rows.append(row)
    grid = trajectory.grid
    columns = BASE_COLUMNS + [lq_column(q) for q in q_list] + [ENERGY_COLUMN]
    frame = pd.DataFrame(rows, columns=columns)
    metadata = {'grid': grid.to_dict()}
    if op is not None:
        metadata['kernel'] = op.spec.to_dict()
        metadata['boundary_mode'] = op.boundary_mode.value
    logger.debug("Recorded %d rows for q=%s", len(frame), q_list)
    return DecaySeries(q_list, frame, grid.dimension, sigma, metadata)
