"""
Time schedules and trajectories.
"""

from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from fracdecay.exceptions import ConfigurationError, GridMismatchError
from fracdecay.lattice.grid import Field


@dataclass(frozen=True)
class TimeSchedule:
    """
    When to stop and when to record.

    Attributes
    ----------
    t_end : float
        Final time, > 0
    dt_safety : float
        Fraction of the positivity bound used as step, in (0, 1]
    scheme : str
        euler or rk4
    sample_times : tuple of float
        Strictly ascending snapshot times in (0, t_end]
    """
    t_end: float
    dt_safety: float = 0.9
    scheme: str = 'euler'
    sample_times: Tuple[float, ...] = ()

    def __post_init__(self):
        if not self.t_end > 0:
            raise ConfigurationError(f"t_end must be positive, got {self.t_end}",
                                     key='time.t_end', constraint='> 0')
        if not 0.0 < self.dt_safety <= 1.0:
            raise ConfigurationError(f"dt_safety must lie in (0,1], got {self.dt_safety}",
                                     key='time.dt_safety', constraint='in (0, 1]')
        times = tuple(float(t) for t in (self.sample_times or (self.t_end,)))
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ConfigurationError("sample_times must be strictly ascending", key='time.sample_times')
        if times[0] <= 0.0 or times[-1] > self.t_end:
            raise ConfigurationError(
                f"sample_times must lie in (0, {self.t_end}], got [{times[0]}, {times[-1]}]",
                key='time.sample_times',
            )
        object.__setattr__(self, 'sample_times', times)

    @classmethod
    def log_spaced(cls, t_end: float, sample_count: int = 40, first_sample: float = 0.2,
                   dt_safety: float = 0.9, scheme: str = 'euler') -> 'TimeSchedule':
        """Geometric sample times from first_sample to t_end."""
        if sample_count < 1:
            raise ConfigurationError(f"sample_count must be >= 1, got {sample_count}",
                                     key='time.sample_count', constraint='>= 1')
        if not 0.0 < first_sample < t_end:
            raise ConfigurationError(f"first_sample must lie in (0, t_end), got {first_sample}",
                                     key='time.first_sample', constraint='in (0, t_end)')
        times = np.geomspace(first_sample, t_end, sample_count) if sample_count > 1 else np.array([t_end])
        times[-1] = t_end
        return cls(t_end, dt_safety, scheme, tuple(np.unique(times)))

    @classmethod
    def uniform(cls, t_end: float, sample_count: int, dt_safety: float = 0.9,
                scheme: str = 'euler') -> 'TimeSchedule':
        """Equally spaced sample times t_end k / sample_count, k = 1..sample_count."""
        if sample_count < 1:
            raise ConfigurationError(f"sample_count must be >= 1, got {sample_count}",
                                     key='time.sample_count', constraint='>= 1')
        times = t_end * np.arange(1, sample_count + 1) / sample_count
        return cls(t_end, dt_safety, scheme, tuple(times))


@dataclass(frozen=True)
class Trajectory:
    """
    Recorded solution path.

    Attributes
    ----------
    initial : Field
        u at t = 0
    samples : list of (t, Field)
        Snapshots at the schedule's sample times
    dt : float
        Nominal step used
    steps : int
        Number of steps taken
    """
    initial: Field
    samples: List[Tuple[float, Field]] = field(default_factory=list)
    dt: Optional[float] = None
    steps: int = 0

    def __post_init__(self):
        grid = self.initial.grid
        for t, u in self.samples:
            if u.grid != grid:
                raise GridMismatchError(f"Snapshot at t={t} lives on a different grid")
        object.__setattr__(self, 'samples', list(self.samples))

    @property
    def grid(self):
        return self.initial.grid

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.samples])

    @property
    def fields(self) -> List[Field]:
        return [u for _, u in self.samples]

    def with_initial(self) -> List[Tuple[float, Field]]:
        """Snapshots preceded by (0, initial)."""
        return [(0.0, self.initial)] + list(self.samples)

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> Iterator[Tuple[float, Field]]:
        return iter(self.samples)

    def __getitem__(self, index: int) -> Tuple[float, Field]:
        return self.samples[index]


def constant_trajectory(u: Field, times: Sequence[float]) -> Trajectory:
    """Trajectory holding u at every time (a stationary solution)."""
    return Trajectory(u, [(float(t), u) for t in times])
