"""
Integrator package: explicit time stepping under the positivity-safe step bound.

Module Organization
-------------------
- schedule: TimeSchedule, Trajectory
- schemes: euler and rk4 schemes and their registry
- evolve: max_stable_dt, step, evolve
"""

from fracdecay.integrator.evolve import evolve, max_stable_dt, step
from fracdecay.integrator.schedule import TimeSchedule, Trajectory, constant_trajectory
from fracdecay.integrator.schemes import TIME_SCHEMES, EulerScheme, RK4Scheme, TimeScheme, get_scheme

__all__ = [
    'evolve',
    'max_stable_dt',
    'step',
    'TimeSchedule',
    'Trajectory',
    'constant_trajectory',
    'TIME_SCHEMES',
    'EulerScheme',
    'RK4Scheme',
    'TimeScheme',
    'get_scheme',
]
