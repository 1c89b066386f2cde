"""
Explicit time-stepping schemes for du/dt = L u.

Schemes act on flat value arrays through a right-hand side callable so the
operator's apply strategy is used unchanged inside every stage.
"""

from abc import ABC, abstractmethod
from typing import Callable

import numpy as np

from fracdecay.registry import Registry

RightHandSide = Callable[[np.ndarray], np.ndarray]


class TimeScheme(ABC):
    """One explicit step of size dt."""
    name: str = ''
    stages: int = 1

    @abstractmethod
    def step(self, rhs: RightHandSide, u: np.ndarray, dt: float) -> np.ndarray:
        pass


class EulerScheme(TimeScheme):
    """u + dt L u; a convex combination of neighbours when dt max D <= 1."""
    name = 'euler'

    def step(self, rhs, u, dt):
        return u + dt * rhs(u)


class RK4Scheme(TimeScheme):
    """Classical four-stage Runge-Kutta."""
    name = 'rk4'
    stages = 4

    def step(self, rhs, u, dt):
        k1 = rhs(u)
        k2 = rhs(u + 0.5 * dt * k1)
        k3 = rhs(u + 0.5 * dt * k2)
        k4 = rhs(u + dt * k3)
        return u + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


TIME_SCHEMES: Registry = Registry('time scheme')
TIME_SCHEMES.register(EulerScheme.name, EulerScheme, aliases=['forward_euler'])
TIME_SCHEMES.register(RK4Scheme.name, RK4Scheme, aliases=['runge_kutta'])


def get_scheme(name: str) -> TimeScheme:
    return TIME_SCHEMES.create(name)
