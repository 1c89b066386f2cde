"""
Dissipation Energy Module

E_{J,q}(u) = sum_i sum_j w_ij |u_j - u_i|^q h^n over ordered pairs, and the
residual of the identity d/dt ||u||_q^q = -(q/2) sum_ij w_ij (u_j - u_i)(phi(u_j) - phi(u_i)) h^n,
phi(a) = |a|^(q-2) a, along a recorded trajectory.
"""

import logging

import numpy as np

from fracdecay.exceptions import DomainError, InsufficientDataError, UnsupportedOperationError
from fracdecay.functionals.norms import lq_power, signed_power
from fracdecay.integrator.schedule import Trajectory
from fracdecay.lattice.grid import Field
from fracdecay.operator.applier import OperatorApplier
from fracdecay.operator.pairs import pair_sum

logger = logging.getLogger(__name__)

_SPACING_TOLERANCE = 1e-9


def _require_conservative(op: OperatorApplier, operation: str) -> None:
    if not op.is_conservative:
        raise UnsupportedOperationError(
            f"{operation} uses the interior form of the operator; assemble it with "
            f"boundary_mode='conservative' (got '{op.boundary_mode.value}')",
            operation=operation,
        )


def energy(op: OperatorApplier, u: Field, q: float) -> float:
    """
    Dissipation energy E_{J,q}(u).

    Parameters
    ----------
    op : OperatorApplier
        Conservative operator
    u : Field
    q : float
        > 1

    Returns
    -------
    float
        Nonnegative energy

    Raises
    ------
    UnsupportedOperationError
        op is absorbing
    DomainError
        q <= 1
    """
    _require_conservative(op, 'energy')
    if not q > 1.0:
        raise DomainError(f"energy needs q > 1, got {q}")
    u.require_grid(op.grid)
    h_n = op.grid.cell_volume
    if q == 2.0:
        # summation by parts: sum_i u_i (Lu)_i = -E_2 / (2 h^n)
        value = -2.0 * h_n * float(np.dot(u.values, op.apply_values(u.values)))
    else:
        value = h_n * pair_sum(op.weight_blocks(), u.values,
                               lambda ui, uj: np.power(np.abs(uj - ui), q))
    return max(value, 0.0)


def pairing_dissipation(op: OperatorApplier, u: Field, q: float) -> float:
    """sum_i sum_j w_ij (u_j - u_i)(phi(u_j) - phi(u_i)) h^n with phi(a) = |a|^(q-2) a."""
    _require_conservative(op, 'pairing_dissipation')
    values = u.values
    phi = signed_power(values, q - 1.0)
    total = 0.0
    for rows, weights in op.weight_blocks():
        total += float((weights * (values[None, :] - values[rows, None])
                        * (phi[None, :] - phi[rows, None])).sum())
    return total * op.grid.cell_volume


def dissipation_identity_residual(op: OperatorApplier, trajectory: Trajectory, q: float,
                                  index: int) -> float:
    """
    |d/dt ||u||_q^q + (q/2) pairing_dissipation(u)| at snapshot index.

    The time derivative is the centered difference over the neighbouring
    snapshots, which must be equally spaced.

    Raises
    ------
    InsufficientDataError
        Fewer than 3 snapshots or index without two neighbours
    DomainError
        Uneven spacing around index, or q <= 1
    UnsupportedOperationError
        op is absorbing
    """
    _require_conservative(op, 'dissipation_identity_residual')
    if not q > 1.0:
        raise DomainError(f"dissipation identity needs q > 1, got {q}")
    samples = trajectory.samples
    if len(samples) < 3:
        raise InsufficientDataError(f"Need at least 3 snapshots, trajectory has {len(samples)}")
    if not 1 <= index <= len(samples) - 2:
        raise InsufficientDataError(
            f"Snapshot {index} needs a neighbour on each side (valid: 1..{len(samples) - 2})"
        )
    (t_prev, u_prev), (t_mid, u_mid), (t_next, u_next) = samples[index - 1:index + 2]
    if abs((t_next - t_mid) - (t_mid - t_prev)) > _SPACING_TOLERANCE * (t_next - t_prev):
        raise DomainError(
            f"Snapshots around index {index} are unevenly spaced: {t_prev}, {t_mid}, {t_next}"
        )
    derivative = (lq_power(u_next, q) - lq_power(u_prev, q)) / (t_next - t_prev)
    residual = abs(derivative + 0.5 * q * pairing_dissipation(op, u_mid, q))
    logger.debug("Dissipation residual q=%g at t=%g: %.3e", q, t_mid, residual)
    return residual
