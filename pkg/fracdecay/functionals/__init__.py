"""
Functionals package: norms, energies, seminorms, mollification and the
inequality certificates built on them. Every function is pure.
"""

from fracdecay.functionals.energy import dissipation_identity_residual, energy, pairing_dissipation
from fracdecay.functionals.inequalities import (
    InterpolationReport, critical_exponent, interpolation_check, interpolation_exponents,
    mollified_energy_ratio, sobolev_ratio,
)
from fracdecay.functionals.mollifier import Decomposition, MollifierSpec, build_mollifier, mollifier_decompose
from fracdecay.functionals.norms import lq_norm, lq_power, signed_power, total_mass
from fracdecay.functionals.pairing import PairingConstant, PairingMethod, pairing_check, pairing_constant
from fracdecay.functionals.seminorm import fractional_seminorm, seminorm_power

__all__ = [
    'dissipation_identity_residual',
    'energy',
    'pairing_dissipation',
    'InterpolationReport',
    'critical_exponent',
    'interpolation_check',
    'interpolation_exponents',
    'mollified_energy_ratio',
    'sobolev_ratio',
    'Decomposition',
    'MollifierSpec',
    'build_mollifier',
    'mollifier_decompose',
    'lq_norm',
    'lq_power',
    'signed_power',
    'total_mass',
    'PairingConstant',
    'PairingMethod',
    'pairing_check',
    'pairing_constant',
    'fractional_seminorm',
    'seminorm_power',
]
