"""
Kernel package: kernel catalog, hypothesis checks and exterior mass.

Module Organization
-------------------
- families: family strategies (compact_smooth, fractional_tail,
  nonconvolution_fractional, custom) and their registry
- spec: KernelSpec, KernelReport, evaluate
- validation: validate_kernel, tail_mass, normalize_mass
"""

from fracdecay.kernel.families import (
    KERNEL_FAMILIES, KernelFamily, get_family, sphere_surface, ball_volume, bump, modulation_profile,
)
from fracdecay.kernel.spec import KernelSpec, KernelReport, evaluate
from fracdecay.kernel.validation import (
    validate_kernel, tail_mass, tail_mass_field, normalize_mass, kernel_mass,
    exterior_tail_bound, lattice_ball_mass, shell_radius, MASS_TOLERANCE,
)

__all__ = [
    'KERNEL_FAMILIES',
    'KernelFamily',
    'get_family',
    'sphere_surface',
    'ball_volume',
    'bump',
    'modulation_profile',
    'KernelSpec',
    'KernelReport',
    'evaluate',
    'validate_kernel',
    'tail_mass',
    'tail_mass_field',
    'normalize_mass',
    'kernel_mass',
    'exterior_tail_bound',
    'lattice_ball_mass',
    'shell_radius',
    'MASS_TOLERANCE',
]
