"""
Lattice package: grids, fields and field generators.
"""

from fracdecay.lattice.grid import Grid, Field, build_grid, sample_function
from fracdecay.lattice.generators import (
    TestProfile, DatumProfile, random_test_field, initial_datum, interior_mask, BOUNDARY_BAND,
)

__all__ = [
    'Grid',
    'Field',
    'build_grid',
    'sample_function',
    'TestProfile',
    'DatumProfile',
    'random_test_field',
    'initial_datum',
    'interior_mask',
    'BOUNDARY_BAND',
]
