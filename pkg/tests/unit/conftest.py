import pytest

from fracdecay.operator.applier import assemble


@pytest.fixture
def hand_operator(unit_kernel, hand_grid):
    """Conservative dense operator of J = 1 on the three-cell grid."""
    return assemble(unit_kernel, hand_grid, 'conservative', 'dense')


@pytest.fixture(scope="session")
def small_operator(tail_kernel_2d, small_grid):
    """Conservative FFT operator of the unit-mass tail kernel on a 32x32 grid."""
    return assemble(tail_kernel_2d, small_grid, 'conservative', 'fft_convolution')
