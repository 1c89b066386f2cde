import pytest

from fracdecay.lattice.grid import build_grid
from fracdecay.operator.applier import assemble


@pytest.fixture(scope="session")
def fine_grid():
    """h = 0.3125, fine enough for a radius-1 mollifier."""
    return build_grid(2, 10.0, 64)


@pytest.fixture(scope="session")
def fine_operator(tail_kernel_2d, fine_grid):
    return assemble(tail_kernel_2d, fine_grid, 'conservative', 'fft_convolution')
