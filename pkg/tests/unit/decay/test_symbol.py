import numpy as np
import pytest

from fracdecay.decay.symbol import discrete_symbol_deficit, symbol_exponent_fit
from fracdecay.exceptions import KernelError, UnsupportedOperationError
from fracdecay.kernel.spec import KernelSpec
from fracdecay.kernel.validation import normalize_mass
from fracdecay.lattice.grid import build_grid


@pytest.fixture(scope="module")
def wide_line():
    return build_grid(1, 40.0, 512)


class TestSymbolFit:
    def test_tail_kernel_recovers_sigma(self, wide_line):
        spec = normalize_mass(KernelSpec('fractional_tail', sigma=0.5), 1.0, 1)
        fit = symbol_exponent_fit(spec, wide_line)
        assert 0.45 <= fit.sigma_estimate <= 0.55
        assert fit.amplitude_estimate > 0.0
        assert fit.fit_window == pytest.approx((np.pi / 40.0, np.pi / 4.0))

    def test_compact_kernel_is_quadratic(self, wide_line):
        spec = normalize_mass(KernelSpec('compact_smooth', sigma=None), 1.0, 1)
        fit = symbol_exponent_fit(spec, wide_line)
        assert 0.9 <= fit.sigma_estimate <= 1.1
        assert fit.r_squared > 0.99
        assert set(fit.to_dict()) == {'sigma_estimate', 'amplitude_estimate', 'fit_window', 'r_squared'}

    def test_unnormalised_kernel(self, wide_line):
        with pytest.raises(KernelError, match="normalize_mass"):
            symbol_exponent_fit(KernelSpec('fractional_tail', sigma=0.5, c1=1.0, cap=1.0), wide_line)

    def test_nonconvolution_kernel(self, wide_line):
        with pytest.raises(UnsupportedOperationError):
            symbol_exponent_fit(KernelSpec('nonconvolution_fractional', sigma=0.5, modulation=0.2), wide_line)


class TestSymbolDeficit:
    def test_zero_frequency(self):
        spec = KernelSpec('fractional_tail', sigma=0.5)
        assert discrete_symbol_deficit(spec, build_grid(2, 5.0, 10), 0.0)[0] == 0.0

    def test_bounded_by_two(self):
        spec = KernelSpec('compact_smooth', sigma=None, radius=2.0)
        deficit = discrete_symbol_deficit(spec, build_grid(1, 10.0, 64), np.linspace(0.0, 10.0, 50))
        assert deficit.min() >= 0.0
        assert deficit.max() <= 2.0
