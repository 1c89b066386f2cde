import numpy as np
import pytest

from fracdecay.exceptions import UnsupportedOperationError
from fracdecay.kernel.families import (
    KERNEL_FAMILIES, ball_volume, bump, capped_tail, get_family, modulation_profile, sphere_surface,
)
from fracdecay.kernel.spec import KernelSpec


class TestGeometry:
    @pytest.mark.parametrize("dimension, expected", [(1, 2.0), (2, 2.0 * np.pi), (3, 4.0 * np.pi)])
    def test_sphere_surface(self, dimension, expected):
        assert sphere_surface(dimension) == pytest.approx(expected, rel=1e-14)

    def test_ball_volume(self):
        assert ball_volume(3, 2.0) == pytest.approx(4.0 / 3.0 * np.pi * 8.0, rel=1e-14)


class TestProfiles:
    def test_bump_support(self):
        values = bump(np.array([-1.5, -1.0, 0.0, 0.5, 1.0]))
        assert values[0] == 0.0 and values[1] == 0.0 and values[4] == 0.0
        assert values[2] == 1.0
        assert values[3] == pytest.approx(np.exp(1.0 - 1.0 / 0.75))

    def test_capped_tail(self):
        r = np.array([0.0, 0.5, 1.0, 2.0])
        np.testing.assert_allclose(capped_tail(r, 1, 0.5, 1.0, 1.0), [1.0, 1.0, 1.0, 0.25])

    def test_modulation_profile_is_odd_and_bounded(self):
        x = np.random.default_rng(0).normal(scale=10.0, size=(1000, 2))
        g = modulation_profile(x)
        np.testing.assert_array_equal(modulation_profile(-x), -g)
        assert np.all(np.abs(g) <= 1.0)

    def test_modulation_profile_saturates_far_out(self):
        g = modulation_profile(np.array([[100.0, 100.0], [-100.0, -100.0]]))
        np.testing.assert_array_equal(g, [1.0, -1.0])


class TestFamilyRegistry:
    def test_names(self):
        assert KERNEL_FAMILIES.names() == ['compact_smooth', 'custom', 'fractional_tail', 'nonconvolution_fractional']

    def test_aliases(self):
        assert get_family('compact') is get_family('compact_smooth')
        assert get_family('nonconvolution').name == 'nonconvolution_fractional'

    def test_convolution_flags(self):
        assert get_family('fractional_tail').is_convolution
        assert get_family('compact_smooth').is_convolution
        assert not get_family('nonconvolution_fractional').is_convolution
        assert not get_family('custom').is_convolution


class TestFamilyMass:
    def test_fractional_tail_mass_1d(self):
        # 2 (1 + integral of r^-2 over r > 1)
        spec = KernelSpec('fractional_tail', sigma=0.5, c1=1.0, cap=1.0)
        assert spec.implementation.mass(spec, 1) == pytest.approx(4.0, rel=1e-14)

    def test_fractional_tail_exterior_beyond_cap(self):
        spec = KernelSpec('fractional_tail', sigma=0.5)
        assert spec.implementation.exterior_bound(spec, 1, 5.0) == pytest.approx(2.0 / 5.0, rel=1e-14)

    def test_fractional_tail_exterior_inside_cap(self):
        spec = KernelSpec('fractional_tail', sigma=0.5)
        # cap region (0.5, 1) plus the tail beyond 1
        assert spec.implementation.exterior_bound(spec, 1, 0.5) == pytest.approx(1.0 + 2.0, rel=1e-14)

    def test_compact_mass_scales_with_cap(self):
        one = KernelSpec('compact_smooth', sigma=None, cap=1.0)
        three = KernelSpec('compact_smooth', sigma=None, cap=3.0)
        assert three.implementation.mass(three, 2) == pytest.approx(3.0 * one.implementation.mass(one, 2))

    def test_nonconvolution_has_no_mass(self):
        spec = KernelSpec('nonconvolution_fractional', sigma=0.5, modulation=0.3)
        with pytest.raises(UnsupportedOperationError):
            spec.implementation.mass(spec, 2)
        with pytest.raises(UnsupportedOperationError):
            spec.implementation.profile(spec, np.ones(3), 2)

    def test_custom_exterior_bound_without_sigma(self, unit_kernel):
        assert unit_kernel.implementation.exterior_bound(unit_kernel, 1, 10.0) == 0.0

    def test_support_radius(self):
        compact = KernelSpec('compact_smooth', sigma=None, radius=2.0)
        assert compact.implementation.support_radius(compact) == 2.0
        spec = KernelSpec('fractional_tail')
        assert spec.implementation.support_radius(spec) is None
