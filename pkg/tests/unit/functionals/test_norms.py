import unittest

import numpy as np
import pytest

from fracdecay.exceptions import DomainError
from fracdecay.functionals.norms import lq_norm, lq_power, signed_power, total_mass
from fracdecay.lattice.grid import Field, build_grid


class TestLqNorm:
    def test_unit_spacing(self):
        assert lq_norm(Field(build_grid(1, 1.0, 2), [3.0, 4.0]), 2.0) == pytest.approx(5.0)

    def test_half_spacing(self):
        assert lq_norm(Field(build_grid(1, 0.5, 2), [3.0, 4.0]), 2.0) == pytest.approx(np.sqrt(12.5))

    def test_sup_norm(self):
        assert lq_norm(Field(build_grid(1, 1.0, 2), [3.0, -4.0]), np.inf) == 4.0

    def test_l1_is_absolute_mass(self):
        assert lq_norm(Field(build_grid(1, 1.0, 2), [3.0, -4.0]), 1.0) == 7.0

    def test_power_matches_norm(self):
        u = Field(build_grid(2, 3.0, 6), np.random.default_rng(1).normal(size=36))
        assert lq_power(u, 3.0) == pytest.approx(lq_norm(u, 3.0) ** 3, rel=1e-12)

    def test_zero_field(self):
        u = Field.zeros(build_grid(1, 1.0, 4))
        assert lq_norm(u, 2.0) == 0.0
        assert lq_norm(u, np.inf) == 0.0

    @pytest.mark.parametrize("q", [0.5, 0.0, -1.0, float('nan')])
    def test_exponent_below_one(self, q):
        u = Field.zeros(build_grid(1, 1.0, 2))
        with pytest.raises(DomainError):
            lq_norm(u, q)
        with pytest.raises(DomainError):
            lq_power(u, q)


class TestMass(unittest.TestCase):
    def setUp(self):
        self.grid = build_grid(2, 2.0, 8)
        rng = np.random.default_rng(3)
        self.u = Field(self.grid, rng.normal(size=64))
        self.v = Field(self.grid, rng.normal(size=64))

    def test_total_mass(self):
        self.assertEqual(total_mass(Field(build_grid(1, 1.0, 2), [3.0, -1.0])), 2.0)

    def test_linear(self):
        expected = 2.0 * total_mass(self.u) - total_mass(self.v)
        self.assertAlmostEqual(total_mass(self.u * 2.0 - self.v), expected, delta=1e-12)

    def test_cell_volume_scaling(self):
        ones = Field(self.grid, np.ones(64))
        self.assertAlmostEqual(total_mass(ones), 16.0, delta=1e-12)


class TestSignedPower(unittest.TestCase):
    def test_odd_extension(self):
        np.testing.assert_allclose(signed_power(np.array([-4.0, 0.0, 4.0]), 0.5), [-2.0, 0.0, 2.0])

    def test_first_power_is_identity(self):
        values = np.array([-1.5, 0.0, 2.5])
        np.testing.assert_array_equal(signed_power(values, 1.0), values)
