import numpy as np
import pytest

from fracdecay.exceptions import DegenerateKernelError, DomainError, GridMismatchError, InstabilityError
from fracdecay.functionals.norms import lq_norm, total_mass
from fracdecay.integrator.evolve import evolve, max_stable_dt, step
from fracdecay.integrator.schedule import TimeSchedule
from fracdecay.kernel.spec import KernelSpec
from fracdecay.lattice.generators import initial_datum
from fracdecay.lattice.grid import Field, Grid, build_grid
from fracdecay.operator.applier import assemble


class TestMaxStableDt:
    def test_hand_value(self, hand_operator):
        assert max_stable_dt(hand_operator, 'euler', 0.9) == pytest.approx(0.45)

    def test_rk4_shares_bound(self, hand_operator):
        assert max_stable_dt(hand_operator, 'rk4', 0.9) == max_stable_dt(hand_operator, 'euler', 0.9)

    def test_linear_in_safety(self, hand_operator):
        assert max_stable_dt(hand_operator, 'euler', 0.5) == pytest.approx(0.5 * max_stable_dt(hand_operator, 'euler', 1.0))

    def test_amplitude_doubling_halves_dt(self, hand_grid):
        one = assemble(KernelSpec('custom', sigma=None, function=lambda x, y: np.ones(len(x))), hand_grid, 'conservative')
        two = assemble(KernelSpec('custom', sigma=None, function=lambda x, y: 2.0 * np.ones(len(x))), hand_grid,
                       'conservative')
        assert max_stable_dt(two) == pytest.approx(0.5 * max_stable_dt(one))

    @pytest.mark.parametrize("safety", [0.0, 1.1])
    def test_safety_range(self, hand_operator, safety):
        with pytest.raises(DomainError):
            max_stable_dt(hand_operator, 'euler', safety)

    def test_degenerate_kernel(self, hand_grid):
        zero = KernelSpec('custom', sigma=None, function=lambda x, y: np.zeros(len(x)))
        op = assemble(zero, hand_grid, 'conservative')
        with pytest.raises(DegenerateKernelError):
            max_stable_dt(op)


class TestStep:
    def test_hand_euler_step(self, hand_operator, hand_grid):
        result = step(hand_operator, Field(hand_grid, [0.0, 1.0, 0.0]), 0.25, 'euler')
        np.testing.assert_allclose(result.values, [0.25, 0.5, 0.25], rtol=0, atol=1e-15)

    def test_zero_field(self, hand_operator, hand_grid):
        assert not step(hand_operator, Field.zeros(hand_grid), 0.25, 'rk4').values.any()

    def test_mass_preserved(self, small_operator, small_grid):
        u = initial_datum(small_grid, 'gaussian', 2.0)
        dt = max_stable_dt(small_operator)
        assert total_mass(step(small_operator, u, dt)) == pytest.approx(total_mass(u), rel=1e-12)

    def test_instability(self, hand_operator, hand_grid):
        with np.errstate(over='ignore', invalid='ignore'):
            with pytest.raises(InstabilityError) as info:
                step(hand_operator, Field(hand_grid, [0.0, 1e300, 0.0]), 1e300)
        assert info.value.time == 1e300

    def test_grid_mismatch(self, hand_operator):
        with pytest.raises(GridMismatchError):
            step(hand_operator, Field.zeros(Grid(1, 3.0, 3)), 0.1)


class TestEvolve:
    @pytest.fixture(scope="class")
    def trajectory(self, small_operator, small_grid):
        u0 = initial_datum(small_grid, 'gaussian', 2.0)
        return u0, evolve(small_operator, u0, TimeSchedule.log_spaced(10.0, 15, 0.1))

    def test_lands_on_sample_times(self, trajectory):
        _, path = trajectory
        schedule = TimeSchedule.log_spaced(10.0, 15, 0.1)
        np.testing.assert_array_equal(path.times, schedule.sample_times)
        assert path.steps > 0
        assert path.dt > 0.0

    def test_zero_datum(self, small_operator, small_grid):
        path = evolve(small_operator, Field.zeros(small_grid), TimeSchedule.uniform(1.0, 4))
        assert all(not u.values.any() for u in path.fields)

    @pytest.mark.dynamics
    def test_mass_conserved(self, trajectory):
        u0, path = trajectory
        m0 = total_mass(u0)
        for u in path.fields:
            assert total_mass(u) == pytest.approx(m0, rel=1e-12)

    @pytest.mark.dynamics
    def test_positivity(self, trajectory):
        _, path = trajectory
        assert min(float(u.values.min()) for u in path.fields) >= 0.0

    @pytest.mark.dynamics
    @pytest.mark.parametrize("q", [1.0, 1.5, 2.0, 3.0, 4.0, np.inf])
    def test_norms_nonincreasing(self, trajectory, q):
        u0, path = trajectory
        norms = [lq_norm(u0, q)] + [lq_norm(u, q) for u in path.fields]
        for earlier, later in zip(norms, norms[1:]):
            assert later <= earlier * (1.0 + 1e-12)

    @pytest.mark.dynamics
    def test_absorbing_contraction(self, tail_kernel_2d):
        grid = build_grid(2, 6.0, 16)
        op = assemble(tail_kernel_2d, grid, 'absorbing')
        u0 = initial_datum(grid, 'indicator', 2.0)
        path = evolve(op, u0, TimeSchedule.uniform(5.0, 5))
        masses = [total_mass(u0)] + [total_mass(u) for u in path.fields]
        assert all(later < earlier for earlier, later in zip(masses, masses[1:]))
        assert min(float(u.values.min()) for u in path.fields) >= 0.0

    @pytest.mark.dynamics
    def test_scheme_consistency(self, tail_kernel_2d):
        grid = build_grid(2, 6.0, 12)
        op = assemble(tail_kernel_2d, grid, 'conservative')
        u0 = initial_datum(grid, 'gaussian', 1.0)
        t_end = 10.0 * max_stable_dt(op, 'euler', 0.1)
        gaps = []
        for safety in (0.1, 0.05):
            euler = evolve(op, u0, TimeSchedule(t_end, safety, 'euler'))
            rk4 = evolve(op, u0, TimeSchedule(t_end, safety, 'rk4'))
            gaps.append(float(np.abs(euler[-1][1].values - rk4[-1][1].values).max()))
        assert gaps[1] / gaps[0] == pytest.approx(0.5, rel=0.2)
