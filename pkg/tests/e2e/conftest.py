"""
Shared fixtures and configuration for end-to-end tests.
"""

import logging

import pytest

from fracdecay.cli.config import build_config

# Configure logging for tests
logging.basicConfig(level=logging.INFO, format='%(asctime)s %(levelname)s %(message)s')


ACCEPTANCE_VALUES = {
    'grid.dimension': 2,
    'grid.half_width': 40.0,
    'grid.points_per_axis': 128,
    'kernel.family': 'fractional_tail',
    'kernel.sigma': 0.5,
    'kernel.normalize': True,
    'operator.boundary_mode': 'absorbing',
    'time.scheme': 'euler',
    'time.t_end': 20.0,
    'time.sample_count': 40,
    'initial.profile': 'gaussian',
    'initial.width': 2.0,
    'initial.mass': 1.0,
    'analysis.q_list': [2.0],
    'analysis.window_fraction': 0.5,
}


@pytest.fixture(scope="session")
def results_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("e2e_results")


@pytest.fixture
def acceptance_config(results_dir):
    """Flagship n = 2 run with per-test overrides."""
    def _make(name, **overrides):
        values = dict(ACCEPTANCE_VALUES, **{'output.directory': str(results_dir), 'output.name': name})
        values.update(overrides)
        return build_config(values)
    return _make


def pytest_configure(config):
    """Add custom markers for e2e tests."""
    config.addinivalue_line("markers", "e2e: End-to-end runs of the experiment pipeline")
    config.addinivalue_line("markers", "slow: Tests that take longer than 30 seconds")
