import pytest

from fracdecay.cli.config import build_config


def fast_values(directory, **overrides):
    """A 32x32 conservative run that finishes in well under a second."""
    values = {
        'grid.dimension': 2,
        'grid.half_width': 10.0,
        'grid.points_per_axis': 32,
        'operator.boundary_mode': 'conservative',
        'time.t_end': 5.0,
        'time.sample_count': 10,
        'time.first_sample': 0.5,
        'analysis.q_list': [2.0],
        'output.directory': str(directory),
        'output.name': 'fast',
    }
    values.update(overrides)
    return values


@pytest.fixture
def fast_config(tmp_path):
    return build_config(fast_values(tmp_path / "results"))


@pytest.fixture
def fast_config_file(tmp_path):
    lines = [f"{key} = {', '.join(map(str, value)) if isinstance(value, list) else value}"
             for key, value in fast_values(tmp_path / "results").items()]
    path = tmp_path / "fast.cfg"
    path.write_text("# fast run\n" + "\n".join(lines) + "\n", encoding='utf-8')
    return path


@pytest.fixture
def make_config(tmp_path):
    """Fast config with dotted-key overrides, writing under tmp_path/<subdir>."""
    def _make(subdir='results', **overrides):
        return build_config(fast_values(tmp_path / subdir, **overrides))
    return _make
