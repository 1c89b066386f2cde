import json

import numpy as np
import pandas as pd
import pytest

from fracdecay.cli import experiment
from fracdecay.cli import main as main_module
from fracdecay.cli.main import (
    EXIT_CONFIG_ERROR, EXIT_OK, EXIT_RUNTIME_ERROR, EXIT_VERIFICATION_FAILED, build_parser, main,
)
from fracdecay.cli.verification import CheckResult, VerificationReport
from fracdecay.decay.series import DecaySeries


@pytest.fixture
def power_law_csv(tmp_path):
    t = np.geomspace(0.2, 20.0, 40)
    frame = pd.DataFrame({'t': t, 'mass': 1.0, 'l1': 1.0, 'linf': 1.0 / t, 'lq_2': 1.0 / t, 'energy_q2': np.nan})
    path = tmp_path / "series.csv"
    DecaySeries([2.0], frame).to_csv(path)
    return path


class TestParser:
    def test_verbs(self):
        args = build_parser().parse_args(['sweep', 'a.cfg', '--axis', 'q', '--values', '2,3'])
        assert args.verb == 'sweep'
        assert args.jobs == 1

    def test_unknown_verb(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(['plot'])


class TestMain:
    def test_run(self, fast_config_file, tmp_path, capsys):
        assert main(['--logdir', str(tmp_path / "logs"), 'run', str(fast_config_file)]) == EXIT_OK
        assert (tmp_path / "results" / "fast.csv").exists()
        assert "q=2" in capsys.readouterr().out
        assert (tmp_path / "logs" / "fracdecay.log").exists()

    def test_bad_config(self, tmp_path, capsys):
        path = tmp_path / "bad.cfg"
        path.write_text("kernel.sigma = 1.5\n")
        assert main(['--logdir', str(tmp_path / "logs"), 'run', str(path)]) == EXIT_CONFIG_ERROR
        assert "sigma must lie in (0,1), got 1.5" in capsys.readouterr().err

    def test_missing_config(self, tmp_path):
        assert main(['--logdir', str(tmp_path / "logs"), 'run', str(tmp_path / "none.cfg")]) == EXIT_CONFIG_ERROR

    def test_fit_without_theory(self, power_law_csv, tmp_path, capsys):
        assert main(['--logdir', str(tmp_path / "logs"), 'fit', str(power_law_csv)]) == EXIT_OK
        fit = json.loads(capsys.readouterr().out)
        assert fit['slope'] == pytest.approx(-1.0)
        assert fit['theoretical_exponent'] is None

    def test_fit_against_theory(self, power_law_csv, tmp_path):
        argv = ['--logdir', str(tmp_path / "logs"), 'fit', str(power_law_csv), '--dimension', '2']
        assert main(argv + ['--sigma', '0.5']) == EXIT_OK
        assert main(argv + ['--sigma', '0.25']) == EXIT_VERIFICATION_FAILED

    def test_fit_too_short(self, tmp_path):
        path = tmp_path / "short.csv"
        path.write_text("t,mass,l1,linf,lq_2,energy_q2\n1,1,1,1,1,\n2,1,1,0.5,0.5,\n")
        assert main(['--logdir', str(tmp_path / "logs"), 'fit', str(path)]) == EXIT_RUNTIME_ERROR

    def test_fit_missing_csv(self, tmp_path, capsys):
        assert main(['--logdir', str(tmp_path / "logs"), 'fit', str(tmp_path / "absent.csv")]) == EXIT_RUNTIME_ERROR
        assert "I/O error" in capsys.readouterr().err

    def test_run_write_failure(self, fast_config_file, tmp_path, monkeypatch, capsys):
        def broken_dump(*args, **kwargs):
            raise OSError("disk full")

        monkeypatch.setattr(experiment.json, 'dump', broken_dump)
        assert main(['--logdir', str(tmp_path / "logs"), 'run', str(fast_config_file)]) == EXIT_RUNTIME_ERROR
        assert "disk full" in capsys.readouterr().err

    def test_sweep_bad_values(self, fast_config_file, tmp_path):
        argv = ['--logdir', str(tmp_path / "logs"), 'sweep', str(fast_config_file), '--axis', 'sigma',
                '--values', '0.5,abc']
        assert main(argv) == EXIT_CONFIG_ERROR

    @pytest.mark.parametrize("passed, code", [(True, EXIT_OK), (False, EXIT_VERIFICATION_FAILED)])
    def test_verify_exit_code(self, monkeypatch, tmp_path, passed, code):
        report = VerificationReport('decay', [CheckResult('stub', 'decay', passed, 1.0 if passed else -1.0)])
        monkeypatch.setattr(main_module, 'verify_suite', lambda selector: report)
        out = tmp_path / "report.json"
        assert main(['--logdir', str(tmp_path / "logs"), 'verify', 'decay', '--report', str(out)]) == code
        assert json.loads(out.read_text())['passed'] is passed
