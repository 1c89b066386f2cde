"""
Command-line layer: configuration, experiment runs, sweeps and verification suites.
"""

from fracdecay.cli.config import ExperimentConfig, build_config, load_config, parse_config, serialize_config
from fracdecay.cli.experiment import ExperimentResult, ExperimentRunner, build_kernel, run_experiment
from fracdecay.cli.summary import SummaryValidator
from fracdecay.cli.sweep import SweepResult, sweep
from fracdecay.cli.verification import VerificationReport, verify_suite

__all__ = [
    'ExperimentConfig',
    'build_config',
    'load_config',
    'parse_config',
    'serialize_config',
    'ExperimentResult',
    'ExperimentRunner',
    'build_kernel',
    'run_experiment',
    'SummaryValidator',
    'SweepResult',
    'sweep',
    'VerificationReport',
    'verify_suite',
]
