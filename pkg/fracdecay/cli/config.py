"""
Experiment Configuration Module

Flat ``key = value`` documents with dotted lowercase keys (kernel.sigma = 0.5),
``#`` comments and booleans true/false. Parsing goes through configparser with an
implicit section header; every key is checked against a declarative table and
the first violated constraint raises ConfigurationError naming the key.
"""

import configparser
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from fracdecay.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

_SECTION = 'experiment'

FAMILIES = ('fractional_tail', 'compact_smooth', 'nonconvolution_fractional')
STRATEGIES = ('auto', 'dense', 'on_the_fly', 'fft_convolution')


@dataclass(frozen=True)
class ConfigKey:
    """One row of the key table."""
    name: str
    kind: type
    default: Any
    constraint: str = ''
    check: Optional[Callable[[Any], bool]] = None
    choices: Tuple[str, ...] = ()


def _positive(value) -> bool:
    return value > 0


KEYS: List[ConfigKey] = [
    ConfigKey('grid.dimension', int, 2, 'must be 1, 2 or 3', lambda v: v in (1, 2, 3)),
    ConfigKey('grid.half_width', float, 40.0, 'must be positive', _positive),
    ConfigKey('grid.points_per_axis', int, 128, 'must be an even integer >= 2', lambda v: v >= 2 and v % 2 == 0),
    ConfigKey('kernel.family', str, 'fractional_tail', 'must be one of ' + ', '.join(FAMILIES), choices=FAMILIES),
    ConfigKey('kernel.sigma', float, 0.5, 'must lie in (0,1)', lambda v: 0.0 < v < 1.0),
    ConfigKey('kernel.c1', float, 1.0, 'must be positive', _positive),
    ConfigKey('kernel.cap', float, 1.0, 'must be positive', _positive),
    ConfigKey('kernel.radius', float, 1.0, 'must be positive', _positive),
    ConfigKey('kernel.modulation', float, 0.0, 'must lie in [0,1)', lambda v: 0.0 <= v < 1.0),
    ConfigKey('kernel.normalize', bool, True),
    ConfigKey('kernel.mass', float, 1.0, 'must be positive', _positive),
    ConfigKey('operator.boundary_mode', str, 'absorbing', 'must be conservative or absorbing',
              choices=('conservative', 'absorbing')),
    ConfigKey('operator.strategy', str, 'auto', 'must be one of ' + ', '.join(STRATEGIES), choices=STRATEGIES),
    ConfigKey('operator.memory_budget_mb', float, 1024.0, 'must be positive', _positive),
    ConfigKey('operator.workers', int, 1, 'must be >= 1', lambda v: v >= 1),
    ConfigKey('time.scheme', str, 'euler', 'must be euler or rk4', choices=('euler', 'rk4')),
    ConfigKey('time.dt_safety', float, 0.9, 'must lie in (0,1]', lambda v: 0.0 < v <= 1.0),
    ConfigKey('time.t_end', float, 20.0, 'must be positive', _positive),
    ConfigKey('time.sample_count', int, 40, 'must be >= 5', lambda v: v >= 5),
    ConfigKey('time.first_sample', float, 0.2, 'must be positive', _positive),
    ConfigKey('analysis.q_list', list, [2.0], 'must be a nonempty list of reals >= 1',
              lambda v: len(v) > 0 and all(q >= 1.0 for q in v)),
    ConfigKey('analysis.window_fraction', float, 0.5, 'must lie in (0,1)', lambda v: 0.0 < v < 1.0),
    ConfigKey('analysis.tolerance', float, 0.2, 'must be positive', _positive),
    ConfigKey('initial.profile', str, 'gaussian', 'must be gaussian or indicator', choices=('gaussian', 'indicator')),
    ConfigKey('initial.width', float, 2.0, 'must be positive', _positive),
    ConfigKey('initial.mass', float, 1.0, 'must be positive', _positive),
    ConfigKey('seed', int, 0, 'must be >= 0', lambda v: v >= 0),
    ConfigKey('output.directory', str, 'results', 'must not be empty', lambda v: bool(v.strip())),
    ConfigKey('output.name', str, 'run', 'must not be empty', lambda v: bool(v.strip())),
]
KEY_TABLE: Dict[str, ConfigKey] = {k.name: k for k in KEYS}


@dataclass(frozen=True)
class GridConfig:
    dimension: int = 2
    half_width: float = 40.0
    points_per_axis: int = 128


@dataclass(frozen=True)
class KernelConfig:
    family: str = 'fractional_tail'
    sigma: float = 0.5
    c1: float = 1.0
    cap: float = 1.0
    radius: float = 1.0
    modulation: float = 0.0
    normalize: bool = True
    mass: float = 1.0


@dataclass(frozen=True)
class OperatorConfig:
    boundary_mode: str = 'absorbing'
    strategy: str = 'auto'
    memory_budget_mb: float = 1024.0
    workers: int = 1

    @property
    def memory_budget_bytes(self) -> int:
        return int(self.memory_budget_mb * 1024 * 1024)


@dataclass(frozen=True)
class TimeConfig:
    scheme: str = 'euler'
    dt_safety: float = 0.9
    t_end: float = 20.0
    sample_count: int = 40
    first_sample: float = 0.2


@dataclass(frozen=True)
class AnalysisConfig:
    q_list: Tuple[float, ...] = (2.0,)
    window_fraction: float = 0.5
    tolerance: float = 0.2


@dataclass(frozen=True)
class InitialConfig:
    profile: str = 'gaussian'
    width: float = 2.0
    mass: float = 1.0


@dataclass(frozen=True)
class OutputConfig:
    directory: str = 'results'
    name: str = 'run'


_SECTIONS = {
    'grid': GridConfig,
    'kernel': KernelConfig,
    'operator': OperatorConfig,
    'time': TimeConfig,
    'analysis': AnalysisConfig,
    'initial': InitialConfig,
    'output': OutputConfig,
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment configuration; equal configs serialize identically."""
    grid: GridConfig = field(default_factory=GridConfig)
    kernel: KernelConfig = field(default_factory=KernelConfig)
    operator: OperatorConfig = field(default_factory=OperatorConfig)
    time: TimeConfig = field(default_factory=TimeConfig)
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    initial: InitialConfig = field(default_factory=InitialConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    seed: int = 0

    def get(self, key: str) -> Any:
        if '.' not in key:
            return getattr(self, key)
        section, name = key.split('.', 1)
        return getattr(getattr(self, section), name)

    def to_dict(self) -> Dict[str, Any]:
        """Flat {dotted key: value} in table order."""
        result = {}
        for key in KEYS:
            value = self.get(key.name)
            result[key.name] = list(value) if isinstance(value, tuple) else value
        return result

    def replace(self, **overrides) -> 'ExperimentConfig':
        """Copy with dotted-key overrides (``replace(**{'kernel.sigma': 0.4})``), revalidated."""
        values = self.to_dict()
        for key, value in overrides.items():
            values[_canonical_key(key)] = value
        return build_config(values)


def _canonical_key(key: str) -> str:
    key = key.strip().lower()
    if key in KEY_TABLE:
        return key
    matches = [name for name in KEY_TABLE if name.endswith('.' + key)]
    if len(matches) == 1:
        return matches[0]
    if len(matches) > 1:
        raise ConfigurationError(f"Ambiguous key '{key}': use one of {', '.join(matches)}",
                                 key=key, constraint='ambiguous')
    raise ConfigurationError(f"Unknown key '{key}'", key=key, constraint='unknown key')


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ('true', 'false'):
        return lowered == 'true'
    raise ValueError(f"expected true or false, got '{text}'")


def _parse_value(spec: ConfigKey, raw: Any) -> Any:
    if not isinstance(raw, str):
        if spec.kind is list:
            return [float(v) for v in raw]
        if spec.kind is float:
            return float(raw)
        return raw
    text = raw.strip()
    if spec.kind is bool:
        return _parse_bool(text)
    if spec.kind is int:
        return int(text)
    if spec.kind is float:
        return float(text)
    if spec.kind is list:
        return [float(v) for v in text.replace(';', ',').split(',') if v.strip()]
    return text


def _validate(spec: ConfigKey, value: Any) -> Any:
    if spec.kind is int and (isinstance(value, bool) or not isinstance(value, (int, np.integer))):
        raise ConfigurationError(f"{spec.name} must be an integer, got {value!r}", key=spec.name, constraint='integer')
    if spec.kind is bool and not isinstance(value, bool):
        raise ConfigurationError(f"{spec.name} must be true or false, got {value!r}", key=spec.name,
                                 constraint='boolean')
    if spec.kind is float and not np.isfinite(value):
        raise ConfigurationError(f"{spec.name} must be finite, got {value!r}", key=spec.name, constraint='finite')
    if spec.choices and value not in spec.choices:
        raise ConfigurationError(f"{spec.name.split('.')[-1]} {spec.constraint}, got '{value}'",
                                 key=spec.name, constraint=spec.constraint)
    if spec.check is not None and not spec.check(value):
        raise ConfigurationError(f"{spec.name.split('.')[-1]} {spec.constraint}, got {value!r}",
                                 key=spec.name, constraint=spec.constraint)
    return tuple(value) if spec.kind is list else value


def _cross_check(config: ExperimentConfig) -> None:
    if not config.time.first_sample < config.time.t_end:
        raise ConfigurationError(
            f"first_sample must be below t_end ({config.time.first_sample} >= {config.time.t_end})",
            key='time.first_sample', constraint='< time.t_end',
        )
    if config.operator.strategy == 'fft_convolution' and config.kernel.family == 'nonconvolution_fractional':
        raise ConfigurationError(
            "strategy fft_convolution needs a convolution kernel; use on_the_fly for nonconvolution_fractional",
            key='operator.strategy', constraint='convolution family',
        )
    if config.operator.strategy == 'dense':
        cells = config.grid.points_per_axis ** config.grid.dimension
        required = cells * cells * 8
        if required > config.operator.memory_budget_bytes:
            raise ConfigurationError(
                f"dense weights need {required / 2**20:.1f} MiB, above memory_budget_mb="
                f"{config.operator.memory_budget_mb:g}; use strategy on_the_fly",
                key='operator.strategy', constraint='memory budget',
            )


def build_config(values: Dict[str, Any]) -> ExperimentConfig:
    """
    Build a validated config from {key: value}; missing keys take their defaults.

    Raises
    ------
    ConfigurationError
        Unknown key, type mismatch or violated constraint
    """
    resolved = {}
    for key, raw in values.items():
        name = _canonical_key(key)
        spec = KEY_TABLE[name]
        try:
            value = _parse_value(spec, raw)
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"{name}: cannot read {raw!r} as {spec.kind.__name__} ({e})",
                                     key=name, constraint=spec.kind.__name__) from e
        resolved[name] = value

    sections: Dict[str, Dict[str, Any]] = {name: {} for name in _SECTIONS}
    seed = 0
    for spec in KEYS:
        value = _validate(spec, resolved.get(spec.name, spec.default))
        if spec.name == 'seed':
            seed = value
        else:
            section, attr = spec.name.split('.', 1)
            sections[section][attr] = value

    config = ExperimentConfig(seed=seed, **{name: cls(**sections[name]) for name, cls in _SECTIONS.items()})
    _cross_check(config)
    return config


def parse_config(text: str) -> ExperimentConfig:
    """
    Parse a flat key = value document.

    Parameters
    ----------
    text : str
        Config document; empty text gives the defaults

    Returns
    -------
    ExperimentConfig

    Raises
    ------
    ConfigurationError
        Malformed line, duplicate key, unknown key, type mismatch or violated constraint
    """
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=('#',),
                                       comment_prefixes=('#',), delimiters=('=',))
    try:
        parser.read_string(f"[{_SECTION}]\n{text}")
    except configparser.Error as e:
        raise ConfigurationError(f"Malformed config: {e}", constraint='key = value') from e
    values = dict(parser.items(_SECTION))
    logger.debug("Parsed %d config keys", len(values))
    return build_config(values)


def load_config(path) -> ExperimentConfig:
    """Read and parse a UTF-8 config file."""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise ConfigurationError(f"Cannot read config file {path}: {e}") from e
    return parse_config(text)


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ', '.join(repr(float(v)) for v in value)
    return str(value)


def serialize_config(config: ExperimentConfig) -> str:
    """Every key in table order, reals written with repr so they reparse exactly."""
    lines = [f"{name} = {_format_value(value)}" for name, value in config.to_dict().items()]
    return '\n'.join(lines) + '\n'
