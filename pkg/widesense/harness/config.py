#!/usr/bin/env python3

""" Experiment configuration: a tree of frozen dataclasses that is read from
and written to JSON. """

# std
import dataclasses
from dataclasses import dataclass, field
import json
import math
import pathlib
from typing import Any, Dict, Optional, Tuple, Union

# ours
from widesense.errors import ConfigError
from widesense.fusion.recovery import SolverOptions
from widesense.metrics.detection import AGGREGATION_MODES
from widesense.spectrum.config import SpectrumConfig, make_config

MEASUREMENT_MODES = ("linear", "magnitude")
FADING_MODELS = ("identity", "rayleigh")


@dataclass(frozen=True)
class SpectrumSettings:
    total_bandwidth_hz: float = 6e9
    subband_bandwidth_hz: float = 30e6


@dataclass(frozen=True)
class LevelSettings:
    """Occupied subbands draw their level uniformly from ``[low, high]``."""

    low: float = 0.5
    high: float = 2.0


@dataclass(frozen=True)
class NoiseSettings:
    """Either a per-measurement SNR in dB or a fixed noise standard
    deviation; exactly one of them is set."""

    snr_db: Optional[float] = 10.0
    sigma_w: Optional[float] = None


@dataclass(frozen=True)
class FadingSettings:
    model: str = "identity"
    scale: float = 1.0

    def spec(self):
        """Argument for :func:`~widesense.spectrum.environment.draw_channel`"""
        if self.model == "identity":
            return "identity"
        return (self.model, self.scale)


@dataclass(frozen=True)
class LambdaGridSettings:
    #: Number of thresholds of the pilot grid
    points: int = 64
    #: Grid range as multiples of the median busy level of the pilot run
    low: float = 1e-3
    high: float = 10.0
    #: Trials of the pilot run (at the largest K)
    pilot_trials: int = 50
    #: Explicit thresholds, replace the pilot grid
    values: Optional[Tuple[float, ...]] = None
    #: The pilot picks its threshold among those with a false alarm
    #: probability of at most ``target_pf``; ``None`` drops the constraint
    target_pf: Optional[float] = 0.01
    #: Fixed decision threshold, replaces the best pilot threshold
    threshold: Optional[float] = None

    def __post_init__(self):
        if self.values is not None:
            object.__setattr__(
                self, "values", tuple(float(v) for v in self.values)
            )


@dataclass(frozen=True)
class ExperimentConfig:
    spectrum: SpectrumSettings = field(default_factory=SpectrumSettings)
    #: Number of primary users J (each occupies a mirrored subband pair)
    pu_count: int = 15
    #: Node counts of the sweep, ascending
    k_values: Tuple[int, ...] = (25, 30, 35, 40, 45, 50, 60)
    #: Trials per node count
    trials: int = 10000
    master_seed: int = 0
    levels: LevelSettings = field(default_factory=LevelSettings)
    noise: NoiseSettings = field(default_factory=NoiseSettings)
    fading: FadingSettings = field(default_factory=FadingSettings)
    lambda_grid: LambdaGridSettings = field(default_factory=LambdaGridSettings)
    solver: SolverOptions = field(default_factory=SolverOptions)
    #: ``"linear"`` or ``"magnitude"`` (modulus before averaging)
    measurement_mode: str = "linear"
    #: Baseband frequency bins per subband in magnitude mode
    spectral_bins: int = 64
    #: ``"per-trial"`` or ``"pooled"`` detection probabilities
    aggregation: str = "per-trial"
    #: Worker processes, 0 means one per CPU
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(
            self, "k_values", tuple(int(k) for k in self.k_values)
        )

    # **************************************************************************
    # Derived quantities
    # **************************************************************************

    def spectrum_config(self) -> SpectrumConfig:
        return make_config(
            self.spectrum.total_bandwidth_hz, self.spectrum.subband_bandwidth_hz
        )

    # **************************************************************************
    # Validation
    # **************************************************************************

    def validate(self) -> "ExperimentConfig":
        """Check every precondition of the modules the campaign calls.

        Returns:
            The config itself

        Raises:
            ConfigError
        """
        cfg = self.spectrum_config()
        if not 0 <= self.pu_count <= cfg.L0:
            raise ConfigError(
                "pu_count must be within [0, {}] for L = {} subbands, "
                "got {}.".format(cfg.L0, cfg.L, self.pu_count)
            )
        if not self.k_values:
            raise ConfigError("k_values must not be empty.")
        if min(self.k_values) < 1:
            raise ConfigError(
                "Node counts must be positive, got {}.".format(self.k_values)
            )
        if any(a >= b for a, b in zip(self.k_values, self.k_values[1:])):
            raise ConfigError(
                "k_values must be strictly ascending, got {}.".format(
                    self.k_values
                )
            )
        if self.trials < 1:
            raise ConfigError(
                "trials must be positive, got {}.".format(self.trials)
            )
        if self.master_seed < 0:
            raise ConfigError("master_seed must be non-negative.")
        if not 0 < self.levels.low <= self.levels.high < math.inf:
            raise ConfigError(
                "Invalid level interval [{}, {}].".format(
                    self.levels.low, self.levels.high
                )
            )
        self._validate_noise()
        if self.fading.model not in FADING_MODELS:
            raise ConfigError(
                "Unknown fading model {!r}, use one of {}.".format(
                    self.fading.model, FADING_MODELS
                )
            )
        if not self.fading.scale > 0:
            raise ConfigError("Fading scale must be positive.")
        self._validate_lambda_grid()
        if self.measurement_mode not in MEASUREMENT_MODES:
            raise ConfigError(
                "Unknown measurement mode {!r}, use one of {}.".format(
                    self.measurement_mode, MEASUREMENT_MODES
                )
            )
        if self.spectral_bins < 1:
            raise ConfigError("spectral_bins must be positive.")
        if self.aggregation not in AGGREGATION_MODES:
            raise ConfigError(
                "Unknown aggregation {!r}, use one of {}.".format(
                    self.aggregation, AGGREGATION_MODES
                )
            )
        if self.workers < 0:
            raise ConfigError("workers must be non-negative.")
        return self

    def _validate_noise(self):
        snr_db, sigma_w = self.noise.snr_db, self.noise.sigma_w
        if (snr_db is None) == (sigma_w is None):
            raise ConfigError(
                "Specify exactly one of noise.snr_db and noise.sigma_w."
            )
        if snr_db is not None and (math.isnan(snr_db) or snr_db == -math.inf):
            raise ConfigError("Invalid SNR {} dB.".format(snr_db))
        if sigma_w is not None and not 0 <= sigma_w < math.inf:
            raise ConfigError("Invalid noise level sigma_w={}.".format(sigma_w))

    def _validate_lambda_grid(self):
        grid = self.lambda_grid
        if grid.points < 1 or grid.pilot_trials < 1:
            raise ConfigError("Threshold grid needs points and pilot trials.")
        if not 0 < grid.low <= grid.high:
            raise ConfigError(
                "Invalid threshold grid range [{}, {}].".format(
                    grid.low, grid.high
                )
            )
        if grid.values is not None:
            values = grid.values
            if not values or min(values) < 0:
                raise ConfigError("Explicit thresholds must be non-negative.")
            if any(a > b for a, b in zip(values, values[1:])):
                raise ConfigError("Explicit thresholds must be ascending.")
        if grid.threshold is not None and not grid.threshold >= 0:
            raise ConfigError("Decision threshold must be non-negative.")
        if grid.target_pf is not None and not 0 <= grid.target_pf <= 1:
            raise ConfigError(
                "target_pf must be within [0, 1], got {}.".format(
                    grid.target_pf
                )
            )

    # **************************************************************************
    # Modification
    # **************************************************************************

    def replace(self, **overrides) -> "ExperimentConfig":
        """New validated config with some top level fields replaced."""
        try:
            new = dataclasses.replace(self, **overrides)
        except TypeError as e:
            raise ConfigError(str(e)) from e
        return new.validate()

    # **************************************************************************
    # Serialization
    # **************************************************************************

    def to_dict(self) -> Dict[str, Any]:
        return _to_plain(dataclasses.asdict(self))

    @classmethod
    def from_dict(cls, dct: Dict[str, Any]) -> "ExperimentConfig":
        """Build a config from a (possibly partial) dictionary; missing keys
        take their defaults, unknown keys are an error. The result is not
        validated yet."""
        return _from_dict(cls, dct, "config")

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=4)

    @classmethod
    def loads(cls, string: str) -> "ExperimentConfig":
        try:
            dct = json.loads(string)
        except json.JSONDecodeError as e:
            raise ConfigError("Invalid JSON: {}".format(e)) from e
        return cls.from_dict(dct).validate()

    def dump(self, path: Union[str, pathlib.PurePath]) -> None:
        path = pathlib.Path(path)
        path.write_text(self.dumps() + "\n")

    @classmethod
    def load(cls, path: Union[str, pathlib.PurePath]) -> "ExperimentConfig":
        path = pathlib.Path(path)
        try:
            text = path.read_text()
        except OSError as e:
            raise ConfigError(
                "Could not read config {}: {}".format(path, e)
            ) from e
        return cls.loads(text)


def _to_plain(obj):
    if isinstance(obj, dict):
        return {key: _to_plain(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_plain(value) for value in obj]
    return obj


def _from_dict(cls, dct, where: str):
    if not isinstance(dct, dict):
        raise ConfigError(
            "Expected a mapping for {}, got {!r}.".format(where, dct)
        )
    fields = {f.name: f for f in dataclasses.fields(cls)}
    unknown = sorted(set(dct) - set(fields))
    if unknown:
        raise ConfigError(
            "Unknown key(s) {} in {}.".format(", ".join(unknown), where)
        )
    kwargs = {}
    for name, value in dct.items():
        default = fields[name].default_factory
        if default is not dataclasses.MISSING and dataclasses.is_dataclass(
            default
        ):
            value = _from_dict(default, value, "{}.{}".format(where, name))
        kwargs[name] = value
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as e:
        raise ConfigError("Invalid {}: {}".format(where, e)) from e
