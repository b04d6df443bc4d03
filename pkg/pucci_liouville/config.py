"""Toolkit configuration."""

import os
from dataclasses import dataclass, fields
from typing import Literal

LogFormat = Literal["text", "json", "yaml"]

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _parse_bool_env(value: str, default: bool) -> bool:
    """Parse boolean from environment variable string.

    Args:
        value: Environment variable string value
        default: Default value if string is empty

    Returns:
        Parsed boolean value
    """
    if not value:
        return default
    return value.lower() in ("true", "1", "yes")


@dataclass(frozen=True)
class ToolkitConfig:
    """Numerical defaults and logging settings shared by the toolkit.

    Attributes:
        grid_min: Smallest positive radius of the default verification grid
        grid_max: Largest radius of the default verification grid
        grid_points: Number of log-spaced radii in the default grid
        include_origin: Prepend r=0 to the grid for profiles defined at the origin

        witness_tolerance: Residual floor a synthesized witness must clear (min >= -tol)
        chain_tolerance: Residual floor for transform chain checks and identities
        monotonicity_rtol: Relative tolerance per adjacent pair in m(R) monotonicity checks
        max_halvings: Cap on amplitude halvings in witness synthesis
        m_profile_samples: Samples used by m(R) for profiles that are not known to be monotone
        transfer_deltas: Candidate offsets b = 1 + delta scanned by the power-substitution transfer

        sweep_workers: Worker threads for lattice sweeps (1 = run inline)
        show_progress: Show a tqdm progress bar on stderr during sweeps

        log_level: Root level for the package logger
        log_format: Structured log format for log_event: text, json or yaml
        log_file: Rotating log file path (None = stderr)
        log_max_bytes: Rotation size for log_file
        log_backup_count: Rotated files to keep
    """

    # Verification grid
    grid_min: float = 1e-4
    grid_max: float = 1e6
    grid_points: int = 512
    include_origin: bool = True

    # Tolerances
    witness_tolerance: float = 1e-12
    chain_tolerance: float = 1e-9
    monotonicity_rtol: float = 1e-10

    # Searches
    max_halvings: int = 200
    m_profile_samples: int = 1024
    transfer_deltas: tuple[float, ...] = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8)

    # Sweeps
    sweep_workers: int = 1
    show_progress: bool = False

    # Logging
    log_level: str = "WARNING"
    log_format: LogFormat = "text"
    log_file: str | None = None
    log_max_bytes: int = 10 * 1024 * 1024  # 10MB
    log_backup_count: int = 5

    def __post_init__(self):
        """Validate ranges."""
        if not 0 < self.grid_min < self.grid_max:
            raise ValueError(f"grid_min must satisfy 0 < grid_min < grid_max, got {self.grid_min}, {self.grid_max}")
        if self.grid_points < 2:
            raise ValueError(f"grid_points must be >= 2, got {self.grid_points}")
        for name in ("witness_tolerance", "chain_tolerance", "monotonicity_rtol"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative, got {getattr(self, name)}")
        if self.max_halvings < 1:
            raise ValueError(f"max_halvings must be >= 1, got {self.max_halvings}")
        if self.m_profile_samples < 2:
            raise ValueError(f"m_profile_samples must be >= 2, got {self.m_profile_samples}")
        if not self.transfer_deltas or any(d <= 0 for d in self.transfer_deltas):
            raise ValueError("transfer_deltas must be a nonempty sequence of positive offsets")
        if self.sweep_workers < 1:
            raise ValueError(f"sweep_workers must be >= 1, got {self.sweep_workers}")
        if self.log_level.upper() not in _LOG_LEVELS:
            raise ValueError(f"log_level must be one of {_LOG_LEVELS}, got {self.log_level!r}")
        if self.log_format not in ("text", "json", "yaml"):
            raise ValueError(f"log_format must be text, json or yaml, got {self.log_format!r}")

    @classmethod
    def from_env(cls, env_prefix: str = "PUCCI_") -> "ToolkitConfig":
        """Create config from environment variables with optional prefix.

        Reads a .env file first. Each setting is looked up as ``{env_prefix}{NAME}``
        and then as ``NAME``; invalid choice values fall back to the default.

        Args:
            env_prefix: Prefix for environment variables (e.g., "PUCCI_")

        Returns:
            ToolkitConfig populated from environment
        """
        from dotenv import load_dotenv

        load_dotenv()

        def get_env(name: str, default: str) -> str:
            prefixed = os.getenv(f"{env_prefix}{name}", None)
            if prefixed is not None:
                return prefixed
            return os.getenv(name, default)

        defaults = {f.name: f.default for f in fields(cls)}
        values: dict = {}
        for name in ("grid_min", "grid_max", "witness_tolerance", "chain_tolerance", "monotonicity_rtol"):
            values[name] = float(get_env(name.upper(), str(defaults[name])))
        for name in ("grid_points", "max_halvings", "m_profile_samples", "sweep_workers", "log_backup_count"):
            values[name] = int(get_env(name.upper(), str(defaults[name])))
        values["log_max_bytes"] = int(get_env("LOG_MAX_BYTES", str(defaults["log_max_bytes"])))
        values["include_origin"] = _parse_bool_env(get_env("INCLUDE_ORIGIN", ""), defaults["include_origin"])
        values["show_progress"] = _parse_bool_env(get_env("SHOW_PROGRESS", ""), defaults["show_progress"])

        log_level = get_env("LOG_LEVEL", defaults["log_level"]).upper()
        if log_level not in _LOG_LEVELS:
            log_level = defaults["log_level"]
        values["log_level"] = log_level

        log_format = get_env("LOG_FORMAT", defaults["log_format"])
        if log_format not in ("text", "json", "yaml"):
            log_format = "text"
        values["log_format"] = log_format

        values["log_file"] = get_env("LOG_FILE", "") or None

        return cls(**values)


DEFAULT_CONFIG = ToolkitConfig()
