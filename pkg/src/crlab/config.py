"""Configuration management for CRLab."""

import os
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Mapping, Optional

from dotenv import dotenv_values, load_dotenv


class Config:
    """Configuration for CRLab.

    Handles loading environment variables and providing configuration values.
    Values in ``overrides`` (for example a CLI config file) win over the
    environment, which wins over the defaults.
    """

    def __init__(
        self,
        env_file: Optional[str] = None,
        overrides: Optional[Mapping[str, Optional[str]]] = None,
    ) -> None:
        """Initialize the configuration.

        Args:
            env_file: Path to the .env file. If None, will look for .env in the current
                working directory.
            overrides: ``CRLAB_*`` values taking precedence over the environment.

        Raises:
            ValueError: If a setting cannot be parsed; the message names the variable.
        """
        if env_file:
            load_dotenv(env_file)
        else:
            load_dotenv()
        self._overrides = {k: v for k, v in (overrides or {}).items() if v is not None}

        # Sampling settings
        self.seed: int = self._int("CRLAB_SEED", "0")
        self.samples: int = self._int("CRLAB_SAMPLES", "10000")
        self.quadrature_samples: int = self._int("CRLAB_QUADRATURE_SAMPLES", "1000000")
        self.workers: int = self._int("CRLAB_WORKERS", "1")

        # Growth fits: dyadic exponents k of the radii R = 2^k
        self.r_grid: List[int] = self._int_list("CRLAB_R_GRID", "0,1,2,3,4,5,6")
        self.tolerance: float = self._float("CRLAB_TOLERANCE", "0.3")

        # Output settings
        self.output_dir: Path = Path(self._get("CRLAB_OUTPUT_DIR", "reports"))

    @classmethod
    def from_file(cls, path: str) -> "Config":
        """Configuration with the ``key = value`` file at ``path`` over the environment.

        Raises:
            ValueError: If the file does not exist or a value cannot be parsed.
        """
        if not Path(path).is_file():
            raise ValueError(f"config file {path!r} not found")
        return cls(overrides=dotenv_values(path))

    def _get(self, name: str, default: str) -> str:
        return self._overrides.get(name) or os.getenv(name, default)

    def _int(self, name: str, default: str) -> int:
        raw = self._get(name, default)
        try:
            return int(raw)
        except ValueError as e:
            raise ValueError(f"{name} must be an integer, got {raw!r}") from e

    def _float(self, name: str, default: str) -> float:
        raw = self._get(name, default)
        try:
            return float(raw)
        except ValueError as e:
            raise ValueError(f"{name} must be a number, got {raw!r}") from e

    def _int_list(self, name: str, default: str) -> List[int]:
        raw = self._get(name, default)
        try:
            return [int(part) for part in raw.split(",") if part.strip()]
        except ValueError as e:
            raise ValueError(
                f"{name} must be a comma-separated list of integers, got {raw!r}"
            ) from e

    @property
    def radii(self) -> List[float]:
        return [2.0**k for k in self.r_grid]

    def to_dict(self) -> Dict[str, str]:
        """Convert the configuration to a dictionary for serialization.

        Returns:
            Dictionary representation of the configuration.
        """
        return {
            "seed": str(self.seed),
            "samples": str(self.samples),
            "quadrature_samples": str(self.quadrature_samples),
            "workers": str(self.workers),
            "r_grid": ",".join(str(k) for k in self.r_grid),
            "tolerance": str(self.tolerance),
            "output_dir": str(self.output_dir),
        }


@lru_cache(maxsize=None)
def get_config() -> Config:
    """The shared configuration, built on first use.

    Raises:
        ValueError: If a ``CRLAB_*`` variable cannot be parsed.
    """
    return Config()
