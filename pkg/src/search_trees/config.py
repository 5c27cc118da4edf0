"""Configuration management."""

from __future__ import annotations

import logging
import os
import tomllib
from dataclasses import dataclass
from pathlib import Path

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path.home() / ".config" / "search-trees" / "config.toml"
CONFIG_ENV_VAR = "SEARCH_TREES_CONFIG"
DEFAULT_TIE_BREAK = "min_id"

# Tie-break policies selectable from the config file and the CLI
AVAILABLE_TIE_BREAKS = ["min_id", "max_id"]


def default_config_path() -> Path:
    """Return the config path, honouring the SEARCH_TREES_CONFIG override."""
    env_path = os.environ.get(CONFIG_ENV_VAR)
    return Path(env_path) if env_path else DEFAULT_CONFIG_PATH


@dataclass(frozen=True)
class Config:
    """Tool configuration."""

    budget: int | None = None
    tie_break: str = DEFAULT_TIE_BREAK
    verify_witnesses: bool = True
    workers: int = 1
    verbose: bool = False

    def __post_init__(self) -> None:
        if self.tie_break not in AVAILABLE_TIE_BREAKS:
            raise ValueError(
                f"Unknown tie_break: {self.tie_break}. "
                f"Valid options: {', '.join(AVAILABLE_TIE_BREAKS)}"
            )
        if self.budget is not None and self.budget <= 0:
            raise ValueError(f"budget must be positive, got {self.budget}")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")

    @classmethod
    def load(cls, path: Path | None = None) -> Config:
        """Load configuration from a TOML file.

        Args:
            path: Path to config file. If None, uses the default location.

        Returns:
            Config instance with loaded values.
        """
        config_path = path or default_config_path()

        if not config_path.exists():
            return cls()

        try:
            with open(config_path, "rb") as f:
                data = tomllib.load(f)
            return cls(
                budget=data.get("budget"),
                tie_break=data.get("tie_break", DEFAULT_TIE_BREAK),
                verify_witnesses=data.get("verify_witnesses", True),
                workers=data.get("workers", 1),
                verbose=data.get("verbose", False),
            )
        except (OSError, tomllib.TOMLDecodeError, ValueError, TypeError) as e:
            logger.warning("Failed to load config from %s: %s", config_path, e)
            return cls()

    def override(
        self,
        budget: int | None = None,
        tie_break: str | None = None,
        verify_witnesses: bool | None = None,
        workers: int | None = None,
        verbose: bool | None = None,
    ) -> Config:
        """Create a new config with overridden values.

        Args:
            budget: Override the node budget if provided.
            tie_break: Override the tie-break policy if provided.
            verify_witnesses: Override witness replay if provided.
            workers: Override the per-root worker count if provided.
            verbose: Override verbose if provided.

        Returns:
            New Config instance with overrides applied.
        """
        return Config(
            budget=budget if budget is not None else self.budget,
            tie_break=tie_break if tie_break is not None else self.tie_break,
            verify_witnesses=(
                verify_witnesses if verify_witnesses is not None else self.verify_witnesses
            ),
            workers=workers if workers is not None else self.workers,
            verbose=verbose if verbose is not None else self.verbose,
        )
