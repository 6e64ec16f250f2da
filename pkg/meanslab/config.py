"""Configuration helpers for meanslab."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Tuple

import yaml
from dotenv import load_dotenv

from meanslab.errors import ConfigError
from meanslab.services.validators import validate_solver_config

DEFAULT_CONFIG_PATH = Path.home() / ".meanslab" / "config.yml"
DEFAULT_REPORT_DIR = Path.home() / ".meanslab" / "reports"
DEFAULT_LOG_DIR = Path.home() / ".meanslab" / "logs"
SEED_ENV_VAR = "MEANSLAB_SEED"

KARCHER_STEPS = ("adaptive", "fixed")


@dataclass(slots=True)
class SolverConfig:
    tol: float = 1e-12
    max_iter: int = 500
    damping: float = 1.0
    # "adaptive" scales damping by a Richardson step; "fixed" uses damping alone
    karcher_step: str = "adaptive"


@dataclass(slots=True)
class HarnessConfig:
    tolerance: float = 1e-9
    trials: int = 50
    dims: Tuple[int, int] = (2, 6)
    n_range: Tuple[int, int] = (2, 5)
    bounds: Tuple[Tuple[float, float], ...] = ((1.0, 2.0), (0.5, 4.0), (1.0, 16.0))
    seed: int = 0
    jobs: int = 1
    twin_every: int = 5  # every k-th trial runs on a commuting twin; 0 disables
    report_dir: Path = field(default_factory=lambda: DEFAULT_REPORT_DIR)


@dataclass(slots=True)
class LoggingConfig:
    directory: Path = field(default_factory=lambda: DEFAULT_LOG_DIR)
    level: str = "INFO"
    file_logging: bool = True


@dataclass(slots=True)
class AppConfig:
    solver: SolverConfig = field(default_factory=SolverConfig)
    harness: HarnessConfig = field(default_factory=HarnessConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)


def _pair(value: Any, key: str) -> Tuple[int, int]:
    try:
        low, high = (int(item) for item in value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key}: expected a pair of integers, got {value!r}") from exc
    if low < 1 or high < low:
        raise ConfigError(f"{key}: invalid range {low}-{high}")
    return low, high


def _bounds(value: Any) -> Tuple[Tuple[float, float], ...]:
    try:
        pairs = tuple((float(m), float(M)) for m, M in value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"harness.bounds: expected a list of [m, M] pairs, got {value!r}") from exc
    for m, M in pairs:
        if not 0 < m < M:
            raise ConfigError(f"harness.bounds: need 0 < m < M, got ({m}, {M})")
    return pairs


def load_config(path: Path | None = None) -> AppConfig:
    """Load configuration from YAML or fall back to defaults."""

    config_path = path or DEFAULT_CONFIG_PATH
    if not config_path.exists():
        return AppConfig()

    try:
        with config_path.open("r", encoding="utf-8") as handle:
            raw: Dict[str, Any] = yaml.safe_load(handle) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"{config_path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{config_path}: top level must be a mapping")

    solver = raw.get("solver", {})
    harness = raw.get("harness", {})
    logging_section = raw.get("logging", {})

    try:
        config = AppConfig(
            solver=SolverConfig(
                tol=float(solver.get("tol", 1e-12)),
                max_iter=int(solver.get("max_iter", 500)),
                damping=float(solver.get("damping", 1.0)),
                karcher_step=str(solver.get("karcher_step", "adaptive")),
            ),
            harness=HarnessConfig(
                tolerance=float(harness.get("tolerance", 1e-9)),
                trials=int(harness.get("trials", 50)),
                dims=_pair(harness.get("dims", (2, 6)), "harness.dims"),
                n_range=_pair(harness.get("n_range", (2, 5)), "harness.n_range"),
                bounds=_bounds(harness.get("bounds", ((1.0, 2.0), (0.5, 4.0), (1.0, 16.0)))),
                seed=int(harness.get("seed", 0)),
                jobs=int(harness.get("jobs", 1)),
                twin_every=int(harness.get("twin_every", 5)),
                report_dir=Path(harness.get("report_dir", DEFAULT_REPORT_DIR)).expanduser(),
            ),
            logging=LoggingConfig(
                directory=Path(logging_section.get("directory", DEFAULT_LOG_DIR)).expanduser(),
                level=str(logging_section.get("level", "INFO")).upper(),
                file_logging=bool(logging_section.get("file_logging", True)),
            ),
        )
    except (TypeError, ValueError, AttributeError) as exc:
        raise ConfigError(f"{config_path}: {exc}") from exc

    is_valid, message = validate_solver_config(config.solver)
    if not is_valid:
        raise ConfigError(f"solver: {message}")
    return config


def resolve_seed(explicit: int | None, config: AppConfig) -> int:
    """Return the master seed: explicit flag, then MEANSLAB_SEED, then config."""

    if explicit is not None:
        return explicit
    load_dotenv()
    env_value = os.getenv(SEED_ENV_VAR)
    if env_value:
        try:
            return int(env_value)
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV_VAR} must be an integer, got {env_value!r}") from exc
    return config.harness.seed
