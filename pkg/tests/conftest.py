"""Shared fixtures for the meanslab test suite."""

import logging
from pathlib import Path
from typing import List

import numpy as np
import pytest

from meanslab.config import AppConfig, HarnessConfig, LoggingConfig
from meanslab.models import SpdMatrix, SpectralBounds
from meanslab.services import spd


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def pair(rng: np.random.Generator) -> List[SpdMatrix]:
    """Two generic 3x3 matrices with spectra in [0.5, 4]."""

    bounds = SpectralBounds(0.5, 4.0)
    return [spd.random_spd(3, bounds, rng), spd.random_spd(3, bounds, rng)]


@pytest.fixture
def triple(rng: np.random.Generator) -> List[SpdMatrix]:
    bounds = SpectralBounds(1.0, 16.0)
    return [spd.random_spd(4, bounds, rng) for _ in range(3)]


@pytest.fixture
def app_config(tmp_path: Path) -> AppConfig:
    """Config with reports and logs under tmp_path and a fast twin cadence."""

    return AppConfig(
        harness=HarnessConfig(report_dir=tmp_path / "reports", trials=2, twin_every=2),
        logging=LoggingConfig(directory=tmp_path / "logs"),
    )


@pytest.fixture
def config_file(tmp_path: Path) -> Path:
    """YAML config pointing every output directory into tmp_path."""

    path = tmp_path / "config.yml"
    path.write_text(
        "harness:\n"
        f"  report_dir: {tmp_path / 'reports'}\n"
        "  trials: 2\n"
        "  twin_every: 2\n"
        "logging:\n"
        f"  directory: {tmp_path / 'logs'}\n"
        "  level: DEBUG\n",
        encoding="utf-8",
    )
    return path


@pytest.fixture(autouse=True)
def _no_seed_env(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("MEANSLAB_SEED", raising=False)


@pytest.fixture(autouse=True)
def _drop_log_handlers():
    """Remove handlers setup_logging attached, so no test logs into a closed capture stream."""

    yield
    for name in ("meanslab", "meanslab.failures"):
        logger = logging.getLogger(name)
        for handler in list(logger.handlers):
            logger.removeHandler(handler)
            handler.close()
