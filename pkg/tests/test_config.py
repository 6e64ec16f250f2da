from pathlib import Path

import pytest

from meanslab.config import AppConfig, load_config, resolve_seed
from meanslab.errors import ConfigError


def test_missing_file_gives_defaults(tmp_path):
    config = load_config(tmp_path / "absent.yml")

    assert config.solver.tol == 1e-12
    assert config.solver.karcher_step == "adaptive"
    assert config.harness.trials == 50
    assert config.harness.twin_every == 5
    assert config.harness.bounds == ((1.0, 2.0), (0.5, 4.0), (1.0, 16.0))


def test_yaml_sections(config_file, tmp_path):
    config = load_config(config_file)

    assert config.harness.trials == 2
    assert config.harness.report_dir == tmp_path / "reports"
    assert config.logging.level == "DEBUG"
    assert config.logging.directory == tmp_path / "logs"
    assert config.solver.max_iter == 500


def test_yaml_ranges_and_bounds(tmp_path):
    path = tmp_path / "config.yml"
    path.write_text(
        "solver:\n  tol: 1.0e-10\n  karcher_step: fixed\n"
        "harness:\n  dims: [3, 4]\n  n_range: [2, 2]\n  bounds: [[1, 9]]\n  jobs: 3\n"
        "logging:\n  level: warning\n  file_logging: false\n"
    )
    config = load_config(path)

    assert config.solver.tol == 1e-10
    assert config.solver.karcher_step == "fixed"
    assert config.harness.dims == (3, 4)
    assert config.harness.n_range == (2, 2)
    assert config.harness.bounds == ((1.0, 9.0),)
    assert config.harness.jobs == 3
    assert config.logging.level == "WARNING"
    assert not config.logging.file_logging


@pytest.mark.parametrize(
    "text, message",
    [
        ("solver:\n  damping: 2\n", "damping"),
        ("solver:\n  karcher_step: newton\n", "karcher_step"),
        ("harness:\n  dims: [4, 2]\n", "harness.dims"),
        ("harness:\n  bounds: [[2, 1]]\n", "harness.bounds"),
        ("harness:\n  trials: many\n", "many"),
        ("- just\n- a list\n", "mapping"),
        ("solver: [unclosed\n", "config.yml"),
    ],
)
def test_invalid_config(tmp_path, text, message):
    path = tmp_path / "config.yml"
    path.write_text(text)

    with pytest.raises(ConfigError, match=message):
        load_config(path)


def test_resolve_seed_precedence(monkeypatch):
    config = AppConfig()
    config.harness.seed = 7

    assert resolve_seed(None, config) == 7
    monkeypatch.setenv("MEANSLAB_SEED", "11")
    assert resolve_seed(None, config) == 11
    assert resolve_seed(3, config) == 3


def test_resolve_seed_rejects_garbage(monkeypatch):
    monkeypatch.setenv("MEANSLAB_SEED", "abc")

    with pytest.raises(ConfigError, match="MEANSLAB_SEED"):
        resolve_seed(None, AppConfig())


def test_default_paths_live_under_home():
    config = AppConfig()

    assert config.harness.report_dir.parent == Path.home() / ".meanslab"
    assert config.logging.directory.name == "logs"
