"""Tests for configuration loading and run settings."""

from pathlib import Path

import pytest
from pydantic import ValidationError

from crlab.config import Config, get_config
from crlab.models import RunConfig

NAMES = [
    "CRLAB_SEED",
    "CRLAB_SAMPLES",
    "CRLAB_QUADRATURE_SAMPLES",
    "CRLAB_WORKERS",
    "CRLAB_R_GRID",
    "CRLAB_TOLERANCE",
    "CRLAB_OUTPUT_DIR",
]


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    # registering each name lets monkeypatch also undo what load_dotenv sets
    for name in NAMES:
        monkeypatch.setenv(name, "")
        monkeypatch.delenv(name)


class TestConfig:
    def test_defaults(self):
        settings = Config()
        assert settings.seed == 0
        assert settings.samples == 10_000
        assert settings.quadrature_samples == 1_000_000
        assert settings.workers == 1
        assert settings.r_grid == [0, 1, 2, 3, 4, 5, 6]
        assert settings.radii == [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0]
        assert settings.tolerance == 0.3
        assert settings.output_dir == Path("reports")

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("CRLAB_SEED", "7")
        monkeypatch.setenv("CRLAB_R_GRID", "1, 3,5")
        settings = Config()
        assert settings.seed == 7
        assert settings.r_grid == [1, 3, 5]

    def test_overrides_win_over_environment(self, monkeypatch):
        monkeypatch.setenv("CRLAB_SAMPLES", "5")
        settings = Config(overrides={"CRLAB_SAMPLES": "9", "CRLAB_WORKERS": None})
        assert settings.samples == 9
        assert settings.workers == 1

    @pytest.mark.parametrize(
        "name, raw",
        [
            ("CRLAB_WORKERS", "many"),
            ("CRLAB_TOLERANCE", "tight"),
            ("CRLAB_R_GRID", "0,x"),
        ],
    )
    def test_bad_values_name_the_variable(self, monkeypatch, name, raw):
        monkeypatch.setenv(name, raw)
        with pytest.raises(ValueError, match=name):
            Config()

    def test_from_file(self, monkeypatch, tmp_path):
        monkeypatch.setenv("CRLAB_SEED", "5")
        path = tmp_path / "run.env"
        path.write_text("CRLAB_SEED=3\nCRLAB_R_GRID=0,1,2\n", encoding="utf-8")
        settings = Config.from_file(str(path))
        assert settings.seed == 3
        assert settings.r_grid == [0, 1, 2]
        assert settings.samples == 10_000

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValueError, match="not found"):
            Config.from_file(str(tmp_path / "absent.env"))

    def test_env_file(self, tmp_path):
        path = tmp_path / ".env"
        path.write_text("CRLAB_WORKERS=4\n", encoding="utf-8")
        assert Config(env_file=str(path)).workers == 4

    def test_to_dict(self):
        data = Config(overrides={"CRLAB_R_GRID": "2,4"}).to_dict()
        assert data["r_grid"] == "2,4"
        assert data["seed"] == "0"


class TestRunConfig:
    def test_inputs_leave_out_output_and_seed(self):
        run = RunConfig(command="growth", n=2, seed=4, r_grid=[0, 1], output="out.json")
        inputs = run.inputs()
        assert inputs["r_grid"] == "0,1"
        assert inputs["n"] == 2
        assert "output" not in inputs
        assert "seed" not in inputs
        assert "command" not in inputs

    @pytest.mark.parametrize(
        "field, value", [("n", 0), ("workers", 0), ("samples", 0), ("tolerance", 0.0)]
    )
    def test_invalid_settings(self, field, value):
        with pytest.raises(ValidationError):
            RunConfig(command="verify", **{field: value})

    def test_validation_error_is_a_value_error(self):
        with pytest.raises(ValueError):
            RunConfig(command="verify", workers=-1)


class TestSharedConfig:
    def test_import_does_not_read_the_environment(self, monkeypatch):
        import importlib

        import crlab.config

        monkeypatch.setenv("CRLAB_WORKERS", "many")
        module = importlib.reload(crlab.config)
        module.get_config.cache_clear()
        try:
            with pytest.raises(ValueError, match="CRLAB_WORKERS"):
                module.get_config()
        finally:
            module.get_config.cache_clear()

    def test_shared_instance_is_cached(self):
        get_config.cache_clear()
        try:
            assert get_config() is get_config()
        finally:
            get_config.cache_clear()
