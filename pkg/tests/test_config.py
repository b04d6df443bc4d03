"""Tests for ToolkitConfig defaults, validation and environment loading."""

import dataclasses

import pytest

from pucci_liouville.config import DEFAULT_CONFIG, ToolkitConfig


@pytest.mark.unit
class TestToolkitConfig:
    """Test ToolkitConfig class."""

    def test_default_config(self, default_config):
        """Test that default config has expected values."""
        assert default_config.grid_min == 1e-4
        assert default_config.grid_max == 1e6
        assert default_config.grid_points == 512
        assert default_config.include_origin is True
        assert default_config.witness_tolerance == 1e-12
        assert default_config.chain_tolerance == 1e-9
        assert default_config.monotonicity_rtol == 1e-10
        assert default_config.m_profile_samples == 1024
        assert default_config.sweep_workers == 1
        assert default_config.log_level == "WARNING"
        assert default_config.log_max_bytes == 10 * 1024 * 1024

    def test_module_default_matches_constructor(self):
        assert ToolkitConfig() == DEFAULT_CONFIG

    def test_frozen(self, default_config):
        with pytest.raises(dataclasses.FrozenInstanceError):
            default_config.grid_points = 10

    def test_replace_keeps_validation(self, default_config):
        config = dataclasses.replace(default_config, sweep_workers=4)
        assert config.sweep_workers == 4
        with pytest.raises(ValueError, match="sweep_workers"):
            dataclasses.replace(default_config, sweep_workers=0)

    @pytest.mark.parametrize(
        "overrides, message",
        [
            ({"grid_min": 0.0}, "grid_min"),
            ({"grid_min": 10.0, "grid_max": 1.0}, "grid_min"),
            ({"grid_points": 1}, "grid_points"),
            ({"witness_tolerance": -1.0}, "witness_tolerance"),
            ({"max_halvings": 0}, "max_halvings"),
            ({"m_profile_samples": 1}, "m_profile_samples"),
            ({"transfer_deltas": ()}, "transfer_deltas"),
            ({"transfer_deltas": (0.1, -0.1)}, "transfer_deltas"),
            ({"log_level": "LOUD"}, "log_level"),
            ({"log_format": "xml"}, "log_format"),
        ],
    )
    def test_invalid_values_rejected(self, overrides, message):
        with pytest.raises(ValueError, match=message):
            ToolkitConfig(**overrides)

    def test_from_env_with_prefix(self, monkeypatch, tmp_path):
        """Test loading config from environment variables with prefix."""
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv("MYAPP_GRID_POINTS", "64")
        monkeypatch.setenv("MYAPP_WITNESS_TOLERANCE", "1e-10")
        monkeypatch.setenv("MYAPP_SHOW_PROGRESS", "true")
        monkeypatch.setenv("MYAPP_LOG_LEVEL", "debug")

        config = ToolkitConfig.from_env("MYAPP_")

        assert config.grid_points == 64
        assert config.witness_tolerance == 1e-10
        assert config.show_progress is True
        assert config.log_level == "DEBUG"

    def test_from_env_without_prefix(self, monkeypatch, tmp_path):
        """Unprefixed names are the fallback."""
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv("SWEEP_WORKERS", "3")
        monkeypatch.setenv("INCLUDE_ORIGIN", "false")

        config = ToolkitConfig.from_env("NOPE_")

        assert config.sweep_workers == 3
        assert config.include_origin is False

    def test_prefixed_wins_over_unprefixed(self, monkeypatch, tmp_path):
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv("GRID_POINTS", "32")
        monkeypatch.setenv("PUCCI_GRID_POINTS", "16")
        assert ToolkitConfig.from_env().grid_points == 16

    def test_invalid_choices_fall_back(self, monkeypatch, tmp_path):
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv("PUCCI_LOG_LEVEL", "chatty")
        monkeypatch.setenv("PUCCI_LOG_FORMAT", "xml")

        config = ToolkitConfig.from_env()

        assert config.log_level == "WARNING"
        assert config.log_format == "text"

    def test_log_file_empty_means_stderr(self, monkeypatch, tmp_path):
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv("PUCCI_LOG_FILE", "")
        assert ToolkitConfig.from_env().log_file is None
