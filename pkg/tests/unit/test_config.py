"""Unit tests for settings persistence and environment overrides."""

import json

import pytest

from src.config.settings import (
    DEFAULT_SETTINGS,
    ENV_PREFIX,
    env_overrides,
    get_settings_file,
    load_settings,
    parse_setting,
    save_settings,
)


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    monkeypatch.setenv(f"{ENV_PREFIX}CONFIG_DIR", str(tmp_path))
    for key in DEFAULT_SETTINGS:
        monkeypatch.delenv(f"{ENV_PREFIX}{key.upper()}", raising=False)
    return tmp_path


def test_defaults_without_file():
    """Test defaults apply when no settings file exists."""
    assert load_settings() == DEFAULT_SETTINGS


def test_settings_file_location(isolated_config):
    """Test the settings file lives under the config directory."""
    assert get_settings_file() == isolated_config / "settings.json"


def test_save_and_load():
    """Test saved values are parsed and read back."""
    path = save_settings({"seed": 7, "exhaustive_cap": "10"})
    assert json.loads(path.read_text()) == {"exhaustive_cap": 10, "seed": 7}
    settings = load_settings()
    assert settings["seed"] == 7
    assert settings["exhaustive_cap"] == 10
    assert settings["precision"] == DEFAULT_SETTINGS["precision"]


def test_unknown_keys_are_not_saved():
    """Test unknown keys are dropped on save."""
    path = save_settings({"seed": 1, "colour": "red"})
    assert "colour" not in json.loads(path.read_text())


def test_environment_beats_file(monkeypatch):
    """Test an environment variable overrides the saved value."""
    save_settings({"seed": 7})
    monkeypatch.setenv(f"{ENV_PREFIX}SEED", "11")
    assert load_settings()["seed"] == 11


def test_bad_environment_value(monkeypatch):
    """Test an invalid environment value names its variable."""
    monkeypatch.setenv(f"{ENV_PREFIX}WORKERS", "0")
    with pytest.raises(ValueError, match="URNWALK_WORKERS"):
        env_overrides()


def test_corrupted_file_falls_back_to_defaults(capsys):
    """Test unreadable JSON falls back to defaults with a warning."""
    get_settings_file().write_text("{not json")
    assert load_settings() == DEFAULT_SETTINGS
    assert "Error loading settings" in capsys.readouterr().err


def test_parse_setting():
    """Test conversion and rejection of single settings."""
    assert parse_setting("bench_timeout", "2.5") == 2.5
    with pytest.raises(ValueError, match="unknown setting"):
        parse_setting("colour", "red")
    with pytest.raises(ValueError, match="invalid value"):
        parse_setting("trials", "many")
    with pytest.raises(ValueError, match="bench_timeout"):
        parse_setting("bench_timeout", "-1")
    assert parse_setting("bench_timeout", "0") == 0
