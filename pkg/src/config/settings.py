"""
Settings persistence for anticorrelated-walk.

Handles loading and saving defaults to a JSON file in a
platform-appropriate configuration directory, and applying
URNWALK_* environment overrides (a .env file is honoured).
"""
import json
import os
import sys
from pathlib import Path
from typing import Any, Callable

from dotenv import load_dotenv
from platformdirs import user_config_dir

from ..common.verbose import vprint

# Load .env file
load_dotenv()

# Application name for config directory
APP_NAME = "anticorrelated-walk"
APP_AUTHOR = "anticorrelated-walk"

ENV_PREFIX = "URNWALK_"

# Default settings
DEFAULT_SETTINGS: dict[str, Any] = {
    'exhaustive_cap': 8,        # largest delta the exhaustive method accepts
    'precision': 6,             # decimal places, as in the published tables
    'workers': 1,
    'seed': 20050930,
    'trials': 100_000,
    'sample_batch': 100_000,
    'bench_timeout': 300.0,     # seconds per benchmark cell, 0 = no timeout
    'output_dir': 'out',
}


def _non_negative_int(value: Any) -> int:
    number = int(value)
    if number < 0:
        raise ValueError(f"must be >= 0, got {number}")
    return number


def _positive_int(value: Any) -> int:
    number = int(value)
    if number < 1:
        raise ValueError(f"must be >= 1, got {number}")
    return number


def _non_negative_float(value: Any) -> float:
    number = float(value)
    if number < 0:
        raise ValueError(f"must be >= 0, got {number}")
    return number


PARSERS: dict[str, Callable[[Any], Any]] = {
    'exhaustive_cap': _non_negative_int,
    'precision': _non_negative_int,
    'workers': _positive_int,
    'seed': _non_negative_int,
    'trials': _positive_int,
    'sample_batch': _positive_int,
    'bench_timeout': _non_negative_float,
    'output_dir': str,
}


def get_config_dir() -> Path:
    """Get the configuration directory (URNWALK_CONFIG_DIR or the platform default)."""
    override = os.getenv(f"{ENV_PREFIX}CONFIG_DIR")
    config_dir = Path(override) if override else Path(user_config_dir(APP_NAME, APP_AUTHOR))
    config_dir.mkdir(parents=True, exist_ok=True)
    return config_dir


def get_settings_file() -> Path:
    """Get the path to the settings file."""
    return get_config_dir() / "settings.json"


def parse_setting(key: str, value: Any) -> Any:
    """
    Validate and convert one setting.

    Raises:
        ValueError: If the key is unknown or the value does not parse
    """
    if key not in PARSERS:
        raise ValueError(f"unknown setting {key!r} (known: {', '.join(sorted(PARSERS))})")
    try:
        return PARSERS[key](value)
    except (TypeError, ValueError) as e:
        raise ValueError(f"invalid value {value!r} for setting {key!r}: {e}") from None


def env_overrides() -> dict[str, Any]:
    """
    Settings given through URNWALK_* environment variables.

    Raises:
        ValueError: If a variable is set to something that does not parse
    """
    overrides = {}
    for key in DEFAULT_SETTINGS:
        name = f"{ENV_PREFIX}{key.upper()}"
        raw = os.getenv(name)
        if raw is None or raw == "":
            continue
        try:
            overrides[key] = parse_setting(key, raw)
        except ValueError as e:
            raise ValueError(f"{name}: {e}") from None
    return overrides


def load_settings() -> dict[str, Any]:
    """
    Load the effective settings.

    Defaults are overlaid with the settings file, then with environment
    overrides. A missing file means defaults; a corrupted file is reported
    and ignored.
    """
    settings = DEFAULT_SETTINGS.copy()
    settings_file = get_settings_file()

    if settings_file.exists():
        try:
            with open(settings_file, 'r', encoding='utf-8') as f:
                saved_settings = json.load(f)
            # Merge saved settings with defaults (in case new settings were added)
            for key, value in saved_settings.items():
                if key in DEFAULT_SETTINGS:
                    settings[key] = parse_setting(key, value)
            vprint(f"Loaded settings from {settings_file}")
        except Exception as e:
            print(f"Error loading settings: {e}", file=sys.stderr)
            print("Using default settings", file=sys.stderr)
            settings = DEFAULT_SETTINGS.copy()

    settings.update(env_overrides())
    return settings


def save_settings(settings: dict[str, Any]) -> Path:
    """
    Save settings to the settings file.

    Only known keys are written; each is validated first.

    Raises:
        ValueError: If a value does not parse
    """
    to_save = {key: parse_setting(key, value) for key, value in settings.items() if key in DEFAULT_SETTINGS}
    settings_file = get_settings_file()
    with open(settings_file, 'w', encoding='utf-8') as f:
        json.dump(to_save, f, indent=2, sort_keys=True)
    vprint(f"Settings saved to {settings_file}")
    return settings_file


def saved_settings() -> dict[str, Any]:
    """Raw contents of the settings file, {} when there is none."""
    settings_file = get_settings_file()
    if not settings_file.exists():
        return {}
    with open(settings_file, 'r', encoding='utf-8') as f:
        return json.load(f)
