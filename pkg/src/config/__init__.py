# Config module for anticorrelated-walk

from .settings import DEFAULT_SETTINGS, load_settings, save_settings

__all__ = ['DEFAULT_SETTINGS', 'load_settings', 'save_settings']
