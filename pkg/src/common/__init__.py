"""
Common utilities shared across features.
"""

from .verbose import set_verbose, vprint, timed

__all__ = ['set_verbose', 'vprint', 'timed']
