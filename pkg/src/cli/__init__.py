"""
Command-line interfaces for the application.
"""

__all__ = []

# urnwalk CLI package
