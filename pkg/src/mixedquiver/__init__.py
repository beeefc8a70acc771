"""Exact computation in mixed quiver algebras."""

__version__ = "0.1.0"
