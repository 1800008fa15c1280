"""Exact palindromic lengths and widths in class-2 nilpotent groups and their
quotients by squares of the generators."""

from .words import GroupSpec, Letter, parse, render

__version__ = "0.1.0"

__all__ = ["GroupSpec", "Letter", "parse", "render", "__version__"]
