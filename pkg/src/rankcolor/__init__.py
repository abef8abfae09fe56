"""Rank GA search, verification and bounds for connected complete edge-colorings of K_n."""

from rankcolor.coloring import EdgeColoring, VerificationReport, count_colors, verify
from rankcolor.errors import DomainError, ValidationError

__all__ = [
    "DomainError",
    "EdgeColoring",
    "ValidationError",
    "VerificationReport",
    "count_colors",
    "verify",
]

__version__ = "0.1.0"
