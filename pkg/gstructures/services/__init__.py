"""Structures, lifts, Lie algebra families, catalog and file I/O"""

from gstructures.services.structures import (
    CheckReport,
    G2Structure,
    SU2Structure,
    SU3Structure,
    check_compatibility,
    classify,
)
from gstructures.services.lifts import apply_lift, evolution_residual

__all__ = [
    "CheckReport",
    "G2Structure",
    "SU2Structure",
    "SU3Structure",
    "check_compatibility",
    "classify",
    "apply_lift",
    "evolution_residual",
]
