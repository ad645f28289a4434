"""Enums and pydantic models"""

from gstructures.models.enums import EvolutionKind, LiftKind, StructureKind
from gstructures.models.schemas import CheckOutput, StructureFile

__all__ = [
    "EvolutionKind",
    "LiftKind",
    "StructureKind",
    "CheckOutput",
    "StructureFile",
]
