"""
Enum definitions for structure kinds, lifts and evolution systems
"""

from enum import Enum


class StructureKind(str, Enum):
    """Kind of G-structure carried by a file or catalog entry"""
    SU2 = "su2"
    SU3 = "su3"
    G2 = "g2"


class LiftKind(str, Enum):
    """Dimension-raising constructions"""
    PRODUCT = "product"          # SU(2) -> SU(3) on N x R
    CONE = "cone"                # Calabi-Yau cone
    SIN_CONE_NK = "sin-cone-nk"  # sine-cone, nearly Kahler
    G2 = "g2"                    # SU(3) -> G2 on M x R
    SIN_CONE_G2 = "sin-cone-g2"  # sine-cone, nearly parallel

    @property
    def source_kind(self) -> StructureKind:
        if self in (LiftKind.G2, LiftKind.SIN_CONE_G2):
            return StructureKind.SU3
        return StructureKind.SU2


class EvolutionKind(str, Enum):
    """Evolution systems whose residuals can be verified"""
    CONTI_SALAMON = "cs"
    NEARLY_HYPO = "nearly-hypo"
    NEARLY_HALF_FLAT = "nhf"
    HITCHIN = "hitchin"

    @property
    def structure_kind(self) -> StructureKind:
        if self in (EvolutionKind.CONTI_SALAMON, EvolutionKind.NEARLY_HYPO):
            return StructureKind.SU2
        return StructureKind.SU3
