"""Exact rings and exterior algebra"""

from gstructures.core.exterior import (
    BilinearForm,
    DifferentialFrame,
    Form,
    FrameMorphism,
    FrameVector,
    LocusResult,
    pullback,
    wedge,
)
from gstructures.core.ring import GeneratorSpec, Ring, RingElement, RingHomomorphism

__all__ = [
    "BilinearForm",
    "DifferentialFrame",
    "Form",
    "FrameMorphism",
    "FrameVector",
    "LocusResult",
    "pullback",
    "wedge",
    "GeneratorSpec",
    "Ring",
    "RingElement",
    "RingHomomorphism",
]
