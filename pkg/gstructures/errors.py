"""
Exception hierarchy for the exterior-calculus engine and the CLI
"""

from typing import Optional


class GStructureError(Exception):
    """Base class for every error raised by gstructures"""


class RingError(GStructureError):
    """Invalid ring declaration or an operation mixing rings"""


class MissingRuleError(GStructureError):
    """A derivation or exterior-derivative rule is missing for a generator"""

    def __init__(self, generator: str, rule: str):
        self.generator = generator
        self.rule = rule
        super().__init__(f"generator '{generator}' has no rule for '{rule}'")


class RelationViolationError(RingError):
    """A substitution sends a relation to a nonzero element"""


class ExpressionError(GStructureError):
    """Expression text outside the documented grammar"""


class FrameError(GStructureError):
    """Frame mismatch, malformed index tuple or d∘d ≠ 0 on a strict frame"""


class InconsistentMapError(FrameError):
    """A pullback map does not commute with d"""


class StructureError(GStructureError):
    """Structure kind mismatch or a degenerate structure"""


class NameCollisionError(StructureError):
    """A lift would reuse a generator or coframe name already in the frame"""


class CatalogError(GStructureError):
    """Unknown catalog entry"""


class StructureFileError(GStructureError):
    """Structure file rejected, with the JSON location of the problem"""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        self.message = message
        where = f" at {location}" if location else ""
        super().__init__(f"{message}{where}")
