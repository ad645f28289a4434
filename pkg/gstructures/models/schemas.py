"""
Structure file and report models

A structure file is one JSON document describing a ring, a frame and a
structure on it. Coframe indices are 1-based; coefficients are expression
strings in the ring's generators (integers are accepted and read as text).
"""

from typing import Annotated, Dict, List, Optional, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, field_validator

from gstructures.models.enums import EvolutionKind, StructureKind


def _as_text(value):
    if isinstance(value, bool):
        raise ValueError("booleans are not expressions")
    if isinstance(value, int):
        return str(value)
    return value


Expression = Annotated[str, BeforeValidator(_as_text)]


class TermSpec(BaseModel):
    """One term coeff · e^{i1}∧…∧e^{ik}"""
    model_config = ConfigDict(extra="forbid")

    coeff: Expression = Field(default="1", description="Expression in the ring generators")
    indices: List[int] = Field(default_factory=list, description="1-based coframe indices")

    @field_validator("indices")
    @classmethod
    def distinct_indices(cls, v: List[int]) -> List[int]:
        if any(i < 1 for i in v):
            raise ValueError(f"coframe indices are 1-based, got {v}")
        if len(set(v)) != len(v):
            raise ValueError(f"repeated coframe index in {v}")
        return v


FormTerms = List[TermSpec]


class GeneratorModel(BaseModel):
    """A ring generator; derivations["d"] is its exterior derivative as a 1-form"""
    model_config = ConfigDict(extra="forbid")

    name: str
    relation: Optional[str] = Field(default=None, description="'g^k = p' or 'g*p = 1'")
    derivations: Dict[str, Union[FormTerms, Expression]] = Field(default_factory=dict)


class RingModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = ""
    derivations: List[str] = Field(default_factory=list)
    generators: List[GeneratorModel] = Field(default_factory=list)


class CoframeModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    names: List[str] = Field(..., min_length=1)
    d: Dict[str, FormTerms] = Field(default_factory=dict, description="Exterior derivative of each coframe element")


class StructureConstantModel(BaseModel):
    """cⁱⱼₖ in deⁱ = Σ cⁱⱼₖ eʲ∧eᵏ"""
    model_config = ConfigDict(extra="forbid")

    i: int = Field(..., ge=1)
    j: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    coeff: Expression = "1"


class StructureModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: StructureKind
    name: str = ""
    forms: Dict[str, FormTerms]


class FamilyModel(BaseModel):
    """Marks the structure as a family in a time generator"""
    model_config = ConfigDict(extra="forbid")

    time: str
    dt: Optional[str] = Field(default=None, description="Time coframe element, d<time> when omitted")
    equations: Optional[EvolutionKind] = None

    @property
    def dt_name(self) -> str:
        return self.dt or f"d{self.time}"


class SampleModel(BaseModel):
    """Numeric sampling recipe for the positivity check"""
    model_config = ConfigDict(extra="forbid")

    spheres: List[List[str]] = Field(default_factory=list)
    normal: List[str] = Field(default_factory=list)
    constants: Dict[str, float] = Field(default_factory=dict)
    parameters: Dict[str, float] = Field(default_factory=dict)
    samples: Optional[int] = Field(default=None, ge=1)


class StructureFile(BaseModel):
    """Top-level structure file"""
    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "name": "flat_su2",
                "ring": {"generators": []},
                "coframe": {"names": ["e1", "e2", "e3", "e4", "e5"]},
                "structure": {
                    "kind": "su2",
                    "forms": {
                        "eta": [{"coeff": "1", "indices": [5]}],
                        "omega1": [{"indices": [1, 2]}, {"indices": [3, 4]}],
                        "omega2": [{"indices": [1, 3]}, {"indices": [4, 2]}],
                        "omega3": [{"indices": [1, 4]}, {"indices": [2, 3]}],
                    },
                },
                "expect": {"hypo": True},
            }
        },
    )

    format_version: int = 1
    name: str = ""
    ring: RingModel = Field(default_factory=RingModel)
    coframe: CoframeModel
    strict: bool = True
    locus: List[FormTerms] = Field(default_factory=list)
    orientation: Optional[List[str]] = None
    orthonormal: bool = False
    metric: Optional[List[List[Expression]]] = None
    structure_constants: List[StructureConstantModel] = Field(default_factory=list)
    structure: StructureModel
    clear: Optional[Expression] = Field(default=None, description="Unit multiplied into residuals before zero-testing")
    family: Optional[FamilyModel] = None
    vectors: Dict[str, Dict[str, Expression]] = Field(default_factory=dict)
    sample: Optional[SampleModel] = None
    expect: Dict[str, bool] = Field(default_factory=dict)


# =============================================================================
# Reports
# =============================================================================

class ConditionResult(BaseModel):
    condition: str
    residual: str
    verdict: bool


class CheckReportModel(BaseModel):
    title: str = ""
    conditions: List[ConditionResult] = Field(default_factory=list)
    flags: Dict[str, bool] = Field(default_factory=dict)


class PositivityModel(BaseModel):
    samples: int
    min_eigenvalue: float
    tolerance: float
    passed: bool


class CheckOutput(BaseModel):
    """Everything `check` and `evolve-verify` report for one file"""
    source: str
    name: str = ""
    kind: StructureKind
    reports: List[CheckReportModel] = Field(default_factory=list)
    flags: Dict[str, bool] = Field(default_factory=dict)
    expected: Dict[str, bool] = Field(default_factory=dict)
    mismatches: List[str] = Field(default_factory=list)
    positivity: Optional[PositivityModel] = None
    passed: bool = True
