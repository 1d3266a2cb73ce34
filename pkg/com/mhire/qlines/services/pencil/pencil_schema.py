from pydantic import BaseModel, Field
from typing import List, Optional


class FiberReportModel(BaseModel):
    """
    Schema for one plane of the pencil through a line
    """
    t: List[str] = Field(..., description="Pencil parameter [t0:t1]")
    plane: List[str] = Field(..., description="Linear form of the plane in the input coordinates")
    classification: str
    components: List[str] = Field(default_factory=list, description="Components of the residual cubic")
    lines_in_plane: List[int] = Field(default_factory=list)
    ramified: Optional[int] = None
    tangent: bool = False

    class Config:
        json_schema_extra = {
            "example": {
                "t": ["0", "1"],
                "plane": ["1", "0", "0", "0"],
                "classification": "PFiber",
                "components": ["x1", "x0 + 2*x1", "x2"],
                "lines_in_plane": [3, 17, 40],
                "ramified": None,
                "tangent": False
            }
        }


class LineReport(BaseModel):
    """
    Schema for one line in a line listing
    """
    index: int
    rows: List[List[str]]
    field_degree: int
    orbit: int
    degree: Optional[int] = None
    singularity: Optional[int] = None
    kind: Optional[str] = None
    type_p: Optional[int] = None
    type_q: Optional[int] = None
    valency: Optional[int] = None
    extended_valency: Optional[int] = None

    class Config:
        json_schema_extra = {
            "example": {
                "index": 0,
                "rows": [["1", "0", "0", "0"], ["0", "1", "0", "0"]],
                "field_degree": 1,
                "orbit": 0,
                "degree": 3,
                "singularity": 0,
                "kind": "First",
                "type_p": 4,
                "type_q": 6,
                "valency": 18,
                "extended_valency": 18
            }
        }


class TangentPlaneModel(BaseModel):
    """
    Schema for the plane tangent along a degree 0 line
    """
    t: List[str]
    plane: List[str]
    conic: str
    conic_rank: Optional[int] = Field(None, description="3 smooth, 2 two lines, 1 double line")
    components: List[str] = Field(default_factory=list, description="Linear factors of the conic when it splits")
    lines_in_plane: List[int] = Field(default_factory=list)

    class Config:
        json_schema_extra = {
            "example": {
                "t": ["0", "1"],
                "plane": ["1", "0", "0", "0"],
                "conic": "x1*x2",
                "conic_rank": 2,
                "components": ["x1", "x2"],
                "lines_in_plane": [3, 5]
            }
        }


class DossierReport(BaseModel):
    """
    Schema for the full analysis of one line
    """
    line: LineReport
    alpha: str
    beta: str
    singular_points: List[List[str]] = Field(default_factory=list)
    eliminant_degree: Optional[int] = None
    inflection_multiplicities: List[int] = Field(default_factory=list)
    ramification: List[str] = Field(default_factory=list, description="Wronskian factors as 'factor^mult (index e)'")
    ramification_case: Optional[str] = None
    fibers: List[FiberReportModel] = Field(default_factory=list)
    twin: Optional[int] = None
    family_z: Optional[dict] = None
    tangent_plane: Optional[TangentPlaneModel] = None
    violations: List[str] = Field(default_factory=list)
    findings: List[str] = Field(default_factory=list)

    class Config:
        json_schema_extra = {
            "example": {
                "line": LineReport.Config.json_schema_extra["example"],
                "alpha": "x3^3",
                "beta": "x2^3",
                "singular_points": [],
                "eliminant_degree": None,
                "inflection_multiplicities": [],
                "ramification": ["x0*x1^2 (index 3)"],
                "ramification_case": "C",
                "fibers": [],
                "twin": None,
                "family_z": {"q2": "0", "q4": "x0^4 - x1^4", "sigma_preserves": True},
                "tangent_plane": None,
                "violations": [],
                "findings": []
            }
        }
