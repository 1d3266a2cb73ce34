from pydantic import BaseModel, Field
from typing import Dict, List, Optional

from com.mhire.qlines.services.pencil.pencil_schema import LineReport
from com.mhire.qlines.services.quartic.quartic_schema import SingularPointReport


class GraphSummary(BaseModel):
    """
    Schema for the line graph of a surface
    """
    vertices: int
    edges: int
    meetings: int = Field(..., description="Pairs of lines meeting anywhere, singular points included")
    triangle_free: bool
    quadrangle_free: bool
    parabolic: Optional[str] = Field(None, description="Extended Dynkin type of the parabolic subgraph found")
    parabolic_vertices: List[int] = Field(default_factory=list)
    parabolic_valency: Optional[int] = None

    class Config:
        json_schema_extra = {
            "example": {
                "vertices": 64,
                "edges": 576,
                "meetings": 576,
                "triangle_free": False,
                "quadrangle_free": False,
                "parabolic": "~A2",
                "parabolic_vertices": [0, 5, 9],
                "parabolic_valency": 48
            }
        }


class LatticeSummary(BaseModel):
    """
    Schema for the form spanned by the lines and the hyperplane class
    """
    size: int
    rank: int
    n_plus: int
    n_minus: int
    n_zero: int
    delta: int
    consistent: bool = Field(..., description="n_plus <= 1 and rank <= delta")

    class Config:
        json_schema_extra = {
            "example": {
                "size": 65,
                "rank": 20,
                "n_plus": 1,
                "n_minus": 19,
                "n_zero": 45,
                "delta": 22,
                "consistent": True
            }
        }


class AnalysisReport(BaseModel):
    """
    Schema for the complete analysis of one surface
    """
    name: Optional[str] = None
    p: int
    fingerprint: str
    method: str
    complete: bool
    line_count: int
    orbit_sizes: Dict[str, int] = Field(default_factory=dict, description="Orbit size to number of orbits")
    lines: List[LineReport] = Field(default_factory=list)
    singular_points: List[SingularPointReport] = Field(default_factory=list)
    census: Dict[str, int] = Field(default_factory=dict)
    milnor_total: int = 0
    split_planes: int = Field(0, description="Planes through a singular point splitting into four lines")
    graph: Optional[GraphSummary] = None
    lattice: Optional[LatticeSummary] = None
    violations: List[str] = Field(default_factory=list)
    findings: List[str] = Field(default_factory=list)
    timing: Optional[Dict[str, float]] = None

    class Config:
        json_schema_extra = {
            "example": {
                "name": "schur",
                "p": 13,
                "fingerprint": "3f9a...",
                "method": "solver",
                "complete": True,
                "line_count": 64,
                "orbit_sizes": {"1": 16, "2": 24},
                "lines": [LineReport.Config.json_schema_extra["example"]],
                "singular_points": [],
                "census": {},
                "milnor_total": 0,
                "split_planes": 0,
                "graph": GraphSummary.Config.json_schema_extra["example"],
                "lattice": LatticeSummary.Config.json_schema_extra["example"],
                "violations": [],
                "findings": [],
                "timing": None
            }
        }


class EnumerationRow(BaseModel):
    """
    Schema for one configuration of the quadrangle-free rank check
    """
    a: int
    b: int
    c: int
    d: int
    rank: int
    lines_rank: int

    class Config:
        json_schema_extra = {
            "example": {"a": 8, "b": 6, "c": 6, "d": 0, "rank": 24, "lines_rank": 22}
        }


class EnumerationReport(BaseModel):
    """
    Schema for the quadrangle-free rank check at one value of delta
    """
    delta: int
    configurations: int
    min_rank: int
    margin: int = Field(..., description="min_rank - delta; positive when every rank exceeds delta")
    counterexamples: List[EnumerationRow] = Field(default_factory=list)
    flagged: List[EnumerationRow] = Field(default_factory=list, description="Lines alone span rank <= delta")
    passed: bool

    class Config:
        json_schema_extra = {
            "example": {
                "delta": 22,
                "configurations": 946,
                "min_rank": 23,
                "margin": 1,
                "counterexamples": [],
                "flagged": [EnumerationRow.Config.json_schema_extra["example"]],
                "passed": True
            }
        }
