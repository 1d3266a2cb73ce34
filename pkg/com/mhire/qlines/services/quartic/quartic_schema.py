from pydantic import BaseModel, Field
from typing import Dict, List, Optional


class SurfaceInput(BaseModel):
    """
    Schema for a quartic surface read from a file
    """
    p: int = Field(..., ge=2, description="Characteristic of the ground field")
    coeffs: Dict[str, int] = Field(..., description="Monomial 'i0 i1 i2 i3' to integer coefficient")
    name: Optional[str] = None
    extension_degree: Optional[int] = Field(None, ge=1, description="Tower depth hint for sweeps")

    class Config:
        json_schema_extra = {
            "example": {
                "p": 13,
                "name": "schur",
                "coeffs": {"4 0 0 0": 1, "1 0 0 3": -1, "0 4 0 0": -1, "0 1 3 0": 1}
            }
        }


class SingularPointReport(BaseModel):
    """
    Schema for one singular point of a surface
    """
    point: List[str]
    field_degree: int
    orbit: int
    ade_type: str
    milnor: Optional[int] = None
    tangent_cone_rank: int
    lines_through: int = 0

    class Config:
        json_schema_extra = {
            "example": {
                "point": ["0", "0", "0", "1"],
                "field_degree": 1,
                "orbit": 0,
                "ade_type": "A1",
                "milnor": 1,
                "tangent_cone_rank": 3,
                "lines_through": 2
            }
        }
