from pydantic import BaseModel, Field
from typing import Dict, List, Optional


class LineClaim(BaseModel):
    """
    Schema for the expected invariants of one named line
    """
    equations: List[List[int]] = Field(..., description="Two linear forms cutting out the line")
    degree: Optional[int] = None
    singularity: Optional[int] = None
    kind: Optional[str] = None
    valency: Optional[int] = None
    extended_valency: Optional[int] = None

    class Config:
        json_schema_extra = {
            "example": {
                "equations": [[1, 0, 0, 0], [0, 1, 0, 0]],
                "degree": 2,
                "singularity": 1,
                "kind": "First",
                "valency": 12,
                "extended_valency": 19
            }
        }


class GoodPrimeExpectation(BaseModel):
    """
    Schema for what the reduction at a good prime must show when it differs from the named prime
    """
    lines: Optional[int] = Field(None, ge=0, description="Line count; None skips the enumeration")
    census: Dict[str, int] = Field(default_factory=dict, description="ADE type to number of singular points")

    class Config:
        json_schema_extra = {
            "example": {
                "lines": 36,
                "census": {"A1": 4}
            }
        }


class ZooExpectation(BaseModel):
    """
    Schema for what a zoo surface is known to carry
    """
    lines: int = Field(..., ge=0, description="Number of lines over the algebraic closure")
    census: Optional[Dict[str, int]] = Field(None, description="ADE type to number of singular points")
    valency_all: Optional[int] = Field(None, description="Common valency of every line")
    line_types: Optional[Dict[str, int]] = Field(None, description="'(p,q) kind' to number of lines")
    line_claims: List[LineClaim] = Field(default_factory=list)
    reported_lines: Optional[int] = Field(None, description="Literature count where it differs from ours")
    good_prime: Optional[GoodPrimeExpectation] = Field(None, description="Checked at the configured good primes")

    class Config:
        json_schema_extra = {
            "example": {
                "lines": 64,
                "census": {},
                "valency_all": 18,
                "line_types": {"(6,0) Second": 16, "(4,6) First": 48},
                "line_claims": []
            }
        }


class ZooEntryModel(BaseModel):
    """
    Schema for one catalogued surface
    """
    name: str
    coeffs: Dict[str, int]
    primes: List[int] = Field(..., description="Characteristics the expectation is checked at")
    method: str = "solver"
    max_degree: Optional[int] = None
    expected: ZooExpectation
    note: str = ""

    class Config:
        json_schema_extra = {
            "example": {
                "name": "gonzalez-rams",
                "coeffs": {"4 0 0 0": 1, "1 0 3 0": 1, "0 2 1 1": 1, "1 0 0 3": 1},
                "primes": [101, 9973],
                "method": "solver",
                "max_degree": None,
                "expected": {"lines": 39, "census": {"A1": 3, "A3": 1}},
                "note": "39 lines over C; no reduction carries more"
            }
        }


class VerifyRow(BaseModel):
    """
    Schema for the outcome of checking one zoo entry at one prime
    """
    entry: str
    p: int
    expected_lines: Optional[int] = None
    found_lines: Optional[int] = None
    census: Dict[str, int] = Field(default_factory=dict)
    mismatches: List[str] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    passed: bool
    seconds: Optional[float] = None

    class Config:
        json_schema_extra = {
            "example": {
                "entry": "ex42",
                "p": 5,
                "expected_lines": 42,
                "found_lines": 42,
                "census": {"A1": 5},
                "mismatches": [],
                "notes": [],
                "passed": True,
                "seconds": None
            }
        }
