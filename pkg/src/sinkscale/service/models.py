"""Request and response schemas for the scaling service.

Exact values cross the wire as canonical "p/q" strings (or surd/cube-root
text forms); float-mode matrices carry raw floats.  The same models back
both the HTTP app and the in-process command-line client.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from ..matrices import Matrix

Scalar = Union[str, int, float]


class MatrixModel(BaseModel):
    """Wire form of a matrix; entries are "p/q" strings in rational mode."""

    rows: int
    cols: int
    mode: Literal["rational", "float"] = "rational"
    entries: list[list[Scalar]]

    @classmethod
    def from_matrix(cls, m: Matrix) -> "MatrixModel":
        return cls(**m.to_json_dict())

    def to_matrix(self) -> Matrix:
        return Matrix.from_json_dict(self.model_dump())


class FamilySelector(BaseModel):
    """Inline family choice: a tag A1..A7 with K, or MBN block parameters."""

    family: str
    K: Optional[Scalar] = None
    k: int = 1
    l: int = 2
    M: Optional[Scalar] = None
    B: Optional[Scalar] = None
    N: Optional[Scalar] = None


class ScaleRequest(BaseModel):
    """Run the alternate scaling on a matrix or a named family pattern.

    Exactly one of ``matrix`` and ``family`` must be set, and at most one
    of ``steps`` (elementary scalings), ``pairs`` (row+column rounds) and
    ``tolerance`` (float-mode convergence target, the default path).
    """

    matrix: Optional[MatrixModel] = None
    family: Optional[FamilySelector] = None
    mode: Optional[Literal["rational", "float"]] = None
    steps: Optional[int] = None
    pairs: Optional[int] = None
    tolerance: Optional[float] = None
    max_pairs: int = 1000
    include_trace: bool = False
    digits: int = 10


class TraceStep(BaseModel):
    index: int
    kind: Literal["row", "column"]
    entries: list[list[Scalar]]
    row_sums: list[str]
    col_sums: list[str]


class ScaleResponse(BaseModel):
    matrix: MatrixModel
    display: list[list[str]]
    steps_taken: int
    residual: Optional[float] = None
    converged: Optional[bool] = None
    trace: Optional[list[TraceStep]] = None


class LimitRequest(BaseModel):
    """Closed-form limit of a family, or its asymptotic block limit."""

    family: FamilySelector
    allow_degenerate: bool = False
    digits: int = 10
    asymptotic: Optional[Literal["ratio-to-infinity", "ratio-to-zero"]] = None


class EntryModel(BaseModel):
    exact: Optional[str] = None
    numeric: str


class LimitResponse(BaseModel):
    family: str
    shape: Optional[str] = None
    degenerate: bool = False
    direction: Optional[str] = None
    entries: dict[str, EntryModel] = {}
    scaling: list[EntryModel] = []
    matrix: MatrixModel
    display: list[list[str]]


class ClassifyRequest(BaseModel):
    matrix: MatrixModel


class WitnessModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: str = Field(alias="lambda")
    P: list[int]
    Q: list[int]


class ClassifyResponse(BaseModel):
    family: str
    K: str
    witness: WitnessModel


class ApproxRequest(BaseModel):
    """Cube-root approximant table; ``cf_terms`` adds the side-by-side
    continued-fraction comparison."""

    K: Scalar
    steps: int
    cf_terms: Optional[int] = None


class ApproxRow(BaseModel):
    level: int
    a13: str
    a22: str
    a31: str
    estimates: list[str]
    errors: list[str]


class ApproxResponse(BaseModel):
    K: str
    limit_is_rational: bool
    exact_cbrt: Optional[str] = None
    rows: list[ApproxRow]
    comparison: Optional[dict] = None


class CfracRequest(BaseModel):
    cbrt: Scalar
    minus_one: bool = False
    terms: int


class CfracResponse(BaseModel):
    terms: list[int]
    convergents: list[str]
    finite: bool
    value: Optional[str] = None
