"""Request and response models for the HTTP service.

Rational numbers cross the wire as strings ("10/3", "0.21") or JSON
integers; strict field types keep JSON floats out, since binary floats
silently misrepresent decimal inputs.
"""

from __future__ import annotations

from typing import Any, Generic, Literal, Optional, TypeVar, Union

from pydantic import BaseModel, Field, StrictInt, StrictStr

RatValue = Union[StrictStr, StrictInt]
PointValue = tuple[RatValue, RatValue]
FormValue = tuple[RatValue, RatValue, RatValue, RatValue]
IntPair = tuple[int, int]


class PolygonModel(BaseModel):
    name: Optional[str] = None
    vertices: list[PointValue] = Field(min_length=1)


class CaseModel(BaseModel):
    name: str = "custom"
    vertices: list[PointValue] = Field(min_length=3, max_length=3)
    width_directions: list[IntPair]
    numerators: list[FormValue]
    q_constraints: list[FormValue]
    witness_pairs: list[IntPair]


# ---------------------------------------------------------------- requests


class WidthRequest(BaseModel):
    polygon: PolygonModel


class RatdiamRequest(BaseModel):
    polygon: PolygonModel


class FreeRequest(BaseModel):
    polygon: PolygonModel
    threads: int = Field(default=1, ge=1, le=64)


class MaximalRequest(BaseModel):
    polygon: PolygonModel
    shape_bound: int = Field(default=4, ge=1, le=8)
    threads: int = Field(default=1, ge=1, le=64)


class Flt1Request(BaseModel):
    x: RatValue
    y: RatValue


class CertifyRequest(BaseModel):
    case: Union[StrictStr, CaseModel]
    target: RatValue
    max_depth: int = Field(default=48, ge=0, le=128)
    max_boxes: int = Field(default=1_000_000, ge=1)


class QuadRequest(BaseModel):
    family: Literal["rect", "cross"]
    kappa: RatValue
    lam: RatValue
    mu: RatValue
    nu: RatValue


# ---------------------------------------------------------------- responses


class PolygonOut(BaseModel):
    # Computed polygons (violations, witnesses, constructions) are unnamed;
    # omitting the field keeps responses byte-identical to replayed results.
    vertices: list[tuple[str, str]]


class WidthOut(BaseModel):
    width: str
    direction: IntPair


class ChordOut(BaseModel):
    length: str
    direction: IntPair
    anchor: tuple[str, str]


class FreenessOut(BaseModel):
    ring: str
    free: bool
    violation: Optional[PolygonOut] = None


class WitnessOut(BaseModel):
    facet_index: int
    kind: str
    triangle: PolygonOut


class FacetOut(BaseModel):
    index: int
    endpoints: tuple[tuple[str, str], tuple[str, str]]
    status: str
    witness: Optional[WitnessOut] = None


class MaximalOut(BaseModel):
    ring: str
    verdict: str
    facets: list[FacetOut]


class Flt1Out(BaseModel):
    value: str


class CaseOut(BaseModel):
    name: str
    vertices: list[tuple[str, str]]
    width_directions: list[IntPair]
    numerators: list[tuple[str, str, str, str]]
    q_constraints: list[tuple[str, str, str, str]]
    witness_pairs: list[IntPair]


class LeafOut(BaseModel):
    box: list[tuple[str, str]]
    kind: str
    c: Optional[list[str]] = None
    y: Optional[list[str]] = None


class CounterexampleOut(BaseModel):
    point: tuple[str, str, str]
    value: str


class CertificateOut(BaseModel):
    format: str
    target: str
    status: str
    q_constraints: list[tuple[str, str, str, str]]
    numerators: list[tuple[str, str, str, str]]
    box_count: int
    max_depth_reached: int
    leaves: list[LeafOut]
    counterexample: Optional[CounterexampleOut] = None
    counterexample_depth: Optional[int] = None
    reason: Optional[str] = None


class CertifyOut(BaseModel):
    case: CaseOut
    certificate: CertificateOut


class QuadRectOut(BaseModel):
    family: Literal["rect"]
    polygon: PolygonOut
    width_horizontal: str
    width_vertical: str


class QuadCrossOut(BaseModel):
    family: Literal["cross"]
    polygon: PolygonOut
    width_e1: str
    width_halfsum: str
    width_halfdiff: str


ResultT = TypeVar("ResultT")


class Report(BaseModel, Generic[ResultT]):
    format: str
    command: str
    input: dict[str, Any]
    input_sha256: str
    elapsed_ms: float
    result: ResultT


class HealthOut(BaseModel):
    status: str
