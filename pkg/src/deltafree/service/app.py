"""HTTP service exposing the library's decision procedures.

All endpoints accept and return exact rationals encoded as strings; domain
errors (malformed rationals, violated preconditions such as running a
maximality check on a non-free polygon) surface as HTTP 400 with a plain
message.
"""

from __future__ import annotations

from typing import Union

from fastapi import FastAPI, HTTPException

from .. import reports
from .schemas import (
    CaseModel,
    CertifyOut,
    CertifyRequest,
    ChordOut,
    Flt1Out,
    Flt1Request,
    FreenessOut,
    FreeRequest,
    HealthOut,
    MaximalOut,
    MaximalRequest,
    PolygonModel,
    QuadCrossOut,
    QuadRectOut,
    QuadRequest,
    RatdiamRequest,
    Report,
    WidthOut,
    WidthRequest,
)

__all__ = ["create_app"]


def _polygon_payload(m: PolygonModel) -> dict:
    doc: dict = {"vertices": [list(v) for v in m.vertices]}
    if m.name is not None:
        doc["name"] = m.name
    return doc


def _run(runner, payload: dict) -> dict:
    try:
        return runner(payload)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def create_app() -> FastAPI:
    app = FastAPI(
        title="deltafree",
        version="0.1.0",
        description=(
            "Exact rational decisions about plane convex polygons: lattice "
            "width, rational diameter, Z/R-delta2-freeness, inclusion "
            "maximality, and certified bounds for parametric width ratios."
        ),
    )

    @app.get("/healthz", response_model=HealthOut)
    def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/width", response_model=Report[WidthOut])
    def width(req: WidthRequest) -> dict:
        return _run(reports.run_width, {"polygon": _polygon_payload(req.polygon)})

    @app.post("/ratdiam", response_model=Report[ChordOut])
    def ratdiam(req: RatdiamRequest) -> dict:
        return _run(reports.run_ratdiam, {"polygon": _polygon_payload(req.polygon)})

    @app.post("/free/{ring}", response_model=Report[FreenessOut])
    def free(ring: str, req: FreeRequest) -> dict:
        payload = {
            "ring": ring,
            "polygon": _polygon_payload(req.polygon),
            "threads": req.threads,
        }
        return _run(reports.run_free, payload)

    @app.post("/maximal/{ring}", response_model=Report[MaximalOut])
    def maximal(ring: str, req: MaximalRequest) -> dict:
        payload = {
            "ring": ring,
            "polygon": _polygon_payload(req.polygon),
            "shape_bound": req.shape_bound,
            "threads": req.threads,
        }
        return _run(reports.run_maximal, payload)

    @app.post("/flt1", response_model=Report[Flt1Out])
    def flt1(req: Flt1Request) -> dict:
        return _run(reports.run_flt1, {"x": req.x, "y": req.y})

    @app.post("/certify", response_model=Report[CertifyOut])
    def certify(req: CertifyRequest) -> dict:
        case = req.case if isinstance(req.case, str) else req.case.model_dump(mode="json")
        payload = {
            "case": case,
            "target": req.target,
            "max_depth": req.max_depth,
            "max_boxes": req.max_boxes,
        }
        return _run(reports.run_certify, payload)

    @app.post("/quad", response_model=Report[Union[QuadRectOut, QuadCrossOut]])
    def quad(req: QuadRequest) -> dict:
        payload = {
            "family": req.family,
            "kappa": req.kappa,
            "lam": req.lam,
            "mu": req.mu,
            "nu": req.nu,
        }
        return _run(reports.run_quad, payload)

    return app
