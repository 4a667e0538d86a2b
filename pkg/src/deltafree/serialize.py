"""JSON encoding of polygons, verdicts and certificates.

Rationals travel as strings ("10/3", "-4/3", "0.21") or JSON integers --
never as JSON floats, which are rejected loudly because they silently
misrepresent decimal inputs.  All encoders are deterministic, so encoded
documents are stable under round-trips.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Optional

from .flatness import (
    CaseSpec,
    Leaf,
    LinearForm3,
    ParamPoint,
    RatioCertificate,
)
from .geometry import Point, Polygon, convex_hull
from .lattice import ChordResult, WidthResult
from .freeness import FreenessVerdict
from .maximality import FacetReport, LockWitness, MaximalityReport

__all__ = [
    "rat_to_json",
    "rat_from_json",
    "point_to_json",
    "point_from_json",
    "polygon_to_json",
    "polygon_from_json",
    "width_to_json",
    "chord_to_json",
    "freeness_to_json",
    "witness_to_json",
    "facet_report_to_json",
    "maximality_report_to_json",
    "param_point_to_json",
    "param_point_from_json",
    "case_to_json",
    "case_from_json",
    "certificate_to_json",
    "certificate_from_json",
    "canonical_json",
    "input_digest",
]

CERTIFICATE_FORMAT = "ratio-certificate/1"


def rat_to_json(v: Fraction) -> str:
    return str(v)


def rat_from_json(v: Any) -> Fraction:
    if isinstance(v, bool):
        raise ValueError(f"not a rational: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {v!r}") from exc
    if isinstance(v, float):
        raise ValueError(
            f"floats are not accepted ({v!r}); encode rationals as strings"
        )
    raise ValueError(f"not a rational: {v!r}")


def point_to_json(p: Point) -> list[str]:
    return [rat_to_json(p.x), rat_to_json(p.y)]


def point_from_json(v: Any) -> Point:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise ValueError(f"a point is a [x, y] pair, got {v!r}")
    return Point(rat_from_json(v[0]), rat_from_json(v[1]))


def polygon_to_json(p: Optional[Polygon], name: Optional[str] = None) -> Optional[dict]:
    if p is None:
        return None
    doc: dict[str, Any] = {"vertices": [point_to_json(v) for v in p.vertices]}
    if name is not None:
        doc["name"] = name
    return doc


def polygon_from_json(doc: Any) -> Polygon:
    """Parse a polygon document ``{"name"?: str, "vertices": [[x, y], ...]}``.

    The vertex list is hulled, so it need not be in canonical order.
    """
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise ValueError("polygon document must be an object with a 'vertices' list")
    vertices = doc["vertices"]
    if not isinstance(vertices, list) or not vertices:
        raise ValueError("polygon document needs a nonempty 'vertices' list")
    poly = convex_hull([point_from_json(v) for v in vertices])
    assert poly is not None
    return poly


def width_to_json(w: WidthResult) -> dict:
    return {"width": rat_to_json(w.width), "direction": list(w.direction)}


def chord_to_json(c: ChordResult) -> dict:
    return {
        "length": rat_to_json(c.length),
        "direction": list(c.direction),
        "anchor": point_to_json(c.anchor),
    }


def freeness_to_json(v: FreenessVerdict) -> dict:
    return {
        "ring": v.ring,
        "free": v.free,
        "violation": polygon_to_json(v.violation),
    }


def witness_to_json(w: Optional[LockWitness]) -> Optional[dict]:
    if w is None:
        return None
    return {
        "facet_index": w.facet_index,
        "kind": w.kind,
        "triangle": polygon_to_json(w.triangle),
    }


def facet_report_to_json(fr: FacetReport) -> dict:
    return {
        "index": fr.index,
        "endpoints": [point_to_json(fr.endpoints[0]), point_to_json(fr.endpoints[1])],
        "status": fr.status,
        "witness": witness_to_json(fr.witness),
    }


def maximality_report_to_json(mr: MaximalityReport) -> dict:
    return {
        "ring": mr.ring,
        "verdict": mr.verdict,
        "facets": [facet_report_to_json(fr) for fr in mr.facets],
    }


def param_point_to_json(p: ParamPoint) -> list[str]:
    return [rat_to_json(p.lam), rat_to_json(p.mu), rat_to_json(p.nu)]


def param_point_from_json(v: Any) -> ParamPoint:
    if not isinstance(v, (list, tuple)) or len(v) != 3:
        raise ValueError(f"a parameter point is a [lam, mu, nu] triple, got {v!r}")
    return ParamPoint(*(rat_from_json(c) for c in v))


def _form_to_json(f: LinearForm3) -> list[str]:
    return [rat_to_json(c) for c in f]


def _form_from_json(v: Any) -> LinearForm3:
    if not isinstance(v, (list, tuple)) or len(v) != 4:
        raise ValueError(f"a linear form is a [c0, c1, c2, c3] list, got {v!r}")
    return LinearForm3(*(rat_from_json(c) for c in v))


def case_to_json(case: CaseSpec) -> dict:
    return {
        "name": case.name,
        "vertices": [point_to_json(v) for v in case.vertices],
        "width_directions": [list(d) for d in case.width_directions],
        "numerators": [_form_to_json(f) for f in case.numerators],
        "q_constraints": [_form_to_json(f) for f in case.q_constraints],
        "witness_pairs": [list(p) for p in case.witness_pairs],
    }


def case_from_json(doc: Any) -> CaseSpec:
    if not isinstance(doc, dict):
        raise ValueError("case document must be an object")
    try:
        vertices = tuple(point_from_json(v) for v in doc["vertices"])
        if len(vertices) != 3:
            raise ValueError("a case has exactly three incidence vertices")
        dirs = tuple((int(a), int(b)) for a, b in doc["width_directions"])
        numerators = tuple(_form_from_json(f) for f in doc["numerators"])
        q_rows = tuple(_form_from_json(f) for f in doc["q_constraints"])
        pairs = tuple((int(i), int(j)) for i, j in doc["witness_pairs"])
        name = str(doc.get("name", "custom"))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed case document: {exc}") from exc
    if not (len(dirs) == len(numerators) == len(pairs)):
        raise ValueError("directions, numerators and witness pairs must align")
    return CaseSpec(
        name=name,
        vertices=vertices,  # type: ignore[arg-type]
        width_directions=dirs,
        numerators=numerators,
        q_constraints=q_rows,
        witness_pairs=pairs,
    )


def _leaf_to_json(leaf: Leaf) -> dict:
    return {
        "box": [[rat_to_json(lo), rat_to_json(hi)] for lo, hi in leaf.box],
        "kind": leaf.kind,
        "c": None if leaf.c is None else [rat_to_json(v) for v in leaf.c],
        "y": None if leaf.y is None else [rat_to_json(v) for v in leaf.y],
    }


def _leaf_from_json(doc: Any) -> Leaf:
    box = tuple(
        (rat_from_json(lo), rat_from_json(hi)) for lo, hi in doc["box"]
    )
    if len(box) != 3:
        raise ValueError("a leaf box has three coordinate ranges")
    c = doc.get("c")
    y = doc.get("y")
    return Leaf(
        box,  # type: ignore[arg-type]
        str(doc["kind"]),
        None if c is None else tuple(rat_from_json(v) for v in c),
        None if y is None else tuple(rat_from_json(v) for v in y),
    )


def certificate_to_json(cert: RatioCertificate) -> dict:
    doc: dict[str, Any] = {
        "format": CERTIFICATE_FORMAT,
        "target": rat_to_json(cert.target),
        "status": cert.status,
        "q_constraints": [_form_to_json(f) for f in cert.q_rows],
        "numerators": [_form_to_json(f) for f in cert.numerators],
        "box_count": cert.box_count,
        "max_depth_reached": cert.max_depth_reached,
        "leaves": [_leaf_to_json(leaf) for leaf in cert.leaves],
        "counterexample": None,
        "counterexample_depth": cert.counterexample_depth,
        "reason": cert.reason,
    }
    if cert.counterexample is not None:
        pt, value = cert.counterexample
        doc["counterexample"] = {
            "point": param_point_to_json(pt),
            "value": rat_to_json(value),
        }
    return doc


def certificate_from_json(doc: Any) -> RatioCertificate:
    if not isinstance(doc, dict) or doc.get("format") != CERTIFICATE_FORMAT:
        raise ValueError(f"not a {CERTIFICATE_FORMAT} document")
    counterexample = None
    if doc.get("counterexample") is not None:
        cx = doc["counterexample"]
        counterexample = (
            param_point_from_json(cx["point"]),
            rat_from_json(cx["value"]),
        )
    return RatioCertificate(
        target=rat_from_json(doc["target"]),
        status=str(doc["status"]),
        q_rows=tuple(_form_from_json(f) for f in doc["q_constraints"]),
        numerators=tuple(_form_from_json(f) for f in doc["numerators"]),
        box_count=int(doc["box_count"]),
        max_depth_reached=int(doc["max_depth_reached"]),
        leaves=tuple(_leaf_from_json(l) for l in doc.get("leaves", [])),
        counterexample=counterexample,
        counterexample_depth=doc.get("counterexample_depth"),
        reason=doc.get("reason"),
    )


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def input_digest(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()
