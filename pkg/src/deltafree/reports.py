"""Self-describing result documents and their independent replay.

Every service endpoint and CLI subcommand produces a report that embeds its
own input, a SHA-256 digest of that input, and the result.  ``replay_report``
re-derives the verdict from the embedded input alone -- recomputing
deterministic results outright and re-verifying search products (lock
witnesses, branch-and-bound certificates) without re-running the search.
"""

from __future__ import annotations

import time
from typing import Any, Callable

from . import serialize as ser
from .flatness import (
    CertificateError,
    bb_certify_max,
    builtin_cases,
    case_polytope,
    flt1_z,
    interval,
    quad_cross,
    quad_rect,
    replay_certificate,
)
from .freeness import is_r_delta2_free, is_z_delta2_free
from .geometry import contains_polygon, dimension
from .lattice import as_ring, is_unimodular_delta2_copy, lattice_width, rational_diameter
from .maximality import LOCKED, LockWitness, facet_endpoints, r_locked_check, r_maximal_certified, z_inclusion_maximal

__all__ = [
    "REPORT_FORMAT",
    "ReplayError",
    "run_command",
    "run_width",
    "run_ratdiam",
    "run_free",
    "run_maximal",
    "run_flt1",
    "run_certify",
    "run_quad",
    "replay_report",
]

REPORT_FORMAT = "deltafree-report/1"


class ReplayError(Exception):
    """A report failed independent re-verification."""


def _finish(command: str, payload: dict, result: dict, started: float) -> dict:
    return {
        "format": REPORT_FORMAT,
        "command": command,
        "input": payload,
        "input_sha256": ser.input_digest(payload),
        "elapsed_ms": round((time.monotonic() - started) * 1000.0, 3),
        "result": result,
    }


def run_width(payload: dict) -> dict:
    started = time.monotonic()
    p = ser.polygon_from_json(payload["polygon"])
    result = ser.width_to_json(lattice_width(p))
    return _finish("width", payload, result, started)


def run_ratdiam(payload: dict) -> dict:
    started = time.monotonic()
    p = ser.polygon_from_json(payload["polygon"])
    result = ser.chord_to_json(rational_diameter(p))
    return _finish("ratdiam", payload, result, started)


def run_free(payload: dict) -> dict:
    started = time.monotonic()
    ring = as_ring(payload["ring"])
    p = ser.polygon_from_json(payload["polygon"])
    threads = int(payload.get("threads", 1))
    verdict = is_z_delta2_free(p) if ring == "Z" else is_r_delta2_free(p, threads=threads)
    return _finish("free", payload, ser.freeness_to_json(verdict), started)


def run_maximal(payload: dict) -> dict:
    started = time.monotonic()
    ring = as_ring(payload["ring"])
    p = ser.polygon_from_json(payload["polygon"])
    if ring == "Z":
        report = z_inclusion_maximal(p)
    else:
        report = r_maximal_certified(
            p,
            shape_bound=int(payload.get("shape_bound", 4)),
            threads=int(payload.get("threads", 1)),
        )
    return _finish("maximal", payload, ser.maximality_report_to_json(report), started)


def run_flt1(payload: dict) -> dict:
    started = time.monotonic()
    iv = interval(ser.rat_from_json(payload["x"]), ser.rat_from_json(payload["y"]))
    result = {"value": ser.rat_to_json(flt1_z(iv))}
    return _finish("flt1", payload, result, started)


def _resolve_case(spec: Any):
    if isinstance(spec, str):
        cases = builtin_cases()
        if spec not in cases:
            known = ", ".join(sorted(cases))
            raise ValueError(f"unknown case {spec!r}; built-in cases: {known}")
        return cases[spec]
    return ser.case_from_json(spec)


def run_certify(payload: dict) -> dict:
    started = time.monotonic()
    case = _resolve_case(payload["case"])
    target = ser.rat_from_json(payload["target"])
    cert = bb_certify_max(
        case_polytope(case),
        case.numerators,
        target,
        max_depth=int(payload.get("max_depth", 48)),
        max_boxes=int(payload.get("max_boxes", 1_000_000)),
    )
    result = {
        "case": ser.case_to_json(case),
        "certificate": ser.certificate_to_json(cert),
    }
    return _finish("certify", payload, result, started)


def run_quad(payload: dict) -> dict:
    started = time.monotonic()
    family = payload["family"]
    params = [ser.rat_from_json(payload[k]) for k in ("kappa", "lam", "mu", "nu")]
    if family == "rect":
        rect = quad_rect(*params)
        result = {
            "family": "rect",
            "polygon": ser.polygon_to_json(rect.polygon),
            "width_horizontal": ser.rat_to_json(rect.width_horizontal),
            "width_vertical": ser.rat_to_json(rect.width_vertical),
        }
    elif family == "cross":
        cross = quad_cross(*params)
        result = {
            "family": "cross",
            "polygon": ser.polygon_to_json(cross.polygon),
            "width_e1": ser.rat_to_json(cross.width_e1),
            "width_halfsum": ser.rat_to_json(cross.width_halfsum),
            "width_halfdiff": ser.rat_to_json(cross.width_halfdiff),
        }
    else:
        raise ValueError(f"unknown quadrilateral family {family!r}")
    return _finish("quad", payload, result, started)


_RUNNERS: dict[str, Callable[[dict], dict]] = {
    "width": run_width,
    "ratdiam": run_ratdiam,
    "free": run_free,
    "maximal": run_maximal,
    "flt1": run_flt1,
    "certify": run_certify,
    "quad": run_quad,
}


def run_command(command: str, payload: dict) -> dict:
    runner = _RUNNERS.get(command)
    if runner is None:
        raise ValueError(f"unknown command {command!r}")
    return runner(payload)


# --------------------------------------------------------------------------
# Replay
# --------------------------------------------------------------------------


def _fail(message: str) -> None:
    raise ReplayError(message)


def _replay_recompute(doc: dict) -> None:
    fresh = run_command(doc["command"], doc["input"])
    if fresh["result"] != doc["result"]:
        _fail(
            f"{doc['command']}: recomputed result differs\n"
            f"  reported: {doc['result']}\n  fresh:    {fresh['result']}"
        )


def _replay_free(doc: dict) -> None:
    _replay_recompute(doc)
    result = doc["result"]
    ring = as_ring(result["ring"])
    p = ser.polygon_from_json(doc["input"]["polygon"])
    if result["free"]:
        if result["violation"] is not None:
            _fail("free: a free verdict must not carry a violation")
        return
    if result["violation"] is None:
        _fail("free: a non-free verdict must carry a violation")
    tri = ser.polygon_from_json(result["violation"])
    if not is_unimodular_delta2_copy(tri, ring):
        _fail(f"free: reported violation is not a unimodular copy over {ring}")
    if not contains_polygon(p, tri, strict=True):
        _fail("free: reported violation is not in the interior")


def _replay_maximal(doc: dict) -> None:
    result = doc["result"]
    ring = as_ring(result["ring"])
    p = ser.polygon_from_json(doc["input"]["polygon"])
    if ring == "Z":
        _replay_recompute(doc)
        return
    # Over R the verdict rests on per-facet witnesses; verify each one
    # directly instead of repeating the search.
    if dimension(p) != 2 or not is_r_delta2_free(p).free:
        _fail("maximal: polygon fails the R-delta2-free precondition")
    facets = result["facets"]
    if len(facets) != len(p.vertices):
        _fail("maximal: facet count does not match the polygon")
    for facet in facets:
        index = facet["index"]
        a, b = facet_endpoints(p, index)
        if [ser.point_to_json(a), ser.point_to_json(b)] != facet["endpoints"]:
            _fail(f"maximal: facet {index} endpoints do not match the polygon")
        if facet["status"] == LOCKED:
            witness = facet["witness"]
            if witness is None:
                _fail(f"maximal: locked facet {index} lacks a witness")
            tri = ser.polygon_from_json(witness["triangle"])
            checked = r_locked_check(p, index, tri)
            if not isinstance(checked, LockWitness):
                _fail(
                    f"maximal: facet {index} witness rejected: {checked.reason}"
                )
            if checked.kind != witness["kind"]:
                _fail(f"maximal: facet {index} witness kind mismatch")
        elif facet["witness"] is not None:
            _fail(f"maximal: non-locked facet {index} carries a witness")
    all_locked = all(f["status"] == LOCKED for f in facets)
    expected = "Maximal" if all_locked else "Undetermined"
    if result["verdict"] != expected:
        _fail(
            f"maximal: verdict {result['verdict']!r} inconsistent with facet "
            f"statuses (expected {expected!r})"
        )


def _replay_certify(doc: dict) -> None:
    result = doc["result"]
    case = ser.case_from_json(result["case"])
    input_case = doc["input"]["case"]
    if isinstance(input_case, str):
        if ser.case_to_json(builtin_cases()[input_case]) != result["case"]:
            _fail("certify: embedded case differs from the named built-in")
    elif ser.case_to_json(ser.case_from_json(input_case)) != result["case"]:
        _fail("certify: embedded case differs from the input case")
    cert = ser.certificate_from_json(result["certificate"])
    if cert.target != ser.rat_from_json(doc["input"]["target"]):
        _fail("certify: certificate target differs from the input target")
    if cert.q_rows != case_polytope(case) or cert.numerators != case.numerators:
        _fail("certify: certificate constraint data differs from the case")
    try:
        replay_certificate(cert)
    except CertificateError as exc:
        _fail(f"certify: certificate replay failed: {exc}")


def replay_report(doc: dict) -> bool:
    """Re-verify a report document; raises ReplayError on any mismatch."""
    if not isinstance(doc, dict) or doc.get("format") != REPORT_FORMAT:
        raise ReplayError(f"not a {REPORT_FORMAT} document")
    command = doc.get("command")
    if command not in _RUNNERS:
        raise ReplayError(f"unknown command {command!r}")
    if ser.input_digest(doc["input"]) != doc["input_sha256"]:
        raise ReplayError("input digest mismatch; document was altered")
    if command == "free":
        _replay_free(doc)
    elif command == "maximal":
        _replay_maximal(doc)
    elif command == "certify":
        _replay_certify(doc)
    else:
        _replay_recompute(doc)
    return True
