"""Command-line client for the polygon service.

Every subcommand talks to the HTTP API -- by default to an in-process
instance of the service, or to a remote one given ``--server`` (or the
``DELTAFREE_SERVER`` environment variable).  Verdicts map to exit codes so
scripts can branch without parsing output:

    0   success / free / Maximal / Certified
    10  not free
    11  NotMaximal
    12  Undetermined
    13  Counterexample
    14  Inconclusive
    1   replay failure
    2   input or transport error
"""

from __future__ import annotations

import json
import os
import sys
from typing import Any, Optional

import click
import httpx

EXIT_NOT_FREE = 10
EXIT_NOT_MAXIMAL = 11
EXIT_UNDETERMINED = 12
EXIT_COUNTEREXAMPLE = 13
EXIT_INCONCLUSIVE = 14
EXIT_REPLAY_FAILED = 1
EXIT_INPUT_ERROR = 2

_TIMEOUT = 600.0


def _fail(message: str, code: int = EXIT_INPUT_ERROR) -> None:
    click.echo(message, err=True)
    sys.exit(code)


def _client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=_TIMEOUT)
    # No server given: serve requests in-process.  TestClient is the stock
    # synchronous httpx.Client that drives an ASGI app directly.
    from fastapi.testclient import TestClient

    from .service.app import create_app

    return TestClient(create_app(), raise_server_exceptions=False)


def _post(server: Optional[str], path: str, payload: dict) -> dict:
    try:
        with _client(server) as client:
            response = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        _fail(f"transport error talking to {server or 'in-process service'}: {exc}")
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        if not isinstance(detail, str):
            detail = json.dumps(detail)
        _fail(f"request rejected ({response.status_code}): {detail}")
    return response.json()


def _read_json(source: str) -> Any:
    try:
        text = sys.stdin.read() if source == "-" else open(source).read()
    except OSError as exc:
        _fail(f"cannot read {source}: {exc}")
    try:
        return json.loads(text)
    except ValueError as exc:
        _fail(f"{source} is not valid JSON: {exc}")


def _read_polygon(source: str) -> dict:
    data = _read_json(source)
    if isinstance(data, list):
        data = {"vertices": data}
    if not isinstance(data, dict) or "vertices" not in data:
        _fail(
            f"{source} must hold a polygon object with a 'vertices' list "
            "(or a bare list of [x, y] pairs)"
        )
    return data


def _check_ring(given: Optional[str], expected: str) -> None:
    if given is not None and given.upper() != expected:
        _fail(f"--ring {given} conflicts with this subcommand (expects {expected})")


def _emit(doc: dict, as_json: bool, lines: list[str], code: int) -> None:
    if as_json:
        click.echo(json.dumps(doc, indent=2))
    else:
        for line in lines:
            click.echo(line)
    sys.exit(code)


def _fmt_pt(pair: list) -> str:
    return f"({pair[0]}, {pair[1]})"


def _fmt_dir(pair: list) -> str:
    return f"({pair[0]}, {pair[1]})"


def _fmt_poly(doc: dict) -> str:
    return " ".join(_fmt_pt(v) for v in doc["vertices"])


_server_option = click.option(
    "--server",
    envvar="DELTAFREE_SERVER",
    default=None,
    metavar="URL",
    help="Base URL of a running service; default runs the service in-process.",
)
_json_option = click.option(
    "--json", "as_json", is_flag=True, help="Print the full report as JSON."
)
_ring_option = click.option(
    "--ring", default=None, metavar="Z|R", help="Coefficient ring (must match the subcommand)."
)
_threads_option = click.option(
    "--threads", default=1, show_default=True, type=click.IntRange(1, 64),
    help="Worker threads for per-class / per-facet checks.",
)


@click.group()
def main() -> None:
    """Exact geometry of plane convex polygons: widths, diameters,
    delta2-freeness, maximality, and certified parametric bounds.

    Polygon arguments are JSON files ('-' for stdin) holding
    {"vertices": [["x", "y"], ...]} with rationals as strings or integers.
    """


# ------------------------------------------------------------- polygon data


@main.command()
@click.argument("file")
@_server_option
@_json_option
def width(file: str, server: Optional[str], as_json: bool) -> None:
    """Lattice width of the polygon in FILE."""
    doc = _post(server, "/width", {"polygon": _read_polygon(file)})
    res = doc["result"]
    line = f"lattice width {res['width']} in direction {_fmt_dir(res['direction'])}"
    _emit(doc, as_json, [line], 0)


@main.command()
@click.argument("file")
@_server_option
@_json_option
def ratdiam(file: str, server: Optional[str], as_json: bool) -> None:
    """Longest rational-direction chord of the polygon in FILE."""
    doc = _post(server, "/ratdiam", {"polygon": _read_polygon(file)})
    res = doc["result"]
    line = (
        f"rational diameter {res['length']} in direction "
        f"{_fmt_dir(res['direction'])} from {_fmt_pt(res['anchor'])}"
    )
    _emit(doc, as_json, [line], 0)


def _free_command(ring: str, file: str, server: Optional[str], threads: int, as_json: bool) -> None:
    payload = {"polygon": _read_polygon(file), "threads": threads}
    doc = _post(server, f"/free/{ring}", payload)
    res = doc["result"]
    if res["free"]:
        _emit(doc, as_json, [f"{ring}-delta2-free"], 0)
    lines = [
        f"not {ring}-delta2-free",
        f"violation: {_fmt_poly(res['violation'])}",
    ]
    _emit(doc, as_json, lines, EXIT_NOT_FREE)


@main.command()
@click.argument("file")
@_server_option
@_ring_option
@_threads_option
@_json_option
def zfree(file: str, server: Optional[str], ring: Optional[str], threads: int, as_json: bool) -> None:
    """Decide whether the polygon contains a unimodular lattice triangle."""
    _check_ring(ring, "Z")
    _free_command("Z", file, server, threads, as_json)


@main.command()
@click.argument("file")
@_server_option
@_ring_option
@_threads_option
@_json_option
def rfree(file: str, server: Optional[str], ring: Optional[str], threads: int, as_json: bool) -> None:
    """Decide whether any translate of a unimodular triangle fits inside."""
    _check_ring(ring, "R")
    _free_command("R", file, server, threads, as_json)


def _maximal_lines(res: dict) -> list[str]:
    lines = []
    for facet in res["facets"]:
        a, b = facet["endpoints"]
        line = f"facet {facet['index']} [{_fmt_pt(a)} -> {_fmt_pt(b)}]: {facet['status']}"
        witness = facet["witness"]
        if witness is not None:
            line += f"  witness {witness['kind']}: {_fmt_poly(witness['triangle'])}"
        lines.append(line)
    lines.append(f"verdict: {res['verdict']}")
    return lines


def _maximal_exit(verdict: str) -> int:
    return {"Maximal": 0, "NotMaximal": EXIT_NOT_MAXIMAL}.get(verdict, EXIT_UNDETERMINED)


@main.command()
@click.argument("file")
@_server_option
@_ring_option
@_json_option
def zmaximal(file: str, server: Optional[str], ring: Optional[str], as_json: bool) -> None:
    """Decide inclusion-maximality among Z-delta2-free convex bodies."""
    _check_ring(ring, "Z")
    payload = {"polygon": _read_polygon(file)}
    doc = _post(server, "/maximal/Z", payload)
    res = doc["result"]
    _emit(doc, as_json, _maximal_lines(res), _maximal_exit(res["verdict"]))


@main.command()
@click.argument("file")
@_server_option
@_ring_option
@click.option(
    "--shape-bound", default=4, show_default=True, type=click.IntRange(1, 8),
    help="Max edge-vector entry of witness triangle shapes searched.",
)
@_threads_option
@_json_option
def rmaximal(
    file: str,
    server: Optional[str],
    ring: Optional[str],
    shape_bound: int,
    threads: int,
    as_json: bool,
) -> None:
    """Certify inclusion-maximality among R-delta2-free convex bodies."""
    _check_ring(ring, "R")
    payload = {
        "polygon": _read_polygon(file),
        "shape_bound": shape_bound,
        "threads": threads,
    }
    doc = _post(server, "/maximal/R", payload)
    res = doc["result"]
    _emit(doc, as_json, _maximal_lines(res), _maximal_exit(res["verdict"]))


# ---------------------------------------------------------------- flatness


@main.command()
@click.option("--interval", nargs=2, required=True, metavar="X Y",
              help="Interval endpoints as rationals, e.g. --interval 0 4/3.")
@_server_option
@_json_option
def flt1(interval: tuple[str, str], server: Optional[str], as_json: bool) -> None:
    """Closed-form flatness value of a 1-dimensional interval [X, Y]."""
    doc = _post(server, "/flt1", {"x": interval[0], "y": interval[1]})
    _emit(doc, as_json, [doc["result"]["value"]], 0)


@main.command(name="certify-case")
@click.option("--case", "case_ref", required=True, metavar="NAME|FILE",
              help="Built-in case name (case1, case2) or a JSON case file.")
@click.option("--target", required=True, metavar="T",
              help="Rational ratio bound to certify, e.g. 10/3.")
@click.option("--max-depth", default=48, show_default=True, type=click.IntRange(0, 128))
@click.option("--max-boxes", default=1_000_000, show_default=True, type=click.IntRange(1))
@_server_option
@_json_option
def certify_case(
    case_ref: str,
    target: str,
    max_depth: int,
    max_boxes: int,
    server: Optional[str],
    as_json: bool,
) -> None:
    """Branch-and-bound certificate that a case's width ratio stays <= T."""
    case: Any = case_ref
    if case_ref.endswith(".json") or os.path.exists(case_ref) or case_ref == "-":
        case = _read_json(case_ref)
    payload = {
        "case": case,
        "target": target,
        "max_depth": max_depth,
        "max_boxes": max_boxes,
    }
    doc = _post(server, "/certify", payload)
    cert = doc["result"]["certificate"]
    status = cert["status"]
    if status == "Certified":
        lines = [
            f"Certified: ratio <= {cert['target']} "
            f"(boxes={cert['box_count']}, depth={cert['max_depth_reached']}, "
            f"leaves={len(cert['leaves'])})"
        ]
        _emit(doc, as_json, lines, 0)
    if status == "Counterexample":
        cx = cert["counterexample"]
        pt = cx["point"]
        lines = [
            f"Counterexample: value {cx['value']} > {cert['target']} at "
            f"({pt[0]}, {pt[1]}, {pt[2]}) (depth {cert['counterexample_depth']})"
        ]
        _emit(doc, as_json, lines, EXIT_COUNTEREXAMPLE)
    lines = [
        f"Inconclusive: {cert['reason']} "
        f"(boxes={cert['box_count']}, depth={cert['max_depth_reached']})"
    ]
    _emit(doc, as_json, lines, EXIT_INCONCLUSIVE)


@main.command()
@click.option("--family", required=True, type=click.Choice(["rect", "cross"]))
@click.option("--params", nargs=4, required=True, metavar="KAPPA LAM MU NU",
              help="Family parameters as rationals.")
@_server_option
@_json_option
def quad(family: str, params: tuple[str, str, str, str], server: Optional[str], as_json: bool) -> None:
    """Construct a circumscribed quadrilateral and report its exact widths."""
    payload = {
        "family": family,
        "kappa": params[0],
        "lam": params[1],
        "mu": params[2],
        "nu": params[3],
    }
    doc = _post(server, "/quad", payload)
    res = doc["result"]
    lines = [f"vertices: {_fmt_poly(res['polygon'])}"]
    if family == "rect":
        lines.append(f"width (1,0): {res['width_horizontal']}")
        lines.append(f"width (0,1): {res['width_vertical']}")
    else:
        lines.append(f"width (1,0): {res['width_e1']}")
        lines.append(f"width (1,1)/2 form: {res['width_halfsum']}")
        lines.append(f"width (1,-1)/2 form: {res['width_halfdiff']}")
    _emit(doc, as_json, lines, 0)


@main.command()
@click.argument("file")
def replay(file: str) -> None:
    """Re-verify a saved report document (as printed by --json)."""
    from .reports import ReplayError, replay_report

    doc = _read_json(file)
    try:
        replay_report(doc)
    except ReplayError as exc:
        _fail(f"replay failed: {exc}", EXIT_REPLAY_FAILED)
    click.echo(f"replay OK: {doc['command']}")
    sys.exit(0)


if __name__ == "__main__":
    main()
