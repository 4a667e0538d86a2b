"""Certified flatness computations.

Three layers, all exact over the rationals:

* **1-D**: the closed-form flatness value of a rational interval under
  integer translations (`flt1_z`), plus an independent oracle (`flt1_oracle`)
  that measures successive reflected translates directly.  The closed form
  assumes the nearest reflected translate lies to the right of the interval;
  when exactly one endpoint is an integer that assumption fails and the
  formula strictly overestimates, which the oracle exposes (see tests).

* **Parametric triangles**: a three-parameter family of triangles through a
  fixed vertex triple, the multilinear denominator ``delta``, and case data
  bundling the admissibility polytope ``Q`` with closed-form width numerators.
  On ``Q`` each width numerator divided by ``delta`` is the exact lattice
  width of the triangle along the associated direction.

* **Branch-and-bound**: a certifying decision procedure for
  ``sup_{p in Q} min_i numerator_i(p) / delta(p) <= target`` producing a
  self-contained, replayable certificate (box tree leaves with exact Farkas
  multipliers), an exact counterexample, or an honest "Inconclusive".

The quadrilateral families at the bottom produce the canonical width-3
circumscribed quadrilaterals and width-controlled crossing quadrilaterals
used as extremal examples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, NamedTuple, Optional, Sequence

from .geometry import Point, Polygon, RatLike, as_rat, convex_hull, point

__all__ = [
    "Interval1D",
    "interval",
    "flt1_z",
    "flt1_oracle",
    "ParamPoint",
    "param_point",
    "delta",
    "LinearForm3",
    "CaseSpec",
    "CASE1",
    "CASE2",
    "builtin_cases",
    "param_triangle_vertices",
    "param_triangle",
    "case_polytope",
    "feasible_box",
    "linearity_region_vertices",
    "Leaf",
    "RatioCertificate",
    "CertificateError",
    "bb_certify_max",
    "replay_certificate",
    "QuadRectResult",
    "quad_rect",
    "QuadCrossResult",
    "quad_cross",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)
_HALF = Fraction(1, 2)


# --------------------------------------------------------------------------
# One-dimensional flatness
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval1D:
    """A closed rational interval [x, y]."""

    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        if not (isinstance(self.x, Fraction) and isinstance(self.y, Fraction)):
            raise TypeError("Interval1D endpoints must be Fractions; use interval()")
        if self.x > self.y:
            raise ValueError("interval endpoints out of order")

    @property
    def length(self) -> Fraction:
        return self.y - self.x


def interval(x: RatLike, y: RatLike) -> Interval1D:
    return Interval1D(as_rat(x), as_rat(y))


def flt1_z(iv: Interval1D) -> Fraction:
    """Closed-form flatness of ``[x, y]`` under integer translations.

    The width threshold above which every interval of that width contains an
    integer translate of ``[x, y]`` or of its reflection.  Uses the translate
    offset ``floor(x) + ceil(y)``, which places the nearest reflected copy
    correctly except when exactly one endpoint is integral (then the value is
    an overestimate; `flt1_oracle` computes the true threshold).
    """
    x, y = iv.x, iv.y
    d = math.floor(x) + math.ceil(y)
    if math.ceil(x) - x >= y - math.floor(y):
        return max(d - 2 * x, 1 + 2 * y - d)
    return max(2 * y - d, 1 + d - 2 * x)


def flt1_oracle(iv: Interval1D, search_range: int = 3) -> Fraction:
    """Flatness of ``[x, y]`` by direct inspection of nearby copies.

    The copies of the interval are ``±[x, y] + k`` for integers ``k``.  A
    window of width ``w`` contains a copy for every position exactly when
    ``w`` reaches the largest hull of two *successive* copies, so the value
    is ``max(next.right - this.left)`` over one period of copy left-endpoints.
    The interval is first recentred by the nearest integer to its midpoint
    sum, after which ``search_range >= 2`` provably covers a full period.
    """
    if search_range < 2:
        raise ValueError("search_range must be at least 2")
    t = math.floor((iv.x + iv.y) / 2 + _HALF)
    x0, y0 = iv.x - t, iv.y - t
    fam = set()
    for k in range(-search_range, search_range + 1):
        fam.add((x0 + k, y0 + k))
        fam.add((-y0 + k, -x0 + k))
    copies = sorted(fam)
    center = (x0 - y0) / 2
    lo, hi = center - _HALF, center + _HALF
    best: Optional[Fraction] = None
    for j in range(len(copies) - 1):
        left = copies[j][0]
        if lo <= left < hi:
            width = copies[j + 1][1] - left
            if best is None or width > best:
                best = width
    if best is None:
        raise RuntimeError("copy family failed to cover the measurement window")
    return best


# --------------------------------------------------------------------------
# Parametric triangle cases
# --------------------------------------------------------------------------


class ParamPoint(NamedTuple):
    """A parameter point (lam, mu, nu) in the unit cube."""

    lam: Fraction
    mu: Fraction
    nu: Fraction


def param_point(lam: RatLike, mu: RatLike, nu: RatLike) -> ParamPoint:
    return ParamPoint(as_rat(lam), as_rat(mu), as_rat(nu))


def delta(p: Sequence[Fraction]) -> Fraction:
    """The multilinear denominator ``lam*mu*nu + (1-lam)(1-mu)(1-nu)``.

    Nonnegative on the unit cube (both products are), vanishing only at the
    six cube corners with mixed 0/1 pattern.
    """
    lam, mu, nu = p[0], p[1], p[2]
    return lam * mu * nu + (1 - lam) * (1 - mu) * (1 - nu)


class LinearForm3(NamedTuple):
    """The affine form ``c0 + c1*lam + c2*mu + c3*nu``."""

    c0: Fraction
    c1: Fraction
    c2: Fraction
    c3: Fraction

    def value(self, p: Sequence[Fraction]) -> Fraction:
        return self.c0 + self.c1 * p[0] + self.c2 * p[1] + self.c3 * p[2]

    def __sub__(self, other: "LinearForm3") -> "LinearForm3":
        return LinearForm3(
            self.c0 - other.c0,
            self.c1 - other.c1,
            self.c2 - other.c2,
            self.c3 - other.c3,
        )


def linear_form(c0: RatLike, c1: RatLike, c2: RatLike, c3: RatLike) -> LinearForm3:
    return LinearForm3(as_rat(c0), as_rat(c1), as_rat(c2), as_rat(c3))


Box3 = tuple[
    tuple[Fraction, Fraction], tuple[Fraction, Fraction], tuple[Fraction, Fraction]
]


@dataclass(frozen=True)
class CaseSpec:
    """One parametric-triangle case.

    ``vertices`` are the fixed incidence points the triangle's edges pass
    through; ``width_directions[k]`` is an integer direction whose width is
    ``numerators[k] / delta`` everywhere on the admissibility polytope
    (the unit cube intersected with ``q_constraints >= 0``);
    ``witness_pairs[k]`` names the triangle vertex pair (indices into
    (X, Y, Z)) attaining that width.
    """

    name: str
    vertices: tuple[Point, Point, Point]
    width_directions: tuple[tuple[int, int], ...]
    numerators: tuple[LinearForm3, ...]
    q_constraints: tuple[LinearForm3, ...]
    witness_pairs: tuple[tuple[int, int], ...]


CASE1 = CaseSpec(
    name="case1",
    vertices=(point(1, 1), point(0, -1), point(0, 1)),
    width_directions=((1, 0), (0, 1), (1, -1)),
    numerators=(
        linear_form(1, 0, 0, -1),  # 1 - nu
        linear_form(2, -2, 0, 0),  # 2 - 2*lam
        linear_form(1, 0, -1, 1),  # 1 - mu + nu
    ),
    q_constraints=(
        linear_form(1, -1, -1, 0),  # lam + mu <= 1
        linear_form(1, 0, -1, -1),  # mu + nu <= 1
        linear_form(1, -1, 0, -1),  # lam + nu <= 1
        linear_form(-1, 2, 0, 1),  # 2*lam + nu >= 1
    ),
    witness_pairs=((2, 0), (0, 1), (1, 2)),
)

CASE2 = CaseSpec(
    name="case2",
    vertices=(point(1, 1), point(0, 1), point(-1, -1)),
    width_directions=((1, 0), (0, 1), (1, -1)),
    numerators=(
        linear_form(-1, 1, 2, 0),  # lam + 2*mu - 1
        linear_form(0, 2, 0, 0),  # 2*lam
        linear_form(0, 0, 0, 1),  # nu
    ),
    q_constraints=(
        linear_form(3, -3, -2, 0),  # 3*lam + 2*mu <= 3
        linear_form(-2, 0, 2, 1),  # 2*mu + nu >= 2
        linear_form(-1, 1, 1, 0),  # lam + mu >= 1
        linear_form(-1, 1, 0, 1),  # lam + nu >= 1
    ),
    witness_pairs=((1, 0), (2, 0), (1, 2)),
)


def builtin_cases() -> dict[str, CaseSpec]:
    return {CASE1.name: CASE1, CASE2.name: CASE2}


def param_triangle_vertices(case: CaseSpec, p: ParamPoint) -> tuple[Point, Point, Point]:
    """The triangle vertices (X, Y, Z) at parameter point ``p``.

    Solves the edge-incidence system through ``case.vertices`` exactly; the
    solution has denominator ``delta(p)``, so ``delta(p) == 0`` is rejected.
    Incidences: A = lam*Y + (1-lam)*Z, B = (1-mu)*X + mu*Z,
    C = nu*X + (1-nu)*Y.
    """
    lam, mu, nu = p
    lb, mb, nb = 1 - lam, 1 - mu, 1 - nu
    d = delta(p)
    if d == 0:
        raise ValueError("parameter point has delta == 0; triangle is unbounded")
    a, b, c = case.vertices
    inv = _ONE / d
    x = (a * (-mu * nb) + b * (lb * nb) + c * (lam * mu)) * inv
    y = (a * (mu * nu) + b * (-lb * nu) + c * (lb * mb)) * inv
    z = (a * (mb * nb) + b * (lam * nu) + c * (-lam * mb)) * inv
    return x, y, z


def param_triangle(case: CaseSpec, p: ParamPoint) -> Polygon:
    """The triangle at ``p`` as a canonical polygon."""
    tri = convex_hull(param_triangle_vertices(case, p))
    assert tri is not None
    return tri


_CUBE_ROWS = tuple(
    LinearForm3(*map(Fraction, row))
    for row in (
        (0, 1, 0, 0),
        (1, -1, 0, 0),
        (0, 0, 1, 0),
        (1, 0, -1, 0),
        (0, 0, 0, 1),
        (1, 0, 0, -1),
    )
)


def case_polytope(case: CaseSpec) -> tuple[LinearForm3, ...]:
    """H-representation (rows >= 0) of the admissibility polytope Q."""
    return _CUBE_ROWS + case.q_constraints


# --------------------------------------------------------------------------
# Exact linear feasibility (Fourier-Motzkin elimination)
# --------------------------------------------------------------------------

_INFEASIBLE = "infeasible"


def _fm_normalize(row: tuple[Fraction, Fraction, Fraction, Fraction]):
    """Primitive-integer scaling of a row; None if trivially true."""
    c0, c1, c2, c3 = row
    if c1 == 0 and c2 == 0 and c3 == 0:
        return None if c0 >= 0 else _INFEASIBLE
    scale = math.lcm(
        c0.denominator, c1.denominator, c2.denominator, c3.denominator
    )
    ints = (int(c0 * scale), int(c1 * scale), int(c2 * scale), int(c3 * scale))
    g = math.gcd(*ints)
    return tuple(v // g for v in ints)


def _fm_reduce(rows: Iterable[tuple]) -> set:
    """Deduplicate normalized rows, keeping only the tightest per direction."""
    tightest: dict[tuple, int] = {}
    for c0, c1, c2, c3 in rows:
        direction = (c1, c2, c3)
        if direction not in tightest or c0 < tightest[direction]:
            tightest[direction] = c0
    return {(c0, *d) for d, c0 in tightest.items()}


def _fm_feasible(rows: Sequence) -> bool:
    """Whether ``{v : row(v) >= 0 for all rows}`` is nonempty (exact)."""
    normed = []
    for r in rows:
        n = _fm_normalize(tuple(Fraction(c) for c in r))
        if n is _INFEASIBLE:
            return False
        if n is not None:
            normed.append(n)
    system = _fm_reduce(normed)
    remaining = [1, 2, 3]
    while remaining:
        # Eliminate the variable producing the fewest combination rows.
        var = min(
            remaining,
            key=lambda v: sum(1 for r in system if r[v] > 0)
            * sum(1 for r in system if r[v] < 0),
        )
        remaining.remove(var)
        pos = [r for r in system if r[var] > 0]
        neg = [r for r in system if r[var] < 0]
        next_rows = [r for r in system if r[var] == 0]
        for pr in pos:
            for nr in neg:
                combined = tuple(
                    Fraction(pr[i] * (-nr[var]) + nr[i] * pr[var]) for i in range(4)
                )
                n = _fm_normalize(combined)
                if n is _INFEASIBLE:
                    return False
                if n is not None:
                    next_rows.append(n)
        system = _fm_reduce(next_rows)
    return True


def _box_rows(box: Box3) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
    rows = []
    for k, (lo, hi) in enumerate(box):
        coeff_lo = [Fraction(-lo), _ZERO, _ZERO, _ZERO]
        coeff_lo[k + 1] = _ONE
        rows.append(tuple(coeff_lo))
        coeff_hi = [Fraction(hi), _ZERO, _ZERO, _ZERO]
        coeff_hi[k + 1] = -_ONE
        rows.append(tuple(coeff_hi))
    return rows


def feasible_box(rows: Sequence[LinearForm3], box: Box3) -> bool:
    """Whether the polytope ``rows >= 0`` meets the box (exact elimination)."""
    return _fm_feasible(list(rows) + _box_rows(box))


# --------------------------------------------------------------------------
# Linearity-region vertices
# --------------------------------------------------------------------------


def _solve3(rows: Sequence[LinearForm3]) -> Optional[ParamPoint]:
    """Unique common zero of three affine forms, if the system is regular."""
    (a1, b1, c1, d1) = rows[0].c1, rows[0].c2, rows[0].c3, -rows[0].c0
    (a2, b2, c2, d2) = rows[1].c1, rows[1].c2, rows[1].c3, -rows[1].c0
    (a3, b3, c3, d3) = rows[2].c1, rows[2].c2, rows[2].c3, -rows[2].c0
    det = (
        a1 * (b2 * c3 - b3 * c2)
        - b1 * (a2 * c3 - a3 * c2)
        + c1 * (a2 * b3 - a3 * b2)
    )
    if det == 0:
        return None
    det_x = (
        d1 * (b2 * c3 - b3 * c2)
        - b1 * (d2 * c3 - d3 * c2)
        + c1 * (d2 * b3 - d3 * b2)
    )
    det_y = (
        a1 * (d2 * c3 - d3 * c2)
        - d1 * (a2 * c3 - a3 * c2)
        + c1 * (a2 * d3 - a3 * d2)
    )
    det_z = (
        a1 * (b2 * d3 - b3 * d2)
        - b1 * (a2 * d3 - a3 * d2)
        + d1 * (a2 * b3 - a3 * b2)
    )
    return ParamPoint(det_x / det, det_y / det, det_z / det)


def linearity_region_vertices(
    rows: Sequence[LinearForm3], numerators: Sequence[LinearForm3]
) -> list[ParamPoint]:
    """Vertices of the polyhedral regions where one numerator is the minimum.

    Region ``i`` is ``rows >= 0`` plus ``numerator_j - numerator_i >= 0`` for
    all ``j``; its vertices are the exact candidate extrema of the piecewise-
    linear-fractional objective, and exactly the points where targeted splits
    must land for tight certification.
    """
    out: set[ParamPoint] = set()
    for i in range(len(numerators)):
        region = list(rows) + [
            numerators[j] - numerators[i]
            for j in range(len(numerators))
            if j != i
        ]
        for triple in combinations(region, 3):
            v = _solve3(triple)
            if v is None:
                continue
            if all(r.value(v) >= 0 for r in region):
                out.add(v)
    return sorted(out)


# --------------------------------------------------------------------------
# Exact phase-1 simplex (Bland's rule)
# --------------------------------------------------------------------------


def _lp_feasible(
    n: int,
    le_rows: Sequence[tuple[Sequence[Fraction], Fraction]],
    eq_rows: Sequence[tuple[Sequence[Fraction], Fraction]],
) -> Optional[list[Fraction]]:
    """Find ``z >= 0`` with ``A z <= b`` and ``E z = f`` (all rhs >= 0), or None.

    Phase-1 simplex over Fractions with Bland's anti-cycling rule: slacks for
    the inequalities, one artificial per equality, minimize the artificials.
    """
    m1, m2 = len(le_rows), len(eq_rows)
    ncols = n + m1 + m2
    tab: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int] = []
    for i, (coeffs, b) in enumerate(le_rows):
        assert b >= 0
        row = [Fraction(c) for c in coeffs] + [_ZERO] * (m1 + m2)
        row[n + i] = _ONE
        tab.append(row)
        rhs.append(Fraction(b))
        basis.append(n + i)
    for j, (coeffs, b) in enumerate(eq_rows):
        assert b >= 0
        row = [Fraction(c) for c in coeffs] + [_ZERO] * (m1 + m2)
        row[n + m1 + j] = _ONE
        tab.append(row)
        rhs.append(Fraction(b))
        basis.append(n + m1 + j)
    # Reduced costs for objective = sum of artificials, with artificials basic:
    # cost vector (1 on artificial columns) minus the basic artificial rows.
    obj = [_ZERO] * ncols
    for j in range(m2):
        obj[n + m1 + j] = _ONE
    for j in range(m2):
        r = m1 + j
        for col in range(ncols):
            obj[col] -= tab[r][col]
    while True:
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            break
        ratios = [
            (rhs[r] / tab[r][enter], basis[r], r)
            for r in range(len(tab))
            if tab[r][enter] > 0
        ]
        if not ratios:
            raise RuntimeError("phase-1 objective cannot be unbounded")
        _, _, pivot_row = min(ratios)
        piv = tab[pivot_row][enter]
        tab[pivot_row] = [v / piv for v in tab[pivot_row]]
        rhs[pivot_row] /= piv
        for r in range(len(tab)):
            if r != pivot_row and tab[r][enter] != 0:
                f = tab[r][enter]
                tab[r] = [v - f * w for v, w in zip(tab[r], tab[pivot_row])]
                rhs[r] -= f * rhs[pivot_row]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [v - f * w for v, w in zip(obj, tab[pivot_row])]
        basis[pivot_row] = enter
    artificial_mass = sum(
        rhs[r] for r in range(len(tab)) if basis[r] >= n + m1
    )
    if artificial_mass != 0:
        return None
    z = [_ZERO] * n
    for r, bv in enumerate(basis):
        if bv < n:
            z[bv] = rhs[r]
    return z


# --------------------------------------------------------------------------
# Branch-and-bound certification
# --------------------------------------------------------------------------


class Leaf(NamedTuple):
    """One certified box: infeasible with Q, or bounded by Farkas multipliers.

    For a "bound" leaf, ``c`` (over the numerators, nonnegative, summing to 1)
    and ``y`` (over the Q rows, nonnegative) witness that
    ``sum c_i*(num_i - target*delta) + sum y_k*q_k <= 0`` at every box corner;
    the combination is multilinear in the parameters, so corner nonpositivity
    bounds the whole box.
    """

    box: Box3
    kind: str  # "infeasible" | "bound"
    c: Optional[tuple[Fraction, ...]]
    y: Optional[tuple[Fraction, ...]]


class CertificateError(Exception):
    """A certificate failed replay verification."""


@dataclass(frozen=True)
class RatioCertificate:
    """Self-contained outcome of :func:`bb_certify_max`.

    Stores the problem data (Q rows, numerators, target) alongside the
    verdict, so :func:`replay_certificate` needs nothing else.
    """

    target: Fraction
    status: str  # "Certified" | "Counterexample" | "Inconclusive"
    q_rows: tuple[LinearForm3, ...]
    numerators: tuple[LinearForm3, ...]
    box_count: int
    max_depth_reached: int
    leaves: tuple[Leaf, ...] = ()
    counterexample: Optional[tuple[ParamPoint, Fraction]] = None
    counterexample_depth: Optional[int] = None
    reason: Optional[str] = None


_UNIT_BOX: Box3 = ((_ZERO, _ONE), (_ZERO, _ONE), (_ZERO, _ONE))


def _corners(box: Box3):
    return tuple(product(*box))


def _in_box(p: ParamPoint, box: Box3) -> bool:
    return all(lo <= p[k] <= hi for k, (lo, hi) in enumerate(box))


def _in_q(rows: Sequence[LinearForm3], p: Sequence[Fraction]) -> bool:
    return all(r.value(p) >= 0 for r in rows)


def _ratio_at(
    rows: Sequence[LinearForm3],
    numerators: Sequence[LinearForm3],
    p: Sequence[Fraction],
) -> Optional[Fraction]:
    """min_i numerator_i(p) / delta(p) for admissible p with delta > 0."""
    if not _in_q(rows, p):
        return None
    d = delta(p)
    if d <= 0:
        return None
    return min(n.value(p) for n in numerators) / d


def _corner_bound_index(
    numerators: Sequence[LinearForm3], target: Fraction, corners
) -> Optional[int]:
    """First numerator with ``num - target*delta <= 0`` on all corners."""
    for i, num in enumerate(numerators):
        if all(num.value(v) - target * delta(v) <= 0 for v in corners):
            return i
    return None


def _farkas_bound(
    q_rows: Sequence[LinearForm3],
    numerators: Sequence[LinearForm3],
    target: Fraction,
    corners,
) -> Optional[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]]:
    """Multipliers certifying the box, via exact phase-1 simplex."""
    m, kq = len(numerators), len(q_rows)
    le_rows = []
    for v in corners:
        g = [num.value(v) - target * delta(v) for num in numerators]
        q = [row.value(v) for row in q_rows]
        le_rows.append((g + q, _ZERO))
    eq = [([_ONE] * m + [_ZERO] * kq, _ONE)]
    z = _lp_feasible(m + kq, le_rows, eq)
    if z is None:
        return None
    c, y = tuple(z[:m]), tuple(z[m:])
    _check_multipliers(q_rows, numerators, target, corners, c, y)
    return c, y


def _check_multipliers(q_rows, numerators, target, corners, c, y) -> None:
    if any(v < 0 for v in c) or any(v < 0 for v in y):
        raise CertificateError("negative multiplier")
    if sum(c) != 1:
        raise CertificateError("numerator multipliers must sum to 1")
    for v in corners:
        total = sum(
            ci * (num.value(v) - target * delta(v)) for ci, num in zip(c, numerators)
        )
        total += sum(yk * row.value(v) for yk, row in zip(y, q_rows))
        if total > 0:
            raise CertificateError("multiplier combination positive at a box corner")


def _split_box(box: Box3, tight_points: Sequence[ParamPoint]) -> tuple[Box3, Box3]:
    """Split preferring coordinates of tight points so they become corners."""
    axes = sorted(range(3), key=lambda k: (-(box[k][1] - box[k][0]), k))
    for k in axes:
        lo, hi = box[k]
        cands = [t for t in tight_points if _in_box(t, box) and lo < t[k] < hi]
        if cands:
            cut = min(cands)[k]
            return _cut(box, k, cut)
    k = axes[0]
    lo, hi = box[k]
    return _cut(box, k, (lo + hi) / 2)


def _cut(box: Box3, k: int, cut: Fraction) -> tuple[Box3, Box3]:
    left = tuple(
        (box[a][0], cut) if a == k else box[a] for a in range(3)
    )
    right = tuple(
        (cut, box[a][1]) if a == k else box[a] for a in range(3)
    )
    return left, right  # type: ignore[return-value]


def _box_volume(box: Box3) -> Fraction:
    v = _ONE
    for lo, hi in box:
        v *= hi - lo
    return v


def bb_certify_max(
    q_rows: Sequence[LinearForm3],
    numerators: Sequence[LinearForm3],
    target: RatLike,
    max_depth: int = 48,
    max_boxes: int = 1_000_000,
    volume_floor: Fraction = Fraction(1, 2**96),
) -> RatioCertificate:
    """Decide ``sup {min_i num_i / delta : p in Q, delta(p) > 0} <= target``.

    Breadth-first box refinement of the unit cube.  Each box is discharged by
    (1) exact infeasibility of Q within the box, (2) a single numerator with
    ``num - target*delta <= 0`` at all corners, or (3) exact Farkas
    multipliers combining the numerators and Q rows; otherwise it is split,
    preferring cuts through exact linearity-region vertices whose ratio equals
    the target (so suprema attained at rational points certify in finitely
    many steps).  Strict violations found at region vertices (depth 0) or box
    centers yield a Counterexample -- at the shallowest depth, largest value
    first, then lexicographically smallest point.  Hitting a resource limit
    yields Inconclusive, never a wrong verdict.
    """
    tgt = as_rat(target)
    rows = tuple(q_rows)
    nums = tuple(numerators)
    if not nums:
        raise ValueError("at least one numerator is required")

    def make(status: str, **kw) -> RatioCertificate:
        return RatioCertificate(
            target=tgt, status=status, q_rows=rows, numerators=nums, **kw
        )

    region_vertices = linearity_region_vertices(rows, nums)
    violations = []
    tight_points = []
    for v in region_vertices:
        ratio = _ratio_at(rows, nums, v)
        if ratio is None:
            continue
        if ratio > tgt:
            violations.append((-ratio, v))
        elif ratio == tgt:
            tight_points.append(v)
    if violations:
        neg_ratio, pt = min(violations)
        return make(
            "Counterexample",
            box_count=0,
            max_depth_reached=0,
            counterexample=(pt, -neg_ratio),
            counterexample_depth=0,
        )

    leaves: list[Leaf] = []
    level: list[Box3] = [_UNIT_BOX]
    depth = 0
    processed = 0
    limit_reason: Optional[str] = None
    while level:
        next_level: list[Box3] = []
        center_violations: list[tuple[Fraction, ParamPoint]] = []
        for box in level:
            processed += 1
            center = ParamPoint(*((lo + hi) / 2 for lo, hi in box))
            ratio = _ratio_at(rows, nums, center)
            if ratio is not None and ratio > tgt:
                center_violations.append((-ratio, center))
            if not feasible_box(rows, box):
                leaves.append(Leaf(box, "infeasible", None, None))
                continue
            corners = _corners(box)
            idx = _corner_bound_index(nums, tgt, corners)
            if idx is not None:
                c = tuple(_ONE if i == idx else _ZERO for i in range(len(nums)))
                y = tuple(_ZERO for _ in rows)
                leaves.append(Leaf(box, "bound", c, y))
                continue
            certified = _farkas_bound(rows, nums, tgt, corners)
            if certified is not None:
                leaves.append(Leaf(box, "bound", *certified))
                continue
            if depth >= max_depth:
                limit_reason = "max-depth"
                continue
            if _box_volume(box) <= volume_floor:
                limit_reason = "volume-floor"
                continue
            if processed + len(next_level) + 2 > max_boxes:
                limit_reason = "box-budget"
                continue
            next_level.extend(_split_box(box, tight_points))
        if center_violations:
            neg_ratio, pt = min(center_violations)
            return make(
                "Counterexample",
                box_count=processed,
                max_depth_reached=depth,
                counterexample=(pt, -neg_ratio),
                counterexample_depth=depth,
            )
        if limit_reason is not None:
            return make(
                "Inconclusive",
                box_count=processed,
                max_depth_reached=depth,
                reason=limit_reason,
            )
        level = next_level
        if level:
            depth += 1
    return make(
        "Certified",
        box_count=processed,
        max_depth_reached=depth,
        leaves=tuple(leaves),
    )


def replay_certificate(
    cert: RatioCertificate, target: Optional[RatLike] = None
) -> bool:
    """Re-verify a certificate from scratch; raises CertificateError on failure.

    For a "Certified" result: every leaf must lie in the unit cube with
    positive volume, leaf volumes must sum to exactly 1 (the leaves come from
    recursive bisection, so with per-leaf soundness this covers the cube up to
    a closed measure-zero set, and the certified inequality is closed), and
    each leaf must re-verify: infeasible leaves by exact elimination, bound
    leaves by re-checking the stored multipliers at all corners.  A larger
    ``target`` than certified is accepted: the bound combination only
    decreases when the target grows because ``delta >= 0`` on the cube.

    For a "Counterexample": the point must be admissible with positive
    ``delta`` and ratio strictly above the target (a smaller-or-equal target
    than recorded is accepted for the same monotonicity reason).
    """
    tgt = cert.target if target is None else as_rat(target)
    if cert.status == "Counterexample":
        if cert.counterexample is None:
            raise CertificateError("counterexample certificate without a point")
        pt, value = cert.counterexample
        ratio = _ratio_at(cert.q_rows, cert.numerators, pt)
        if ratio is None:
            raise CertificateError("counterexample point is not admissible")
        if ratio != value:
            raise CertificateError("counterexample value does not match")
        if not ratio > tgt:
            raise CertificateError("counterexample does not exceed the target")
        return True
    if cert.status != "Certified":
        raise CertificateError(f"cannot replay status {cert.status!r}")
    if tgt < cert.target:
        raise CertificateError("cannot replay at a smaller target than certified")
    total = _ZERO
    for leaf in cert.leaves:
        for lo, hi in leaf.box:
            if not (0 <= lo < hi <= 1):
                raise CertificateError("leaf box out of the unit cube or empty")
        total += _box_volume(leaf.box)
        if leaf.kind == "infeasible":
            if feasible_box(cert.q_rows, leaf.box):
                raise CertificateError("infeasible leaf meets Q")
        elif leaf.kind == "bound":
            if leaf.c is None or leaf.y is None:
                raise CertificateError("bound leaf without multipliers")
            if len(leaf.c) != len(cert.numerators) or len(leaf.y) != len(cert.q_rows):
                raise CertificateError("multiplier arity mismatch")
            _check_multipliers(
                cert.q_rows, cert.numerators, tgt, _corners(leaf.box), leaf.c, leaf.y
            )
        else:
            raise CertificateError(f"unknown leaf kind {leaf.kind!r}")
    if total != 1:
        raise CertificateError("leaf volumes do not cover the unit cube")
    return True


# --------------------------------------------------------------------------
# Quadrilateral families
# --------------------------------------------------------------------------


class QuadRectResult(NamedTuple):
    polygon: Polygon
    width_horizontal: Fraction
    width_vertical: Fraction


def quad_rect(
    kappa: RatLike, lam: RatLike, mu: RatLike, nu: RatLike
) -> QuadRectResult:
    """Quadrilateral circumscribing the four points (0, ±1), (1, ±1).

    Left vertex (-kappa, lam), right vertex (1+mu, nu) with kappa, mu > 0 and
    lam, nu in (-1, 1); the top and bottom vertices are forced by the edge
    incidences.  Returns the polygon and its exact widths along (1,0) and
    (0,1); for nu == lam these satisfy the hyperbola-like identity
    (kappa+mu) * ((top_y - 1) + (-bottom_y - 1)) == 2.
    """
    k, l, m, n = (as_rat(v) for v in (kappa, lam, mu, nu))
    if not (k > 0 and m > 0):
        raise ValueError("kappa and mu must be positive")
    if not (-1 < l < 1 and -1 < n < 1):
        raise ValueError("lam and nu must lie strictly between -1 and 1")
    d1 = (1 - n) * k + (1 - l) * m
    d2 = (1 + n) * k + (1 + l) * m
    if d1 == 0 or d2 == 0:
        raise ValueError("degenerate edge intersection")
    top = Point((1 - n) * k / d1, (1 - n) * (1 - l) / d1 + 1)
    bottom = Point((1 + n) * k / d2, -(1 + n) * (1 + l) / d2 - 1)
    poly = convex_hull([Point(-k, l), Point(1 + m, n), top, bottom])
    assert poly is not None and len(poly.vertices) == 4
    width_h = k + m + 1
    width_v = 2 + (1 + l) * (1 + n) / d2 + (1 - l) * (1 - n) / d1
    return QuadRectResult(poly, width_h, width_v)


class QuadCrossResult(NamedTuple):
    polygon: Polygon
    width_e1: Fraction
    width_halfsum: Fraction
    width_halfdiff: Fraction


def quad_cross(
    kappa: RatLike, lam: RatLike, mu: RatLike, nu: RatLike
) -> QuadCrossResult:
    """Quadrilateral through (±1, ±1) with apexes (kappa, lam), (mu, nu).

    Requires kappa, mu in (-1, 1), lam > 1, nu < -1.  The left and right
    vertices are the intersections of the edge lines through (-1, 1) and
    (1, -1).  Returns the polygon, its exact width along (1, 0), and the
    closed-form widths along (1,1)/2 and (1,-1)/2 -- exact polygon widths in
    the vertex-extremal regime lam >= 2+|kappa|, nu <= -2-|mu|.
    """
    k, l, m, n = (as_rat(v) for v in (kappa, lam, mu, nu))
    if not (-1 < k < 1 and -1 < m < 1):
        raise ValueError("kappa and mu must lie strictly between -1 and 1")
    if not (l > 1 and n < -1):
        raise ValueError("lam must exceed 1 and nu must be below -1")
    d_x = (l - 1) / (k + 1) - (n + 1) / (m + 1)
    d_y = (n + 1) / (m - 1) - (l - 1) / (k - 1)
    if d_x <= 0 or d_y <= 0:
        raise ValueError("degenerate crossing slopes")
    x = point(-1, 1) - Point(_ONE, (l - 1) / (k + 1)) * (2 / d_x)
    y = point(1, -1) + Point(_ONE, (n + 1) / (m - 1)) * (2 / d_y)
    poly = convex_hull([x, y, Point(k, l), Point(m, n)])
    assert poly is not None and len(poly.vertices) == 4
    w0 = 2 + 2 / d_y + 2 / d_x
    w1 = (k - m) / 2 + (l - n) / 2
    w2 = (m - k) / 2 + (l - n) / 2
    return QuadCrossResult(poly, w0, w1, w2)
