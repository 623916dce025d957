"""Complete-intersection systems and mirror-map integrality reports.

A complete-intersection input is a list of integer point sets, one per
equation, the first point of each set being distinguished.  Lifting each
point with an indicator block gives a point-configuration matrix whose
GKZ system at the canonical parameter has a distinguished log-free
solution F and log-linear partners G, one per column.  The mirror map of
a column is

    q = lambda * exp(G / F)

computed as a formal series supported on a pointed lattice cone, graded
by an integer functional that is positive on the support.  The division
and the exponential proceed grade by grade, so truncation at a grade
bound is exact.  ``integrality_report`` lists the non-integer
coefficients, if any, up to the bound.

Indices are 0-based throughout: column ``(i, j)`` is member ``j`` of set
``i``, and ``j = 0`` is the distinguished point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .coefficients import bracket_vec
from .errors import (
    DegenerateHull,
    InsufficientRadius,
    MinimalityViolation,
    NoPositiveFunctional,
)
from .lattice import IntMatrix, kernel_basis
from .linalg import cofactor_vector, rank_rational, solve_integer, solve_rational
from .logseries import first_order_coefficient
from .polytope import has_unique_interior_point
from .support import check_minimal, support_items

DEFAULT_GRADING_BOUND = 8
DEFAULT_RADIUS_CAP = 1 << 14


@dataclass(frozen=True)
class CISpec:
    """Complete-intersection input: point sets with distinguished first points."""

    point_sets: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if not self.point_sets:
            raise ValueError("need at least one point set")
        dim = len(self.point_sets[0][0])
        for s in self.point_sets:
            if not s:
                raise ValueError("point sets must be nonempty")
            if any(len(p) != dim for p in s):
                raise ValueError("inconsistent point dimension")

    @classmethod
    def from_lists(cls, sets) -> "CISpec":
        return cls(tuple(tuple(tuple(int(x) for x in p) for p in s) for s in sets))

    @property
    def dim(self) -> int:
        return len(self.point_sets[0][0])

    @property
    def num_sets(self) -> int:
        return len(self.point_sets)

    @property
    def column_count(self) -> int:
        return sum(len(s) for s in self.point_sets)

    def column_index(self, i: int, j: int) -> int:
        """Flat column index of member ``j`` of set ``i``."""
        if not 0 <= i < self.num_sets:
            raise ValueError("set index out of range")
        if not 0 <= j < len(self.point_sets[i]):
            raise ValueError("member index out of range")
        return sum(len(s) for s in self.point_sets[:i]) + j

    def column_of(self, flat: int) -> tuple[int, int]:
        if not 0 <= flat < self.column_count:
            raise ValueError("column index out of range")
        for i, s in enumerate(self.point_sets):
            if flat < len(s):
                return (i, flat)
            flat -= len(s)
        raise AssertionError("unreachable")

    @property
    def delta(self) -> tuple[int, ...]:
        """Sum of the distinguished points."""
        return tuple(sum(s[0][k] for s in self.point_sets) for k in range(self.dim))


def build_system(spec: CISpec):
    """Lifted matrix, parameter vector, and base exponent vector.

    Each point gains an indicator block selecting its set, the parameter
    is minus the sum of the lifted distinguished columns, and the base
    exponent vector is -1 on distinguished columns and 0 elsewhere.
    """
    n, m = spec.dim, spec.num_sets
    columns = []
    v = []
    for i, s in enumerate(spec.point_sets):
        for j, p in enumerate(s):
            indicator = [0] * m
            indicator[i] = 1
            columns.append(tuple(p) + tuple(indicator))
            v.append(Fraction(-1 if j == 0 else 0))
    matrix = IntMatrix.from_rows(
        tuple(tuple(col[r] for col in columns) for r in range(n + m))
    )
    beta = tuple(Fraction(-d) for d in spec.delta) + tuple(Fraction(-1) for _ in range(m))
    v = tuple(v)
    if matrix.mul_vec(v) != beta:
        raise AssertionError("lifted system is inconsistent")
    return matrix, beta, v


def positive_grading(points, bound: int = DEFAULT_GRADING_BOUND, ambient_dim=None):
    """Integer functional that is >= 1 on every nonzero given point.

    The functional only matters on the span of the points, so the search
    runs over integer coefficient vectors in the basis of the lattice the
    points generate, by growing max-norm shells in lexicographic order,
    and the first hit is lifted back to an ambient integer vector.
    Raises :class:`NoPositiveFunctional` when the shells are exhausted,
    which means the support is not pointed or the bound is too small.
    """
    pts = sorted({tuple(int(x) for x in p) for p in points if any(p)})
    if not pts:
        if ambient_dim is None:
            raise ValueError("no nonzero points and no ambient dimension given")
        return (0,) * ambient_dim
    width = len(pts[0])
    basis = _saturated_span_basis(pts, width)
    rank = len(basis)
    transpose = [[Fraction(row[k]) for row in basis] for k in range(width)]
    coords = []
    for p in pts:
        sol = solve_rational(transpose, [Fraction(x) for x in p])
        if sol is None or any(c.denominator != 1 for c in sol):
            raise AssertionError("point escaped the saturation of its own span")
        coords.append(tuple(int(c) for c in sol))

    for shell in range(bound + 1):
        for w in itertools.product(range(-shell, shell + 1), repeat=rank):
            if shell and max(abs(x) for x in w) != shell:
                continue
            if all(sum(a * b for a, b in zip(w, y)) >= 1 for y in coords):
                # Saturation makes the value map onto Z^rank, so the searched
                # functional lifts to an ambient integer vector with the very
                # same values; grades are never rescaled.
                return solve_integer(basis, w)
    raise NoPositiveFunctional(
        f"no integer functional with coordinates in [-{bound}, {bound}] is >= 1 "
        f"on all {len(pts)} support points"
    )


def _saturated_span_basis(points, width):
    """HNF basis of the saturation of the lattice the points generate.

    Saturation via the double-kernel trick: the rational span is the
    orthogonal complement of the integer kernel of the point matrix, and
    integer kernels are always saturated.
    """
    complement = kernel_basis(IntMatrix.from_rows(points))
    if complement.rank == 0:
        return kernel_basis(IntMatrix.from_rows([(0,) * width])).basis
    return kernel_basis(IntMatrix.from_rows(complement.basis)).basis


def _support_cone_rows(v, basis, excluded_col):
    """Sign constraints of a support set, in lattice coordinates.

    Valid because the base vector has entries in {0, -1}: preserving the
    negative support away from the excluded column demands the shift be
    >= 0 where the base is 0 and <= 0 where it is -1, which is a
    homogeneous condition on the coordinates.
    """
    rank = len(basis)
    rows = set()
    for col, entry in enumerate(v):
        if col == excluded_col:
            continue
        if entry == 0:
            sign = 1
        elif entry == -1:
            sign = -1
        else:
            raise AssertionError("base vector entry outside {0, -1}")
        row = tuple(sign * basis[r][col] for r in range(rank))
        if any(row):
            rows.add(row)
    return sorted(rows)


def _cone_rays(rows, rank):
    """Primitive extreme rays of ``{x : rows . x >= 0}``; requires pointed."""
    if rank == 0:
        return []
    constraint_rank = rank_rational(rows) if rows else 0
    if constraint_rank < rank:
        raise NoPositiveFunctional("support cone contains a line; not pointed")
    if rank == 1:
        rays = []
        for d in ((1,), (-1,)):
            if all(r[0] * d[0] >= 0 for r in rows):
                rays.append(d)
        return rays
    rays = set()
    for subset in itertools.combinations(rows, rank - 1):
        if rank_rational(subset) != rank - 1:
            continue
        direction = cofactor_vector(subset)
        if not any(direction):
            continue
        g = 0
        for a in direction:
            g = gcd(g, abs(a))
        direction = tuple(a // g for a in direction)
        for cand in (direction, tuple(-a for a in direction)):
            if all(sum(a * b for a, b in zip(row, cand)) >= 0 for row in rows):
                rays.add(cand)
    return sorted(rays)


@dataclass(frozen=True)
class MirrorMap:
    """Truncated mirror-map series for one column of a lifted system.

    ``coefficients`` maps lattice points to exact rationals; the grade of
    a point is its dot product with ``grading`` and every stored point
    has grade between 0 and ``grade_bound``.  The coefficient at the
    origin is exactly 1.
    """

    index: tuple[int, int]
    coefficients: dict
    grading: tuple[int, ...]
    grade_bound: int
    radius: int

    def grade_of(self, point) -> int:
        return sum(a * x for a, x in zip(self.grading, point))

    def sorted_items(self):
        return sorted(
            self.coefficients.items(), key=lambda kv: (self.grade_of(kv[0]), kv[0])
        )


def _graded(mapping, grade_of):
    slices: dict[int, dict] = {}
    for point, coeff in mapping.items():
        slices.setdefault(grade_of(point), {})[point] = coeff
    return slices


def _slice_mul(a_slice, b_slice, out):
    for p1, c1 in a_slice.items():
        for p2, c2 in b_slice.items():
            key = tuple(x + y for x, y in zip(p1, p2))
            out[key] = out.get(key, Fraction(0)) + c1 * c2


def graded_mul(a, b, grading, bound):
    """Product of two point-keyed series, truncated at the grade bound."""
    grade_of = lambda p: sum(g * x for g, x in zip(grading, p))
    sa, sb = _graded(a, grade_of), _graded(b, grade_of)
    out: dict = {}
    for ga, a_slice in sa.items():
        for gb, b_slice in sb.items():
            if ga + gb <= bound:
                _slice_mul(a_slice, b_slice, out)
    return {p: c for p, c in out.items() if c}


def graded_inverse_one_plus(f, grading, bound, origin):
    """Inverse of ``1 + f`` where ``f`` has grades >= 1, up to the bound."""
    grade_of = lambda p: sum(g * x for g, x in zip(grading, p))
    sf = _graded(f, grade_of)
    if any(g < 1 for g in sf):
        raise ValueError("f must be supported in grades >= 1")
    inv: dict[int, dict] = {0: {origin: Fraction(1)}}
    for d in range(1, bound + 1):
        acc: dict = {}
        for e in range(1, d + 1):
            if e in sf and (d - e) in inv:
                _slice_mul(sf[e], inv[d - e], acc)
        layer = {p: -c for p, c in acc.items() if c}
        if layer:
            inv[d] = layer
    return {p: c for layer in inv.values() for p, c in layer.items()}


def graded_exp(h, grading, bound, origin):
    """Exponential of a series with grades >= 1, up to the bound.

    Uses the grade-derivative recursion d*E_d = sum m*H_m E_(d-m), which
    stays exact because the grade of a product is the sum of grades.
    """
    grade_of = lambda p: sum(g * x for g, x in zip(grading, p))
    sh = _graded(h, grade_of)
    if any(g < 1 for g in sh):
        raise ValueError("h must be supported in grades >= 1")
    exp: dict[int, dict] = {0: {origin: Fraction(1)}}
    for d in range(1, bound + 1):
        acc: dict = {}
        for m in range(1, d + 1):
            if m in sh and (d - m) in exp:
                scaled = {p: c * m for p, c in sh[m].items()}
                _slice_mul(scaled, exp[d - m], acc)
        layer = {p: c / d for p, c in acc.items() if c}
        if layer:
            exp[d] = layer
    return {p: c for layer in exp.values() for p, c in layer.items()}


def graded_log(e, grading, bound, origin):
    """Logarithm of a series with constant term 1, up to the bound."""
    grade_of = lambda p: sum(g * x for g, x in zip(grading, p))
    se = _graded(e, grade_of)
    if se.get(0) != {origin: Fraction(1)}:
        raise ValueError("series must have constant term exactly 1")
    log: dict[int, dict] = {}
    for d in range(1, bound + 1):
        acc = dict(se.get(d, {}))
        acc = {p: c * d for p, c in acc.items()}
        for m in range(1, d):
            if m in log and (d - m) in se:
                scaled = {p: -c * m for p, c in log[m].items()}
                _slice_mul(scaled, se[d - m], acc)
        layer = {p: c / d for p, c in acc.items() if c}
        if layer:
            log[d] = layer
    return {p: c for layer in log.values() for p, c in layer.items()}


def _minimality_sweep(v, lattice, radius, columns):
    verdict = check_minimal(v, lattice, radius, ())
    if not verdict.minimal:
        raise MinimalityViolation(f"base vector fails minimality: {verdict}")
    for col in columns:
        verdict = check_minimal(v, lattice, radius, (col,))
        if not verdict.minimal:
            raise MinimalityViolation(
                f"base vector fails minimality with column {col} excluded: {verdict}"
            )


def mirror_map(
    spec: CISpec,
    index,
    grade_bound: int,
    radius: int = 2,
    grading_bound: int = DEFAULT_GRADING_BOUND,
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> MirrorMap:
    """Mirror-map series of one column, exact to the given grade bound.

    Verifies the unique-interior-point hypothesis and the minimality
    checks, finds a positive grading from the extreme rays of the
    support cones, and doubles the enumeration radius until every
    support point of grade <= bound is provably inside the box (the
    cone slice is a simplex spanned by the scaled rays, so the needed
    radius is read off exactly).  Division by F and the exponential are
    then computed grade by grade.
    """
    if isinstance(index, int):
        index = spec.column_of(index)
    i, j = index
    col = spec.column_index(i, j)
    if grade_bound < 0:
        raise ValueError("grade bound must be nonnegative")

    matrix, beta, v = build_system(spec)
    lattice = kernel_basis(matrix)
    width = lattice.ambient_dim

    if not has_unique_interior_point(spec.point_sets, spec.delta):
        raise DegenerateHull(
            "distinguished-point sum is not the unique interior lattice point "
            "of the Minkowski sum"
        )
    _minimality_sweep(v, lattice, min(radius, 4), range(width))

    if lattice.rank == 0 or grade_bound == 0:
        return MirrorMap(
            index=(i, j),
            coefficients={(0,) * width: Fraction(1)},
            grading=(0,) * width,
            grade_bound=grade_bound,
            radius=radius,
        )

    all_rays = set()
    for column in range(width):
        rows = _support_cone_rows(v, lattice.basis, column)
        for ray in _cone_rays(rows, lattice.rank):
            all_rays.add(ray)
    ray_points = [lattice.point_from_coords(r) for r in sorted(all_rays)]

    seed_points = []
    for column in range(width):
        for _, point in support_items(v, lattice, min(radius, 3), (column,)):
            if any(point):
                seed_points.append(point)
    grading = positive_grading(ray_points + seed_points, bound=grading_bound, ambient_dim=width)

    needed = max(1, radius)
    max_coord = 0
    for ray in sorted(all_rays):
        point = lattice.point_from_coords(ray)
        grade = sum(g * x for g, x in zip(grading, point))
        if grade < 1:
            raise NoPositiveFunctional(f"grading fails on extreme ray {point}")
        for x in ray:
            # ceil(grade_bound * |x| / grade): box coordinate reached by the
            # grade-D slice along this ray.
            max_coord = max(max_coord, -(-(grade_bound * abs(x)) // grade))
    while needed < max_coord:
        needed *= 2
        if needed > radius_cap:
            raise InsufficientRadius(
                f"radius {needed} exceeds cap {radius_cap} while enclosing grade <= {grade_bound}"
            )

    grade_of = lambda p: sum(g * x for g, x in zip(grading, p))
    origin = (0,) * width

    f_tail = {}
    for _, point in support_items(v, lattice, needed, ()):
        if not any(point):
            continue
        grade = grade_of(point)
        if grade < 1:
            raise AssertionError(f"support point {point} has nonpositive grade")
        if grade <= grade_bound:
            coeff = bracket_vec(v, point)
            if coeff:
                f_tail[point] = coeff
    g_tail = {}
    for _, point in support_items(v, lattice, needed, (col,)):
        if not any(point):
            continue
        grade = grade_of(point)
        if grade < 1:
            raise AssertionError(f"support point {point} has nonpositive grade")
        if grade <= grade_bound:
            coeff = first_order_coefficient(v, point, col)
            if coeff:
                g_tail[point] = coeff

    inverse = graded_inverse_one_plus(f_tail, grading, grade_bound, origin)
    ratio = graded_mul(g_tail, inverse, grading, grade_bound)
    series = graded_exp(ratio, grading, grade_bound, origin)
    return MirrorMap(
        index=(i, j),
        coefficients=series,
        grading=grading,
        grade_bound=grade_bound,
        radius=needed,
    )


def integrality_report(q: MirrorMap):
    """Non-integer coefficients up to the grade bound, sorted by grade."""
    return [
        (point, coeff)
        for point, coeff in q.sorted_items()
        if coeff.denominator != 1
    ]


def render_integrality_report(q: MirrorMap, source_hash: str) -> str:
    """Text report: header lines, then OK or one line per violation."""
    lines = [
        "# mirror map integrality report",
        f"# source: {source_hash}",
        f"# index: {q.index[0]},{q.index[1]}",
        "# grading: (" + ",".join(str(c) for c in q.grading) + ")",
        f"# grade bound: {q.grade_bound}",
    ]
    violations = integrality_report(q)
    if not violations:
        lines.append("OK")
    else:
        for point, coeff in violations:
            grade = q.grade_of(point)
            lines.append(f"{grade} | ({','.join(str(x) for x in point)}) | {coeff}")
    return "\n".join(lines) + "\n"


def render_coefficients(q: MirrorMap) -> str:
    """All mirror-map coefficients, one ``grade | point | value`` line each."""
    lines = []
    for point, coeff in q.sorted_items():
        grade = q.grade_of(point)
        lines.append(f"{grade} | ({','.join(str(x) for x in point)}) | {coeff}")
    return "\n".join(lines) + "\n" if lines else ""
