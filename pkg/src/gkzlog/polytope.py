"""Exact Minkowski sums, convex hulls, and interior lattice points.

The instances here are tiny (a handful of integer points in dimension at
most five), so the hull is computed by brute force: every spanning
n-subset of candidate points proposes a hyperplane, and the hyperplanes
with all candidates on one side are the facets.  Everything is exact
integer arithmetic; no floating point is used anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .errors import DegenerateHull
from .linalg import cofactor_vector, rank_rational


@dataclass(frozen=True)
class Polytope:
    """Full-dimensional lattice polytope with exact facet description.

    Facets are pairs ``(normal, offset)`` with the polytope on the
    ``normal . x <= offset`` side, normals primitive integer vectors.
    """

    dim: int
    vertices: tuple[tuple[int, ...], ...]
    facets: tuple[tuple[tuple[int, ...], int], ...]

    def contains(self, point, strict=False) -> bool:
        for normal, offset in self.facets:
            value = sum(a * x for a, x in zip(normal, point))
            if value > offset or (strict and value == offset):
                return False
        return True


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def minkowski_hull(point_sets) -> Polytope:
    """Convex hull of the Minkowski sum of the given integer point sets.

    Candidate points are all sums picking one point from each set.
    Raises :class:`DegenerateHull` when the hull is not full-dimensional
    (its interior is then empty, which is reported rather than guessed).
    """
    sets = [tuple(tuple(int(x) for x in p) for p in s) for s in point_sets]
    if not sets or any(not s for s in sets):
        raise ValueError("point sets must be nonempty")
    dim = len(sets[0][0])
    for s in sets:
        if any(len(p) != dim for p in s):
            raise ValueError("inconsistent dimension")
    candidates = sorted({tuple(map(sum, zip(*combo))) for combo in itertools.product(*sets)})

    origin = candidates[0]
    differences = [tuple(a - b for a, b in zip(p, origin)) for p in candidates[1:]]
    if rank_rational(differences) < dim:
        raise DegenerateHull(
            f"hull of {len(candidates)} candidate points is not full-dimensional in Z^{dim}"
        )

    facets = {}
    for subset in itertools.combinations(candidates, dim):
        rows = [tuple(a - b for a, b in zip(p, subset[0])) for p in subset[1:]]
        normal = cofactor_vector(rows)
        if not any(normal):
            continue
        offset = _dot(normal, subset[0])
        values = [_dot(normal, p) - offset for p in candidates]
        if all(v <= 0 for v in values):
            pass
        elif all(v >= 0 for v in values):
            normal = tuple(-a for a in normal)
            offset = -offset
        else:
            continue
        g = 0
        for a in normal:
            g = gcd(g, abs(a))
        facets[(tuple(a // g for a in normal), offset // g)] = True

    facet_list = tuple(sorted(facets))
    vertices = []
    for p in candidates:
        active = [normal for normal, offset in facet_list if _dot(normal, p) == offset]
        if len(active) >= dim and rank_rational(active) == dim:
            vertices.append(p)
    return Polytope(dim=dim, vertices=tuple(vertices), facets=facet_list)


def interior_lattice_points(poly: Polytope):
    """Integer points strictly inside every facet, in lexicographic order."""
    if not poly.vertices:
        return []
    lows = [min(v[i] for v in poly.vertices) for i in range(poly.dim)]
    highs = [max(v[i] for v in poly.vertices) for i in range(poly.dim)]
    out = []
    for point in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))):
        if all(_dot(normal, point) < offset for normal, offset in poly.facets):
            out.append(point)
    return out


def has_unique_interior_point(point_sets, point) -> bool:
    """True iff the Minkowski-sum hull has exactly ``point`` strictly inside."""
    hull = minkowski_hull(point_sets)
    return interior_lattice_points(hull) == [tuple(int(x) for x in point)]
