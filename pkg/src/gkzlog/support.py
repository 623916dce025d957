"""Negative-support combinatorics and radius-bounded minimality checks.

The negative support of an exponent vector is the set of coordinates that
are negative integers; variants ignore one or two designated coordinates.
Minimality (no lattice shift strictly shrinks the support) is semi-decided
by scanning a coefficient box of the given radius, so every verdict is
radius-qualified.  All indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import RelationLattice, enumerate_box
from .rationals import is_negative_integer, rational_vector


def nsupp(vector, excluded=()) -> frozenset[int]:
    """Indices (outside ``excluded``) where ``vector`` is a negative integer."""
    skip = frozenset(excluded)
    for i in skip:
        if not 0 <= i < len(vector):
            raise ValueError(f"excluded index {i} out of range")
    return frozenset(
        i
        for i, x in enumerate(vector)
        if i not in skip and is_negative_integer(x)
    )


@dataclass(frozen=True)
class SupportVerdict:
    """Outcome of a bounded minimality scan.

    ``counterexample`` is the first enumerated lattice point (if any)
    whose shift strictly shrinks the excluded-index negative support.
    """

    minimal: bool
    radius: int
    counterexample: tuple[int, ...] | None = None

    def __str__(self):
        if self.minimal:
            return f"minimal within radius {self.radius}"
        return f"counterexample {self.counterexample} at radius {self.radius}"


def check_minimal(v, lattice: RelationLattice, radius: int, excluded=()) -> SupportVerdict:
    """Scan the box for a shift that strictly shrinks the negative support."""
    base = rational_vector(v)
    target = nsupp(base, excluded)
    for _, point in enumerate_box(lattice, radius):
        shifted = nsupp([x + d for x, d in zip(base, point)], excluded)
        if shifted < target:
            return SupportVerdict(minimal=False, radius=radius, counterexample=point)
    return SupportVerdict(minimal=True, radius=radius)


def support_items(v, lattice: RelationLattice, radius: int, excluded=()):
    """Pairs ``(coeffs, point)`` whose shift preserves the negative support."""
    base = rational_vector(v)
    target = nsupp(base, excluded)
    out = []
    for coeffs, point in enumerate_box(lattice, radius):
        shifted = nsupp([x + d for x, d in zip(base, point)], excluded)
        if shifted == target:
            out.append((coeffs, point))
    return out


def support_set(v, lattice: RelationLattice, radius: int, excluded=()):
    """Lattice points in the box whose shift preserves the negative support."""
    return [point for _, point in support_items(v, lattice, radius, excluded)]
