"""Integer relation lattices: kernel bases and bounded point enumeration.

The relation lattice of a point configuration (stored as matrix columns)
is the integer kernel of the matrix.  ``kernel_basis`` computes a
saturated basis, canonicalized by Hermite normal form so that outputs are
stable across runs and platforms.  ``enumerate_box`` walks all integer
coefficient vectors in a max-norm box in a fixed lexicographic order; it
is the truncation device used by every series builder.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ResourceLimit
from .linalg import hnf_rows, solve_rational
from .rationals import to_rational

DEFAULT_MAX_BOX_POINTS = 2_000_000


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, stored by rows."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ValueError("matrix must have positive dimensions")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def mul_vec(self, vec) -> tuple:
        if len(vec) != self.n_cols:
            raise ValueError("dimension mismatch")
        return tuple(sum(a * x for a, x in zip(row, vec)) for row in self.rows)


@dataclass(frozen=True)
class RelationLattice:
    """Saturated integer basis of the kernel of a point-configuration matrix.

    ``basis`` rows are in Hermite normal form (leading entries positive,
    entries above each pivot reduced), so the basis is canonical.
    """

    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def point_from_coords(self, coeffs) -> tuple[int, ...]:
        if len(coeffs) != self.rank:
            raise ValueError("coefficient length != lattice rank")
        point = [0] * self.ambient_dim
        for c, row in zip(coeffs, self.basis):
            if c:
                for i, b in enumerate(row):
                    point[i] += c * b
        return tuple(point)

    def coords_of(self, vec):
        """Coordinates of ``vec`` in the basis, or ``None`` if off the span.

        The solve is exact over the rationals; a non-integral result means
        ``vec`` lies in the rational span but not in the lattice itself.
        """
        if len(vec) != self.ambient_dim:
            raise ValueError("vector length != ambient dimension")
        if self.rank == 0:
            return () if not any(vec) else None
        columns = [[Fraction(row[i]) for row in self.basis] for i in range(self.ambient_dim)]
        return solve_rational(columns, [to_rational(x) for x in vec])

    def contains(self, vec) -> bool:
        coords = self.coords_of(vec)
        return coords is not None and all(c.denominator == 1 for c in coords)


def kernel_basis(matrix) -> RelationLattice:
    """Saturated basis of the integer kernel of ``matrix``.

    Row-reduces ``[A^T | I]`` to Hermite normal form; the rows whose
    left block vanished carry a basis of the kernel in their right block.
    Because the reduction is unimodular the basis generates the full
    kernel lattice, not a finite-index sublattice.
    """
    if not isinstance(matrix, IntMatrix):
        matrix = IntMatrix.from_rows(matrix)
    n, width = matrix.n_rows, matrix.n_cols
    aug = []
    for j in range(width):
        row = list(matrix.column(j)) + [0] * width
        row[n + j] = 1
        aug.append(row)
    reduced = hnf_rows(aug)
    kernel_rows = [row[n:] for row in reduced if not any(row[:n])]
    basis = hnf_rows(kernel_rows)
    return RelationLattice(ambient_dim=width, basis=basis)


def enumerate_box(lattice: RelationLattice, radius: int, max_points: int = DEFAULT_MAX_BOX_POINTS):
    """All lattice points with basis coefficients in ``[-radius, radius]``.

    Returns ``[(coeffs, point), ...]`` in lexicographic order of the
    coefficient vector; the count is ``(2*radius + 1) ** rank``.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    count = (2 * radius + 1) ** lattice.rank
    if count > max_points:
        raise ResourceLimit(
            f"box enumeration would produce {count} points (cap {max_points})"
        )
    out = []
    for coeffs in itertools.product(range(-radius, radius + 1), repeat=lattice.rank):
        out.append((coeffs, lattice.point_from_coords(coeffs)))
    return out
