"""Exact logarithmic series solutions of A-hypergeometric (GKZ) systems.

All arithmetic is exact rational; there is no floating point anywhere in
the package.  See the README for the problem-file schema, the series
text format, and the command-line interface.
"""

from .ci_mirror import (
    CISpec,
    MirrorMap,
    build_system,
    integrality_report,
    mirror_map,
    positive_grading,
)
from .coefficients import (
    UniLogPoly,
    bracket,
    bracket_vec,
    elem_sym_shifted,
    f_coeffs,
    mono_sum_shifted,
    pochhammer,
)
from .errors import (
    DegenerateHull,
    GkzError,
    InsufficientRadius,
    MinimalityViolation,
    NoPositiveFunctional,
    NonLatticeExponent,
    PoleAtShift,
    ProblemFileError,
    ResourceLimit,
    UndefinedBracket,
)
from .lattice import IntMatrix, RelationLattice, enumerate_box, kernel_basis
from .logseries import (
    LogSeries,
    LogTerm,
    SeriesMeta,
    build_F,
    build_G,
    build_H_diag,
    build_H_off,
    build_H_table,
    combine_first_order,
    combine_second_order,
    from_text,
    to_text,
)
from .operators import (
    BoxOp,
    CertifiedReport,
    EulerOp,
    apply_box,
    apply_euler,
    differentiate,
    verify_box_annihilation,
    verify_euler_annihilation,
)
from .polytope import (
    Polytope,
    has_unique_interior_point,
    interior_lattice_points,
    minkowski_hull,
)
from .support import SupportVerdict, check_minimal, nsupp, support_set

__version__ = "0.1.0"

__all__ = [
    "CISpec",
    "MirrorMap",
    "build_system",
    "integrality_report",
    "mirror_map",
    "positive_grading",
    "UniLogPoly",
    "bracket",
    "bracket_vec",
    "elem_sym_shifted",
    "f_coeffs",
    "mono_sum_shifted",
    "pochhammer",
    "DegenerateHull",
    "GkzError",
    "InsufficientRadius",
    "MinimalityViolation",
    "NoPositiveFunctional",
    "NonLatticeExponent",
    "PoleAtShift",
    "ProblemFileError",
    "ResourceLimit",
    "UndefinedBracket",
    "IntMatrix",
    "RelationLattice",
    "enumerate_box",
    "kernel_basis",
    "LogSeries",
    "LogTerm",
    "SeriesMeta",
    "build_F",
    "build_G",
    "build_H_diag",
    "build_H_off",
    "build_H_table",
    "combine_first_order",
    "combine_second_order",
    "from_text",
    "to_text",
    "BoxOp",
    "CertifiedReport",
    "EulerOp",
    "apply_box",
    "apply_euler",
    "differentiate",
    "verify_box_annihilation",
    "verify_euler_annihilation",
    "Polytope",
    "has_unique_interior_point",
    "interior_lattice_points",
    "minkowski_hull",
    "SupportVerdict",
    "check_minimal",
    "nsupp",
    "support_set",
]
