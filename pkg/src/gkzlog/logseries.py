"""Sparse logarithmic series and the constructive solution builders.

A series is a finite sum of terms

    coeff * lambda^(e1,...,eN) * log(lambda_1)^d1 * ... * log(lambda_N)^dN

with exact rational coefficients and exponents and nonnegative integer
log powers.  Terms are keyed by (exponent, logdeg); zero coefficients are
never stored and iteration order is lexicographic, so two equal series
serialize identically.

The builders construct the truncations of the classical solution series
of a GKZ system at a base exponent vector ``v``:

    build_F        log-free series, coefficient bracket_vec(v, l)
    build_G        the log-linear partner of F for one variable
    build_H_diag   the log-quadratic partner for a repeated variable
    build_H_off    the log-quadratic partner for a distinct pair

and ``combine_first_order`` / ``combine_second_order`` assemble genuine
solutions of the full system from them.  Each builder records its
truncation metadata (base vector, lattice, radius) so that the operator
module can compute certified regions later.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .coefficients import bracket, bracket_vec, f_coeffs
from .errors import MinimalityViolation, UndefinedBracket
from .lattice import RelationLattice
from .rationals import rational_vector, to_rational
from .support import support_set


@dataclass(frozen=True)
class SeriesMeta:
    """Truncation provenance: which box of which lattice built the series."""

    base: tuple[Fraction, ...]
    lattice: RelationLattice
    radius: int


@dataclass(frozen=True)
class LogTerm:
    exponent: tuple[Fraction, ...]
    logdeg: tuple[int, ...]
    coeff: Fraction


def _merge_meta(a, b):
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise ValueError("series have incompatible truncation metadata")


class LogSeries:
    """Finite sparse series in lambda with log-monomial factors."""

    __slots__ = ("nvars", "meta", "_terms")

    def __init__(self, nvars: int, terms=None, meta: SeriesMeta | None = None):
        canonical = {}
        for key, coeff in (terms or {}).items():
            exponent, logdeg = key
            value = to_rational(coeff)
            if value == 0:
                continue
            exponent = rational_vector(exponent)
            logdeg = tuple(int(d) for d in logdeg)
            if len(exponent) != nvars or len(logdeg) != nvars:
                raise ValueError("term dimension != nvars")
            if any(d < 0 for d in logdeg):
                raise ValueError("negative log power")
            canonical[(exponent, logdeg)] = value
        self.nvars = nvars
        self.meta = meta
        self._terms = canonical

    @classmethod
    def zero(cls, nvars: int, meta=None) -> "LogSeries":
        return cls(nvars, {}, meta)

    @classmethod
    def monomial(cls, exponent, logdeg=None, coeff=1, meta=None) -> "LogSeries":
        nvars = len(exponent)
        if logdeg is None:
            logdeg = (0,) * nvars
        return cls(nvars, {(tuple(exponent), tuple(logdeg)): coeff}, meta)

    def terms(self):
        """Terms in canonical (lexicographic) order."""
        for key in sorted(self._terms):
            exponent, logdeg = key
            yield LogTerm(exponent, logdeg, self._terms[key])

    def coefficient(self, exponent, logdeg=None) -> Fraction:
        if logdeg is None:
            logdeg = (0,) * self.nvars
        key = (rational_vector(exponent), tuple(int(d) for d in logdeg))
        return self._terms.get(key, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogSeries):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    __hash__ = None

    def __repr__(self) -> str:
        return f"LogSeries(nvars={self.nvars}, terms={len(self._terms)})"

    def _check_compatible(self, other: "LogSeries"):
        if self.nvars != other.nvars:
            raise ValueError("dimension mismatch")

    def __add__(self, other: "LogSeries") -> "LogSeries":
        self._check_compatible(other)
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, Fraction(0)) + coeff
        return LogSeries(self.nvars, merged, _merge_meta(self.meta, other.meta))

    def __neg__(self) -> "LogSeries":
        return self.scale(-1)

    def __sub__(self, other: "LogSeries") -> "LogSeries":
        return self + (-other)

    def scale(self, factor) -> "LogSeries":
        f = to_rational(factor)
        return LogSeries(
            self.nvars,
            {key: coeff * f for key, coeff in self._terms.items()},
            self.meta,
        )

    def mul_log_linear(self, ivec) -> "LogSeries":
        """Multiply by the linear log form ``sum_i ivec[i] * log(lambda_i)``."""
        if len(ivec) != self.nvars:
            raise ValueError("dimension mismatch")
        out = {}
        for (exponent, logdeg), coeff in self._terms.items():
            for i, weight in enumerate(ivec):
                if not weight:
                    continue
                bumped = list(logdeg)
                bumped[i] += 1
                key = (exponent, tuple(bumped))
                out[key] = out.get(key, Fraction(0)) + coeff * weight
        return LogSeries(self.nvars, out, self.meta)

    def filter_terms(self, predicate) -> "LogSeries":
        """Keep the terms where ``predicate(exponent, logdeg)`` holds."""
        kept = {
            key: coeff
            for key, coeff in self._terms.items()
            if predicate(key[0], key[1])
        }
        return LogSeries(self.nvars, kept, self.meta)

    def with_term_added(self, exponent, logdeg, delta) -> "LogSeries":
        """Copy with ``delta`` added to one coefficient (mutation testing)."""
        bump = LogSeries.monomial(exponent, logdeg, delta, self.meta)
        return self + bump


def first_order_coefficient(v, point, i: int) -> Fraction:
    """Log-free coefficient the first-order builder attaches to ``point``.

    Product of the brackets over the other coordinates times the case
    factor in coordinate ``i``, which is the constant term of the m=1
    coefficient family (0 when the shift there is 0).
    """
    prod = Fraction(1)
    for j, (z, k) in enumerate(zip(v, point)):
        if j != i:
            prod *= bracket(z, int(k))
    return prod * f_coeffs(v[i], int(point[i]), 1).constant


def second_order_diag_coefficient(v, point, i: int) -> Fraction:
    """Log-free coefficient of the repeated-index second-order builder."""
    prod = Fraction(1)
    for j, (z, k) in enumerate(zip(v, point)):
        if j != i:
            prod *= bracket(z, int(k))
    return prod * f_coeffs(v[i], int(point[i]), 2).constant


def second_order_off_coefficient(v, point, i: int, j: int) -> Fraction:
    """Log-free coefficient of the distinct-pair second-order builder."""
    prod = Fraction(1)
    for mcol, (z, k) in enumerate(zip(v, point)):
        if mcol not in (i, j):
            prod *= bracket(z, int(k))
    factor_i = f_coeffs(v[i], int(point[i]), 1).constant
    factor_j = f_coeffs(v[j], int(point[j]), 1).constant
    return prod * factor_i * factor_j


def _shifted_exponent(v, point):
    return tuple(x + d for x, d in zip(v, point))


def build_F(v, lattice: RelationLattice, radius: int) -> LogSeries:
    """Log-free series: one term per support point, coefficient bracket_vec.

    Requires ``v`` to have minimal negative support (check first via
    ``check_minimal``); the coefficient at the base exponent is 1.
    """
    base = rational_vector(v)
    terms = {}
    zero_deg = (0,) * len(base)
    for point in support_set(base, lattice, radius, ()):
        try:
            coeff = bracket_vec(base, point)
        except UndefinedBracket as exc:
            raise MinimalityViolation(
                f"support point {point} hit an undefined bracket: {exc}"
            ) from None
        terms[(_shifted_exponent(base, point), zero_deg)] = coeff
    return LogSeries(len(base), terms, SeriesMeta(base, lattice, radius))


def _build_log_free(v, lattice, radius, excluded, coefficient_fn) -> LogSeries:
    base = rational_vector(v)
    terms = {}
    zero_deg = (0,) * len(base)
    for point in support_set(base, lattice, radius, excluded):
        try:
            coeff = coefficient_fn(base, point)
        except UndefinedBracket as exc:
            raise MinimalityViolation(
                f"support point {point} hit an undefined bracket: {exc}"
            ) from None
        if coeff:
            terms[(_shifted_exponent(base, point), zero_deg)] = coeff
    return LogSeries(len(base), terms, SeriesMeta(base, lattice, radius))


def build_G(v, i: int, lattice: RelationLattice, radius: int) -> LogSeries:
    """Log-free partner of ``F`` for variable ``i`` (0-based).

    ``F * log(lambda_i) + G_i`` satisfies all box operators when ``v``
    passes the plain and the i-excluded minimality checks.
    """
    return _build_log_free(
        v, lattice, radius, (i,), lambda base, point: first_order_coefficient(base, point, i)
    )


def build_H_diag(v, i: int, lattice: RelationLattice, radius: int) -> LogSeries:
    """Log-free tail of the repeated-index second-order quasisolution."""
    return _build_log_free(
        v, lattice, radius, (i,), lambda base, point: second_order_diag_coefficient(base, point, i)
    )


def build_H_off(v, i: int, j: int, lattice: RelationLattice, radius: int) -> LogSeries:
    """Log-free tail of the distinct-pair second-order quasisolution."""
    if i == j:
        raise ValueError("indices must differ; use build_H_diag")
    return _build_log_free(
        v,
        lattice,
        radius,
        (i, j),
        lambda base, point: second_order_off_coefficient(base, point, i, j),
    )


def build_H_table(v, lattice: RelationLattice, radius: int):
    """Symmetric table of all second-order partners."""
    n = lattice.ambient_dim
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        table[i][i] = build_H_diag(v, i, lattice, radius)
        for j in range(i + 1, n):
            series = build_H_off(v, i, j, lattice, radius)
            table[i][j] = series
            table[j][i] = series
    return tuple(tuple(row) for row in table)


def combine_first_order(series_f: LogSeries, series_g, point) -> LogSeries:
    """Solution ``F*log(lambda^l) + sum_i l_i G_i`` for a lattice point ``l``."""
    n = series_f.nvars
    if len(series_g) != n or len(point) != n:
        raise ValueError("dimension mismatch")
    out = series_f.mul_log_linear(point)
    for weight, g in zip(point, series_g):
        if weight:
            out = out + g.scale(weight)
    return out


def combine_second_order(series_f, series_g, table_h, point, point2) -> LogSeries:
    """Second-order solution for the lattice points ``l`` and ``l'``.

    ``table_h`` must be a symmetric N x N table of series;
    ``l = l'`` is allowed.
    """
    n = series_f.nvars
    if len(series_g) != n or len(point) != n or len(point2) != n:
        raise ValueError("dimension mismatch")
    if len(table_h) != n or any(len(row) != n for row in table_h):
        raise ValueError("dimension mismatch")
    for i in range(n):
        for j in range(i + 1, n):
            if table_h[i][j] != table_h[j][i]:
                raise ValueError(f"asymmetric H table at ({i}, {j})")
    out = series_f.mul_log_linear(point).mul_log_linear(point2)
    first = LogSeries.zero(n, series_f.meta)
    second = LogSeries.zero(n, series_f.meta)
    for i in range(n):
        if point[i]:
            first = first + series_g[i].scale(point[i])
        if point2[i]:
            second = second + series_g[i].scale(point2[i])
    out = out + first.mul_log_linear(point2) + second.mul_log_linear(point)
    for i in range(n):
        if not point[i]:
            continue
        for j in range(n):
            weight = point[i] * point2[j]
            if weight:
                out = out + table_h[i][j].scale(weight)
    return out


_TERM_RE = re.compile(
    r"^\s*(?P<coeff>-?\d+(?:/\d+)?)\s*\*\s*lambda\^\((?P<exp>[^)]*)\)\s*\*\s*log\^\((?P<deg>[^)]*)\)\s*$"
)


def to_text(series: LogSeries) -> str:
    """Canonical text form: one term per line, exact rationals as ``p/q``."""
    lines = []
    for term in series.terms():
        exps = ",".join(str(x) for x in term.exponent)
        degs = ",".join(str(d) for d in term.logdeg)
        lines.append(f"{term.coeff} * lambda^({exps}) * log^({degs})")
    return "\n".join(lines) + "\n" if lines else ""


def from_text(text: str, nvars: int | None = None, meta=None) -> LogSeries:
    """Parse the canonical text form; blank lines and ``#`` comments ignored."""
    terms = {}
    width = nvars
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _TERM_RE.match(line)
        if not match:
            raise ValueError(f"line {lineno}: cannot parse series term {line!r}")
        exponent = rational_vector(match.group("exp").split(","))
        logdeg = tuple(int(d) for d in match.group("deg").split(","))
        if width is None:
            width = len(exponent)
        if len(exponent) != width or len(logdeg) != width:
            raise ValueError(f"line {lineno}: inconsistent dimension")
        key = (exponent, logdeg)
        terms[key] = terms.get(key, Fraction(0)) + Fraction(match.group("coeff"))
    if width is None:
        raise ValueError("cannot infer dimension of an empty series; pass nvars")
    return LogSeries(width, terms, meta)
