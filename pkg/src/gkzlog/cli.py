"""Batch command-line front end.

Reads a JSON problem file (matrix system or complete-intersection spec),
runs the requested pipeline, and writes plain-text artifacts.  Every
solve/combine command re-verifies its own output through the operator
module before reporting success.  Output files are byte-identical across
runs of the same input; wall-clock timing goes to stdout only.

Exit codes: 0 pass, 1 verification failure, 2 input error, 3 resource
limit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from .ci_mirror import (
    CISpec,
    build_system,
    mirror_map,
    render_coefficients,
    render_integrality_report,
)
from .errors import (
    GkzError,
    InsufficientRadius,
    ProblemFileError,
    ResourceLimit,
)
from .lattice import DEFAULT_MAX_BOX_POINTS, IntMatrix, kernel_basis
from .logseries import (
    build_F,
    build_G,
    build_H_table,
    combine_first_order,
    combine_second_order,
    to_text,
)
from .operators import BoxOp, verify_box_annihilation, verify_euler_annihilation
from .polytope import has_unique_interior_point
from .rationals import rational_vector
from .support import check_minimal, support_set

DEFAULT_RADIUS = 6
DEFAULT_GRADE = 6


class Problem:
    """Loaded and validated problem file."""

    def __init__(self, raw: dict, path: str):
        self.raw = raw
        self.name = raw.get("name", Path(path).stem)
        self.radius = int(raw.get("radius", DEFAULT_RADIUS))
        self.grade = int(raw.get("grade", DEFAULT_GRADE))
        canonical = json.dumps(raw, sort_keys=True, separators=(",", ":"))
        self.source_hash = "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]
        self.spec = None
        if "ci" in raw:
            ci = raw["ci"]
            if not isinstance(ci, dict) or "point_sets" not in ci:
                raise ProblemFileError("'ci' must be an object with 'point_sets'")
            try:
                self.spec = CISpec.from_lists(ci["point_sets"])
            except (ValueError, TypeError) as exc:
                raise ProblemFileError(f"bad point sets: {exc}") from None
            self.matrix, self.beta, self.v = build_system(self.spec)
        elif "matrix" in raw:
            try:
                self.matrix = IntMatrix.from_rows(raw["matrix"])
            except (ValueError, TypeError) as exc:
                raise ProblemFileError(f"bad matrix: {exc}") from None
            if "beta" not in raw or "v" not in raw:
                raise ProblemFileError("matrix problems need 'beta' and 'v'")
            self.beta = rational_vector(raw["beta"])
            self.v = rational_vector(raw["v"])
            if len(self.beta) != self.matrix.n_rows:
                raise ProblemFileError("beta length != matrix rows")
            if len(self.v) != self.matrix.n_cols:
                raise ProblemFileError("v length != matrix columns")
            if self.matrix.mul_vec(self.v) != self.beta:
                raise ProblemFileError("A v != beta")
        else:
            raise ProblemFileError("problem file needs either 'matrix' or 'ci'")


def load_problem(path: str) -> Problem:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(raw, dict):
        raise ProblemFileError("top-level JSON value must be an object")
    return Problem(raw, path)


def _int(chunk):
    try:
        return int(chunk)
    except ValueError:
        raise ProblemFileError(f"expected an integer, got {chunk!r}") from None


def _parse_index_list(text, limit):
    out = []
    for chunk in text.replace(",", " ").split():
        value = _int(chunk)
        if not 0 <= value < limit:
            raise ProblemFileError(f"index {value} out of range 0..{limit - 1}")
        out.append(value)
    return out


def _parse_int_vector(text, length):
    cleaned = text.strip().lstrip("(").rstrip(")")
    parts = [p for p in cleaned.replace(",", " ").split() if p]
    if len(parts) != length:
        raise ProblemFileError(f"expected {length} integers, got {len(parts)}")
    return tuple(_int(p) for p in parts)


def _thread_count(args) -> int:
    if args.threads is not None:
        count = args.threads
    else:
        count = int(os.environ.get("GKZLOG_THREADS", "1"))
    if count < 1:
        raise ProblemFileError("thread count must be >= 1")
    return count


def _check_budget(lattice, radius, max_terms):
    count = (2 * radius + 1) ** lattice.rank
    if count > max_terms:
        raise ResourceLimit(f"box enumeration needs {count} points (--max-terms {max_terms})")


def _verify_series(series, lattice, matrix=None, beta=None):
    """Box-verify against every basis operator; optionally Euler-verify.

    Returns (list of summary dicts, all_passed).
    """
    summaries = []
    ok = True
    for row in lattice.basis:
        report = verify_box_annihilation(series, BoxOp(row))
        summaries.append(
            {
                "op": f"box({','.join(str(x) for x in row)})",
                "checked_terms": report.checked_term_count,
                "violations": len(report.violations),
            }
        )
        ok = ok and report.passed
    if matrix is not None:
        report = verify_euler_annihilation(series, matrix, beta)
        summaries.append(
            {
                "op": "euler",
                "checked_terms": report.checked_term_count,
                "violations": len(report.violations),
            }
        )
        ok = ok and report.passed
    return summaries, ok


def _write_artifact(out_dir: Path, name: str, content: str):
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / name).write_text(content, encoding="utf-8")
    return name


def _write_run_report(out_dir: Path, report: dict):
    content = json.dumps(report, indent=2) + "\n"
    return _write_artifact(out_dir, "run_report.json", content)


def cmd_lattice(args) -> int:
    problem = load_problem(args.file)
    lattice = kernel_basis(problem.matrix)
    print(f"ambient dimension: {lattice.ambient_dim}")
    print(f"rank: {lattice.rank}")
    for row in lattice.basis:
        print("basis: (" + ",".join(str(x) for x in row) + ")")
    return 0


def cmd_support(args) -> int:
    problem = load_problem(args.file)
    lattice = kernel_basis(problem.matrix)
    radius = args.radius if args.radius is not None else problem.radius
    _check_budget(lattice, radius, args.max_terms)
    excluded = tuple(_parse_index_list(args.exclude, problem.matrix.n_cols)) if args.exclude else ()
    verdict = check_minimal(problem.v, lattice, radius, excluded)
    print(f"excluded: {sorted(excluded)}")
    print(f"verdict: {verdict}")
    points = support_set(problem.v, lattice, radius, excluded)
    print(f"support points within radius {radius}: {len(points)}")
    for point in points:
        print("  (" + ",".join(str(x) for x in point) + ")")
    return 0 if verdict.minimal else 1


def cmd_solve(args) -> int:
    started = time.perf_counter()
    problem = load_problem(args.file)
    lattice = kernel_basis(problem.matrix)
    radius = args.radius if args.radius is not None else problem.radius
    _check_budget(lattice, radius, args.max_terms)
    out_dir = Path(args.out)
    ncols = problem.matrix.n_cols

    plain = check_minimal(problem.v, lattice, radius, ())
    verdicts = {"excluded=()": str(plain)}
    if not plain.minimal:
        print("minimality failed for the plain negative support")
        return 1

    if args.order >= 1:
        indices = (
            _parse_index_list(args.indices, ncols) if args.indices else list(range(ncols))
        )
        for i in sorted(set(indices)):
            verdict = check_minimal(problem.v, lattice, radius, (i,))
            verdicts[f"excluded=({i},)"] = str(verdict)
            if not verdict.minimal:
                print(f"minimality failed with index {i} excluded")
                return 1
    else:
        indices = []

    artifacts = []
    verification = []
    all_ok = True

    def record(name, series, with_euler=False):
        nonlocal all_ok
        summaries, ok = _verify_series(
            series,
            lattice,
            problem.matrix if with_euler else None,
            problem.beta if with_euler else None,
        )
        verification.append({"artifact": name, "checks": summaries})
        all_ok = all_ok and ok
        artifacts.append(_write_artifact(out_dir, name, to_text(series)))

    series_f = build_F(problem.v, lattice, radius)
    if args.order == 0:
        record("F.series", series_f)
    elif args.order == 1:
        record("F.series", series_f)
        for i in sorted(set(indices)):
            quasi = series_f.mul_log_linear(tuple(1 if k == i else 0 for k in range(ncols)))
            quasi = quasi + build_G(problem.v, i, lattice, radius)
            record(f"quasi1_{i}.series", quasi)
    else:
        pairs = []
        if args.indices:
            for chunk in args.indices.split():
                parts = chunk.split(",")
                if len(parts) != 2:
                    raise ProblemFileError(f"order-2 indices are 'i,j' pairs, got {chunk!r}")
                i, j = (_int(p) for p in parts)
                if not (0 <= i < ncols and 0 <= j < ncols):
                    raise ProblemFileError(f"pair {chunk!r} out of range 0..{ncols - 1}")
                pairs.append((min(i, j), max(i, j)))
        else:
            pairs = [(i, j) for i in range(ncols) for j in range(i, ncols)]
        for i, j in sorted(set(pairs)):
            for excluded in ({i}, {j}, {i, j}):
                key = f"excluded={tuple(sorted(excluded))}"
                if key not in verdicts:
                    verdict = check_minimal(problem.v, lattice, radius, tuple(sorted(excluded)))
                    verdicts[key] = str(verdict)
                    if not verdict.minimal:
                        print(f"minimality failed with {sorted(excluded)} excluded")
                        return 1
        record("F.series", series_f)
        series_g = [build_G(problem.v, i, lattice, radius) for i in range(ncols)]
        table = build_H_table(problem.v, lattice, radius)
        for i, j in sorted(set(pairs)):
            unit_i = tuple(1 if k == i else 0 for k in range(ncols))
            unit_j = tuple(1 if k == j else 0 for k in range(ncols))
            quasi = series_f.mul_log_linear(unit_i).mul_log_linear(unit_j)
            if i == j:
                quasi = quasi + series_g[i].mul_log_linear(unit_i).scale(2) + table[i][i]
            else:
                quasi = (
                    quasi
                    + series_g[i].mul_log_linear(unit_j)
                    + series_g[j].mul_log_linear(unit_i)
                    + table[i][j]
                )
            record(f"quasi2_{i}_{j}.series", quasi)

    report = {
        "command": "solve",
        "input": problem.raw,
        "source": problem.source_hash,
        "parameters": {"order": args.order, "radius": radius},
        "verdicts": verdicts,
        "artifacts": artifacts,
        "verification": verification,
        "status": "pass" if all_ok else "fail",
    }
    artifacts.append(_write_run_report(out_dir, report))
    elapsed = time.perf_counter() - started
    print(f"status: {report['status']}")
    print(f"artifacts: {', '.join(artifacts)}")
    print(f"elapsed: {elapsed:.3f}s")
    return 0 if all_ok else 1


def cmd_combine(args) -> int:
    started = time.perf_counter()
    problem = load_problem(args.file)
    lattice = kernel_basis(problem.matrix)
    radius = args.radius if args.radius is not None else problem.radius
    _check_budget(lattice, radius, args.max_terms)
    out_dir = Path(args.out)
    ncols = problem.matrix.n_cols

    point = _parse_int_vector(args.l, ncols)
    if any(problem.matrix.mul_vec(point)):
        raise ProblemFileError(f"l = {point} is not in the relation lattice")
    point2 = None
    if args.lprime:
        point2 = _parse_int_vector(args.lprime, ncols)
        if any(problem.matrix.mul_vec(point2)):
            raise ProblemFileError(f"l' = {point2} is not in the relation lattice")

    needed = [()] + [(i,) for i in range(ncols)]
    if point2 is not None:
        needed += [tuple(sorted({i, j})) for i in range(ncols) for j in range(i + 1, ncols)]
    verdicts = {}
    for excluded in needed:
        verdict = check_minimal(problem.v, lattice, radius, excluded)
        verdicts[f"excluded={excluded}"] = str(verdict)
        if not verdict.minimal:
            print(f"minimality failed with {excluded} excluded")
            return 1

    series_f = build_F(problem.v, lattice, radius)
    series_g = [build_G(problem.v, i, lattice, radius) for i in range(ncols)]
    if point2 is None:
        solution = combine_first_order(series_f, series_g, point)
    else:
        table = build_H_table(problem.v, lattice, radius)
        solution = combine_second_order(series_f, series_g, table, point, point2)

    summaries, all_ok = _verify_series(solution, lattice, problem.matrix, problem.beta)
    artifacts = [_write_artifact(out_dir, "solution.series", to_text(solution))]
    report = {
        "command": "combine",
        "input": problem.raw,
        "source": problem.source_hash,
        "parameters": {
            "l": list(point),
            "lprime": list(point2) if point2 is not None else None,
            "radius": radius,
        },
        "verdicts": verdicts,
        "artifacts": artifacts,
        "verification": [{"artifact": "solution.series", "checks": summaries}],
        "status": "pass" if all_ok else "fail",
    }
    artifacts.append(_write_run_report(out_dir, report))
    elapsed = time.perf_counter() - started
    print(f"status: {report['status']}")
    print(f"artifacts: {', '.join(artifacts)}")
    print(f"elapsed: {elapsed:.3f}s")
    return 0 if all_ok else 1


def cmd_ci(args) -> int:
    problem = load_problem(args.file)
    if problem.spec is None:
        raise ProblemFileError("'ci' section required for this command")
    spec = problem.spec
    radius = args.radius if args.radius is not None else problem.radius
    lattice = kernel_basis(problem.matrix)
    _check_budget(lattice, radius, args.max_terms)
    print("lifted matrix rows:")
    for row in problem.matrix.rows:
        print("  (" + ",".join(str(x) for x in row) + ")")
    print("beta: (" + ",".join(str(x) for x in problem.beta) + ")")
    print("v: (" + ",".join(str(x) for x in problem.v) + ")")
    hypothesis = has_unique_interior_point(spec.point_sets, spec.delta)
    print(f"unique interior point {spec.delta}: {hypothesis}")
    ok = hypothesis
    verdict = check_minimal(problem.v, lattice, radius, ())
    print(f"minimality, nothing excluded: {verdict}")
    ok = ok and verdict.minimal
    for col in range(problem.matrix.n_cols):
        verdict = check_minimal(problem.v, lattice, radius, (col,))
        print(f"minimality, column {col} excluded: {verdict}")
        ok = ok and verdict.minimal
    print(f"status: {'pass' if ok else 'fail'}")
    return 0 if ok else 1


def cmd_mirror(args) -> int:
    started = time.perf_counter()
    problem = load_problem(args.file)
    if problem.spec is None:
        raise ProblemFileError("'ci' section required for this command")
    spec = problem.spec
    radius = args.radius if args.radius is not None else problem.radius
    grade = args.grade if args.grade is not None else problem.grade
    out_dir = Path(args.out)

    parts = args.index.replace(",", " ").split()
    try:
        if len(parts) == 1:
            index = spec.column_of(_int(parts[0]))
        elif len(parts) == 2:
            index = (_int(parts[0]), _int(parts[1]))
            spec.column_index(*index)
        else:
            raise ValueError("--index takes 'flat' or 'i,j'")
    except ValueError as exc:
        raise ProblemFileError(str(exc)) from None

    q = mirror_map(spec, index, grade, radius=radius)
    i, j = q.index
    stem = f"mirror_{i}_{j}"
    artifacts = [
        _write_artifact(out_dir, f"{stem}.coeffs", render_coefficients(q)),
        _write_artifact(
            out_dir, f"{stem}.report", render_integrality_report(q, problem.source_hash)
        ),
    ]
    non_integer = sum(1 for _, c in q.sorted_items() if c.denominator != 1)
    report = {
        "command": "mirror",
        "input": problem.raw,
        "source": problem.source_hash,
        "parameters": {
            "index": [i, j],
            "grade_bound": grade,
            "radius_requested": radius,
            "radius_used": q.radius,
        },
        "grading": list(q.grading),
        "coefficients": len(q.coefficients),
        "non_integer_coefficients": non_integer,
        "artifacts": artifacts,
        "status": "pass",
    }
    artifacts.append(_write_run_report(out_dir, report))
    elapsed = time.perf_counter() - started
    print(f"integrality: {'OK' if non_integer == 0 else f'{non_integer} non-integer coefficients'}")
    print(f"artifacts: {', '.join(artifacts)}")
    print(f"elapsed: {elapsed:.3f}s")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkzlog",
        description="Exact series solutions and mirror maps of GKZ systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out=False):
        p.add_argument("file", help="JSON problem file")
        p.add_argument("--radius", type=int, default=None, help="enumeration radius")
        p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_BOX_POINTS)
        p.add_argument("--threads", type=int, default=None)
        if out:
            p.add_argument("--out", default="out", help="artifact directory")

    p = sub.add_parser("lattice", help="print the relation-lattice basis")
    common(p)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("support", help="minimality verdict and support listing")
    common(p)
    p.add_argument("--exclude", default=None, help="excluded indices, e.g. '4' or '0,2'")
    p.set_defaults(func=cmd_support)

    p = sub.add_parser("solve", help="build and verify (quasi)solutions")
    common(p, out=True)
    p.add_argument("--order", type=int, choices=(0, 1, 2), required=True)
    p.add_argument("--indices", default=None, help="log indices; pairs 'i,j' for order 2")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("combine", help="combine quasisolutions into a solution")
    common(p, out=True)
    p.add_argument("--l", required=True, help="lattice point, e.g. '(-1,-1,1,1)'")
    p.add_argument("--lprime", default=None, help="second lattice point (second order)")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("ci", help="build a lifted system and check hypotheses")
    common(p)
    p.set_defaults(func=cmd_ci)

    p = sub.add_parser("mirror", help="mirror map and integrality report")
    common(p, out=True)
    p.add_argument("--index", required=True, help="column: flat index or 'i,j'")
    p.add_argument("--grade", type=int, default=None, help="grade bound")
    p.set_defaults(func=cmd_mirror)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _thread_count(args)
        return args.func(args)
    except ProblemFileError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (ResourceLimit, InsufficientRadius) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except GkzError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
