"""Batch front-end.

Subcommands: homology (print assembled tables), verify (rewriting
model against homology), geom (numerical geometry suites), table
(named generator cells, with golden-file comparison).

Exit codes: 0 all checks pass, 1 mathematical discrepancy, 2 usage or
runtime error.  Tolerance defaults can be overridden by environment
variables PATHALG_GRAD_TOL, PATHALG_ZTOL, PATHALG_STEP,
PATHALG_CONCAT_TOL and PATHALG_GEOM_TOL; command-line flags win over
the environment.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

import numpy as np

from . import geometry, homology, rewriting
from .algebra import signature
from .homology import COEFF_F2, COEFF_PULLBACK, COEFF_Z


def _env_float(name: str, fallback: float) -> float:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return float(raw)
    except ValueError as exc:
        raise ValueError(f"environment variable {name} is not a number: "
                         f"{raw!r}") from exc


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


# ---------------------------------------------------------------------------
# Cell serialization: every cell carries degree, level, names and either
# a mod-2 dimension or an integral group {rank, torsion[]}


def _dim_cell(degree: int, level: int, dim: int, names=()) -> dict:
    return {"degree": degree, "level": level, "names": list(names),
            "dim": dim}


def _group_cell(degree: int, level: int, group, names=()) -> dict:
    return {"degree": degree, "level": level, "names": list(names),
            "group": {"rank": group.rank, "torsion": list(group.torsion)}}


def _cell_value(cell: dict) -> str:
    if "dim" in cell:
        return str(cell["dim"])
    g = homology.AbelianGroup(rank=cell["group"]["rank"],
                              torsion=tuple(cell["group"]["torsion"]))
    return g.render()


def _emit_sections(sections: list[tuple[str, list[dict]]], fmt: str) -> None:
    """One document per invocation: a json object with a sections list,
    a single csv stream with a section column, or aligned text blocks."""
    out = sys.stdout
    if fmt == "json":
        doc = {"sections": [{"title": t, "cells": c} for t, c in sections]}
        print(json.dumps(doc, indent=2), file=out)
        return
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["section", "degree", "level", "value", "names"])
        for title, cells in sections:
            for c in cells:
                writer.writerow([title, c["degree"], c["level"],
                                 _cell_value(c), " ".join(c["names"])])
        print(buf.getvalue(), end="", file=out)
        return
    for title, cells in sections:
        print(f"## {title}", file=out)
        rows = [("degree", "level", "value", "names")]
        rows += [(str(c["degree"]), str(c["level"]), _cell_value(c),
                  " ".join(c["names"])) for c in cells]
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        for r in rows:
            print("  ".join(r[i].ljust(widths[i]) for i in range(4)).rstrip(),
                  file=out)
        print(file=out)


def _emit_cells(title: str, cells: list[dict], fmt: str) -> None:
    _emit_sections([(title, cells)], fmt)


def _graded_cells(table, level: int = 0) -> list[dict]:
    if isinstance(table, homology.GradedDimTable):
        return [_dim_cell(d, level, table.dim(d))
                for d in range(table.top_degree + 1)]
    return [_group_cell(d, level, table.group(d))
            for d in range(table.top_degree + 1)]


def _bigraded_cells(table) -> list[dict]:
    if isinstance(table, homology.BigradedGroupTable):
        return [_group_cell(d, l, g) for (d, l), g in table.entries]
    return [_dim_cell(d, l, v) for (d, l), v in table.entries]


# ---------------------------------------------------------------------------
# homology


def cmd_homology(args) -> int:
    n = args.n
    sections = []
    if args.coeff == "F2":
        sections.append(
            (f"projective base, mod 2, n={n}",
             _graded_cells(homology.real_proj_homology(n, COEFF_F2))))
        sections.append(
            (f"unit tangent bundle, mod 2, n={n}",
             _graded_cells(homology.unit_tangent_homology(n, COEFF_F2))))
        path = homology.path_space_homology(n, COEFF_F2, args.max_degree)
        sections.append(
            (f"assembled path-space table, mod 2, n={n}, "
             f"degrees 0..{args.max_degree}", _bigraded_cells(path)))
    else:
        sections.append(
            (f"projective base, integral, n={n}",
             _graded_cells(homology.real_proj_homology(n, COEFF_Z))))
        tags = [COEFF_Z] if n % 2 == 1 else [COEFF_Z, COEFF_PULLBACK]
        for tag in tags:
            sections.append(
                (f"unit tangent bundle, coefficients {tag}, n={n}",
                 _graded_cells(homology.unit_tangent_homology(n, tag))))
        path = homology.path_space_homology(n, COEFF_Z, args.max_degree)
        sections.append(
            (f"assembled path-space table, integral, n={n}, "
             f"degrees 0..{args.max_degree}", _bigraded_cells(path)))
    _emit_sections(sections, args.format)
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    n = args.n
    D = args.max_degree
    sig = signature(n)
    wb = args.weight_bound if args.weight_bound is not None else \
        rewriting.required_weight_bound(sig, D)
    rs = rewriting.complete(rewriting.orient(sig), wb)
    print(f"completed rewriting system for n={n}: {len(rs.rules)} rules, "
          f"weight bound {wb}")
    for rule in rs.rules:
        print(f"  {rule.render()}")

    reports = [rewriting.filtration_check(rs),
               rewriting.anti_automorphism_check(sig, rs)]
    if n >= 2:
        reports.append(rewriting.heredity_check(n - 1))
    reports.append(homology.consistency_checks(n))
    ok = True
    for rep in reports:
        print()
        print("\n".join(rep.lines()))
        ok = ok and rep.passed

    alg = rewriting.hilbert(rs, D)
    hom = homology.path_space_homology(n, COEFF_F2, D)
    comparison = rewriting.compare(alg, hom)
    print()
    print("\n".join(comparison.lines()))

    if comparison.is_match and ok:
        print(f"\nverified: presentation matches homology up to degree {D}")
        return 0
    if not comparison.is_match and n % 2 == 0:
        print("\nsearching for rule augmentations that restore the match:")
        try:
            augs = rewriting.repair_search(sig, hom, D, weight_bound=wb)
        except rewriting.RepairError as exc:
            print(f"  none found: {exc}")
        else:
            for aug in augs:
                print(f"  candidate augmentation: {aug.render()}")
    print("\ndiscrepancy recorded")
    return 1


# ---------------------------------------------------------------------------
# geom


def _expected_index(n: int, k: int) -> tuple[int, int]:
    if k == 0:
        return (0, n)
    return (1 + (k - 1) * n, 2 * n - 1)


def cmd_geom_index(args) -> int:
    n, k = args.n, args.k
    segments = args.segments if args.segments is not None else max(8, 4 * k + 4)
    res = geometry.critical_index(
        n, k, segments, h=args.step, ztol=args.ztol,
        grad_tol=args.grad_tol, rng=np.random.default_rng(args.seed))
    want = _expected_index(n, k)
    got = (res.index, res.nullity)
    print(f"n={n} k={k} segments={segments}: index={res.index} "
          f"nullity={res.nullity} |grad|={res.gradient_norm:.2e} "
          f"expected {want}")
    return 0 if got == want else 1


def _run_trials(trials: int, jobs: int, worker) -> list:
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, range(trials)))
    return [worker(i) for i in range(trials)]


def _random_chain(rng: np.random.Generator, n: int, arcs: int,
                  samples: int = 12) -> geometry.DiscretePath:
    x = geometry.random_real_point(n, rng)
    path = None
    for _ in range(arcs):
        u = geometry.random_real_tangent(x, rng)
        theta = float(rng.uniform(0.05, 0.5 * math.pi))
        arc = geometry.half_circle(x, u, theta, samples=samples)
        path = arc if path is None else geometry.concat_min(path, arc)
        x = arc.end()
    return path


def cmd_geom_concat(args) -> int:
    tol = args.tol

    def trial(i: int) -> tuple[float, float]:
        rng = np.random.default_rng([args.seed, i])
        n = int(rng.integers(1, 4))
        a = _random_chain(rng, n, int(rng.integers(1, 3)))
        b = _random_chain_from(rng, a.end())
        c = _random_chain_from(rng, b.end())
        ab = geometry.concat_min(a, b)
        add_err = abs(geometry.path_norm(ab) - geometry.path_norm(a)
                      - geometry.path_norm(b))
        left = geometry.concat_min(ab, c)
        right = geometry.concat_min(a, geometry.concat_min(b, c))
        assoc_err = float(np.max(np.abs(left.params - right.params)))
        return add_err, assoc_err

    results = _run_trials(args.trials, args.jobs, trial)
    worst_add = max(r[0] for r in results)
    worst_assoc = max(r[1] for r in results)
    print(f"{args.trials} trials: worst additivity error {worst_add:.3e}, "
          f"worst associativity breakpoint error {worst_assoc:.3e} "
          f"(tolerance {tol:.1e})")
    return 0 if worst_add < tol and worst_assoc < tol else 1


def _random_chain_from(rng: np.random.Generator,
                       x: geometry.ProjPoint) -> geometry.DiscretePath:
    u = geometry.random_real_tangent(x, rng)
    theta = float(rng.uniform(0.05, 0.5 * math.pi))
    return geometry.half_circle(x, u, theta, samples=12)


def cmd_geom_halfcircle(args) -> int:
    tol = args.tol
    failures = []

    def trial(i: int) -> dict:
        rng = np.random.default_rng([args.seed, i])
        n = int(rng.integers(1, 4))
        x = geometry.random_real_point(n, rng)
        u = geometry.random_real_tangent(x, rng)
        theta = float(rng.uniform(-math.pi, math.pi))
        hc = geometry.half_circle(x, u, theta, samples=48)
        ep = geometry.half_circle_endpoint(x, u, theta)
        pairing_defect = 1.0 - abs(np.vdot(hc.samples[-1], ep.rep))
        norm_slack = geometry.path_norm(hc) - 0.5 * math.pi
        basis = np.vstack([x.real_representative().astype(complex),
                           u.vec])
        coeff = hc.samples @ basis.conj().T
        span_err = float(np.max(np.abs(coeff @ basis - hc.samples)))
        # the geodesic leaving in the normal direction returns to the
        # real locus every quarter period, alternating the two points;
        # compare pairings, not arccos distances, which amplify roundoff
        v = geometry.TangentVector(base=geometry.ProjPoint(x.rep),
                                   vec=1j * u.vec)
        anti_err = 0.0
        for k in range(5):
            c = abs(np.vdot(x.rep, geometry.geodesic(x, v, k * math.pi / 2).rep))
            defect = 1.0 - c if k % 2 == 0 else c
            anti_err = max(anti_err, defect)
        period_defect = 1.0 - abs(np.vdot(
            geometry.geodesic(x, v, 0.3).rep,
            geometry.geodesic(x, v, 0.3 + math.pi).rep))
        return {"pairing": pairing_defect, "norm_slack": norm_slack,
                "span": span_err, "anti": anti_err, "period": period_defect}

    results = _run_trials(args.trials, args.jobs, trial)
    worst = {key: max(r[key] for r in results) for key in results[0]}
    checks = [
        ("endpoint matches the geodesic construction", worst["pairing"], tol),
        ("norm never exceeds a quarter circumference", worst["norm_slack"], tol),
        ("samples stay on the spanned line", worst["span"], tol),
        ("quarter-period antipode distances", worst["anti"], tol),
        ("period-pi recurrence", worst["period"], tol),
    ]
    ok = True
    for name, value, bound in checks:
        passed = value < bound
        ok = ok and passed
        print(f"[{'ok ' if passed else 'BAD'}] {name}: worst {value:.3e}")
    # reported, not asserted: where the norm peaks across angles
    grid = np.linspace(-0.5 * math.pi, 0.5 * math.pi, 101)
    rng = np.random.default_rng(args.seed)
    x = geometry.random_real_point(2, rng)
    u = geometry.random_real_tangent(x, rng)
    norms = [geometry.path_norm(geometry.half_circle(x, u, float(t), 48))
             if abs(t) > 1e-9 else 0.0 for t in grid]
    peak = grid[int(np.argmax(norms))]
    print(f"note: over a 101-point angle grid the norm peaks at "
          f"theta = {peak:+.4f} (quarter turn = {math.pi/2:.4f})")
    return 0 if ok else 1


def cmd_geom_yk(args) -> int:
    tol = args.tol

    def trial(i: int) -> float:
        rng = np.random.default_rng([args.seed, i])
        n = int(rng.integers(1, 4))
        k = int(rng.integers(1, 4))
        p = geometry.sample_yk(n, k, rng, samples_per_arc=16)
        return geometry.path_norm(p) - k * 0.5 * math.pi

    results = _run_trials(args.trials, args.jobs, trial)
    worst_slack = max(results)
    ok = worst_slack < tol
    print(f"[{'ok ' if ok else 'BAD'}] norm stays below k quarter-turns: "
          f"worst excess {worst_slack:.3e}")

    full = True
    for (n, k) in ((1, 2), (2, 2), (3, 3)):
        rng = np.random.default_rng([args.seed, 10_000 + n, k])
        p = geometry.sample_yk(n, k, rng, thetas=[0.5 * math.pi] * k)
        err = abs(geometry.path_norm(p) - k * 0.5 * math.pi)
        good = err < 1e-6
        full = full and good
        print(f"[{'ok ' if good else 'BAD'}] right-angle sample n={n} k={k} "
              f"reaches the critical norm: error {err:.3e}")
        print(f"      family dimension (k+1)n = "
              f"{geometry.yk_parameter_count(n, k)}")

    gram_ok = True
    rng = np.random.default_rng(args.seed)
    for _ in range(20):
        x = geometry.random_real_point(3, rng)
        triple = np.vstack([geometry.hopf_vector(x, w).vec.real
                            for w in ("J1", "J2", "J3")])
        gram = triple @ triple.T
        gram_ok = gram_ok and bool(
            np.max(np.abs(gram - np.eye(3))) < 1e-10
            and np.max(np.abs(triple @ x.real_representative())) < 1e-10)
    print(f"[{'ok ' if gram_ok else 'BAD'}] skew-pairing triple is "
          f"orthonormal and tangent (n=3)")
    return 0 if ok and full and gram_ok else 1


# ---------------------------------------------------------------------------
# table


def _table_text(table: homology.GeneratorTable) -> str:
    lines = [f"# named generating cells, n={table.n}, "
             f"levels 0..{table.max_level}",
             "# degree level names"]
    for cell in table.cells:
        lines.append(f"{cell.degree} {cell.level} {' '.join(cell.names)}")
    return "\n".join(lines) + "\n"


def _parse_table_text(text: str) -> dict[tuple[int, int], tuple[str, ...]]:
    cells = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        cells[(int(parts[0]), int(parts[1]))] = tuple(parts[2:])
    return cells


def _golden_text(n: int) -> str:
    ref = resources.files("pathalg").joinpath(f"golden/table_n{n}.txt")
    return ref.read_text(encoding="utf-8")


def cmd_table(args) -> int:
    n = args.n
    levels = args.levels if args.levels is not None else (3 if n == 1 else 2)
    table = homology.generator_table(n, levels - 1)
    if args.format == "json":
        cells = [_dim_cell(c.degree, c.level, len(c.names), c.names)
                 for c in table.cells]
        _emit_cells(f"named generating cells, n={n}", cells, "json")
    elif args.format == "csv":
        cells = [_dim_cell(c.degree, c.level, len(c.names), c.names)
                 for c in table.cells]
        _emit_cells(f"named generating cells, n={n}", cells, "csv")
    else:
        print(_table_text(table), end="")
    if not args.golden:
        return 0
    if n > 4:
        print(f"no golden fixture for n={n}", file=sys.stderr)
        return 2
    want = _parse_table_text(_golden_text(n))
    got = _parse_table_text(_table_text(table))
    if want == got:
        print(f"golden comparison: {len(want)} cells match")
        return 0
    print("golden comparison FAILED:")
    for key in sorted(set(want) | set(got)):
        if want.get(key) != got.get(key):
            print(f"  cell {key}: expected {want.get(key)}, got {got.get(key)}")
    return 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathalg",
        description="verification suites for the path-space product algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p_hom = sub.add_parser("homology", help="print homology tables")
    p_hom.add_argument("--n", type=_positive_int, required=True)
    p_hom.add_argument("--coeff", choices=["Z", "F2"], default="Z")
    p_hom.add_argument("--max-degree", type=_nonnegative_int, default=None)
    p_hom.add_argument("--format", choices=["md", "json", "csv"], default="md")
    p_hom.set_defaults(func=cmd_homology)

    p_ver = sub.add_parser("verify",
                           help="rewriting model against homology tables")
    p_ver.add_argument("--n", type=_positive_int, required=True)
    p_ver.add_argument("--max-degree", type=_nonnegative_int, default=40)
    p_ver.add_argument("--weight-bound", type=_positive_int, default=None)
    p_ver.set_defaults(func=cmd_verify)

    p_geom = sub.add_parser("geom", help="numerical geometry suites")
    geom_sub = p_geom.add_subparsers(dest="geom_command", required=True)

    p_idx = geom_sub.add_parser("index", help="discrete index and nullity")
    p_idx.add_argument("--n", type=_positive_int, default=2)
    p_idx.add_argument("--k", type=_nonnegative_int, default=1)
    p_idx.add_argument("--segments", type=_positive_int, default=None)
    p_idx.add_argument("--seed", type=int, default=0)
    p_idx.add_argument("--step", type=float,
                       default=_env_float("PATHALG_STEP", 1e-4))
    p_idx.add_argument("--ztol", type=float,
                       default=_env_float("PATHALG_ZTOL", 1e-3))
    p_idx.add_argument("--grad-tol", type=float,
                       default=_env_float("PATHALG_GRAD_TOL", 1e-8))
    p_idx.set_defaults(func=cmd_geom_index)

    p_cc = geom_sub.add_parser("concat-check",
                               help="norm additivity and associativity")
    p_cc.add_argument("--trials", type=_positive_int, default=1000)
    p_cc.add_argument("--seed", type=int, default=0)
    p_cc.add_argument("--jobs", type=_positive_int, default=1)
    p_cc.add_argument("--tol", type=float,
                      default=_env_float("PATHALG_CONCAT_TOL", 1e-9))
    p_cc.set_defaults(func=cmd_geom_concat)

    p_hc = geom_sub.add_parser("halfcircle-check",
                               help="half-circle construction invariants")
    p_hc.add_argument("--trials", type=_positive_int, default=200)
    p_hc.add_argument("--seed", type=int, default=0)
    p_hc.add_argument("--jobs", type=_positive_int, default=1)
    p_hc.add_argument("--tol", type=float,
                      default=_env_float("PATHALG_GEOM_TOL", 1e-9))
    p_hc.set_defaults(func=cmd_geom_halfcircle)

    p_yk = geom_sub.add_parser("yk-check",
                               help="iterated half-circle family checks")
    p_yk.add_argument("--trials", type=_positive_int, default=200)
    p_yk.add_argument("--seed", type=int, default=0)
    p_yk.add_argument("--jobs", type=_positive_int, default=1)
    p_yk.add_argument("--tol", type=float,
                      default=_env_float("PATHALG_GEOM_TOL", 1e-9))
    p_yk.set_defaults(func=cmd_geom_yk)

    p_tab = sub.add_parser("table", help="named generator cells")
    p_tab.add_argument("--n", type=_positive_int, required=True)
    p_tab.add_argument("--levels", type=_positive_int, default=None,
                       help="number of levels to list (0..levels-1)")
    p_tab.add_argument("--golden", action="store_true",
                       help="compare against the shipped fixture")
    p_tab.add_argument("--format", choices=["md", "json", "csv"],
                       default="md")
    p_tab.set_defaults(func=cmd_table)

    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code) if exc.code is not None else 0
        if getattr(args, "max_degree", -1) is None:
            args.max_degree = 4 * args.n + 2
        return args.func(args)
    except (rewriting.CompletionError, rewriting.RepairError) as exc:
        print(f"mathematical failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, TypeError, OSError, RuntimeError,
            np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
