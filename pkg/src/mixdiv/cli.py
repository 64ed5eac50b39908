"""Batch command line interface.

Subcommands: ``compute`` (per-pair classical divergences), ``mixed`` (the
n-pair mixed divergence plus its order-change row), ``ith`` (two-pair index
interpolation on a grid), ``dissimilarity`` (multivariate integrand),
``audit`` (the randomized inequality suite), ``geometry`` (ball/ellipsoid
affine surface areas).

Input documents are JSON ``{"mu": [...], "pairs": [{"p": [...], "q": [...],
"f": {...}}, ...]}`` or CSV with header ``atom,mu,p1,q1,...,pn,qn``. Reports
are single JSON documents echoing the effective inputs; identical job specs
(including seeds) produce byte-identical reports.

Exit codes: 0 success, 1 I/O or validation error, 2 audit violations found.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .audit import (
    AuditConfig,
    Tolerances,
    audit_suite,
    check_alexandrov_fenchel,
    report_to_dict,
    violations,
)
from .divergence import (
    IthMixedSpec,
    PairTriple,
    f_divergence,
    f_dissimilarity,
    ith_mixed,
    mixed_divergence,
    mixed_divergence_k,
    mixed_renyi,
)
from .errors import MixdivError, ParseError
from .generators import (
    Generator,
    MultivariateGenerator,
    generator_from_spec,
    matusita_affinity,
    paired,
    toussaint_affinity,
)
from .geometry import (
    EllipsoidBody,
    ith_mixed_affine_surface_area,
    mixed_affine_surface_area,
    sphere_grid,
)
from .measures import (
    Density,
    MeasureSpace,
    integrate,
    make_space,
    make_vector,
    validate_density,
)


@dataclass
class JobSpec:
    """Everything one invocation needs; built by ``main`` from CLI flags."""

    command: str
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    generator_specs: list = field(default_factory=list)
    alpha: Optional[float] = None
    i_values: list = field(default_factory=list)
    k: Optional[int] = None
    m: Optional[int] = None
    n: Optional[int] = None
    seed: int = 0
    instances: int = 1000
    tol_ineq: Optional[float] = None
    tol_eq: Optional[float] = None
    tol_prop: Optional[float] = None
    epsilon_floor: Optional[float] = None
    bodies: list = field(default_factory=list)
    dimension: Optional[int] = None
    resolution: Optional[int] = None


def _parse_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if path.endswith(".csv"):
        return _parse_csv(path, text)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top-level JSON must be an object")
    return doc


def _parse_csv(path: str, text: str) -> dict:
    rows = list(csv.reader(text.splitlines()))
    if not rows:
        raise ParseError(f"{path}: empty CSV")
    header = [h.strip() for h in rows[0]]
    if header[:2] != ["atom", "mu"]:
        raise ParseError(f"{path}:1: header must start with 'atom,mu'")
    pair_cols = header[2:]
    if len(pair_cols) % 2 != 0:
        raise ParseError(f"{path}:1: need alternating p/q columns, got {pair_cols}")
    n_pairs = len(pair_cols) // 2
    mu, atoms = [], []
    columns: list[list[float]] = [[] for _ in pair_cols]
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise ParseError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
        atoms.append(row[0].strip())
        try:
            mu.append(float(row[1]))
            for col, cell in zip(columns, row[2:]):
                col.append(float(cell))
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
    pairs = [
        {"p": columns[2 * j], "q": columns[2 * j + 1]} for j in range(n_pairs)
    ]
    return {"mu": mu, "atom_ids": atoms, "pairs": pairs}


def _floor_values(values: Sequence[float], space: MeasureSpace, floor: float) -> list[float]:
    arr = np.asarray(values, dtype=float)
    if not np.any(arr == 0.0):
        return [float(v) for v in arr]
    arr = np.where(arr == 0.0, floor, arr)
    arr = arr / integrate(space, arr)
    return [float(v) for v in arr]


def _certify(space: MeasureSpace, values, label: str, warnings: list) -> Density:
    total = integrate(space, np.asarray(values, dtype=float))
    if abs(total - 1.0) <= 1e-9:
        return validate_density(space, values, require_prob=True)
    warnings.append(f"{label} integrates to {total!r}; treated as a raw density")
    return validate_density(space, values, require_prob=False)


def load_input(
    path: str, epsilon_floor: Optional[float] = None
) -> tuple[MeasureSpace, list[tuple[Density, Density]]]:
    """Load a JSON or CSV document into a space and (p, q) density pairs.

    Probability certification is attempted per density and silently falls
    back to raw densities; use :func:`load_document` for the warning list
    and any embedded generator specs.
    """
    space, pairs, _, _ = load_document(path, epsilon_floor)
    return space, pairs


def load_document(
    path: str, epsilon_floor: Optional[float] = None
) -> tuple[MeasureSpace, list[tuple[Density, Density]], list, dict]:
    """Full loader: (space, pairs, warnings, echo document)."""
    doc = _parse_document(path)
    if "mu" not in doc:
        raise ParseError(f"{path}: mu required")
    space = make_space(doc["mu"], atom_ids=doc.get("atom_ids"))
    warnings: list[str] = []
    pairs: list[tuple[Density, Density]] = []
    echo_pairs = []
    for idx, pair in enumerate(doc.get("pairs", [])):
        if "p" not in pair or "q" not in pair:
            raise ParseError(f"{path}: pair {idx} needs both 'p' and 'q'")
        p_vals, q_vals = pair["p"], pair["q"]
        if epsilon_floor is not None:
            p_vals = _floor_values(p_vals, space, epsilon_floor)
            q_vals = _floor_values(q_vals, space, epsilon_floor)
        p = _certify(space, p_vals, f"pair {idx} p", warnings)
        q = _certify(space, q_vals, f"pair {idx} q", warnings)
        pairs.append((p, q))
        echo_pair = {"p": [float(v) for v in p_vals], "q": [float(v) for v in q_vals]}
        if "f" in pair:
            echo_pair["f"] = pair["f"]
        echo_pairs.append(echo_pair)
    echo = {"mu": [float(w) for w in space.weights], "pairs": echo_pairs}
    if "densities" in doc:
        echo["densities"] = [[float(v) for v in row] for row in doc["densities"]]
    return space, pairs, warnings, echo


def _pair_generators(spec: JobSpec, echo: dict, n_pairs: int) -> list[Generator]:
    """Generators for each pair: --f flags win, embedded specs otherwise."""
    specs = list(spec.generator_specs)
    if not specs:
        specs = [p["f"] for p in echo["pairs"] if "f" in p]
        if len(specs) != n_pairs:
            raise MixdivError(
                "no generator specs: pass --f or embed one per pair in the document"
            )
    if len(specs) == 1 and n_pairs > 1:
        specs = specs * n_pairs
    if len(specs) != n_pairs:
        raise MixdivError(f"{len(specs)} generator specs for {n_pairs} pairs")
    return [generator_from_spec(s) for s in specs]


def _multivariate_from_spec(spec: dict) -> MultivariateGenerator:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise MixdivError(f"multivariate spec must be an object with 'kind': {spec!r}")
    kind = spec["kind"].lower()
    if kind == "matusita":
        return matusita_affinity(int(spec["arity"]))
    if kind == "toussaint":
        return toussaint_affinity(spec["weights"])
    if kind == "paired":
        return paired(generator_from_spec(spec["f"]))
    raise MixdivError(f"unknown multivariate kind {kind!r}")


def _tolerances(spec: JobSpec) -> Tolerances:
    base = Tolerances()
    return Tolerances(
        ineq=spec.tol_ineq if spec.tol_ineq is not None else base.ineq,
        eq=spec.tol_eq if spec.tol_eq is not None else base.eq,
        prop=spec.tol_prop if spec.tol_prop is not None else base.prop,
    )


def _options_echo(spec: JobSpec) -> dict:
    return {
        "generator_specs": spec.generator_specs,
        "alpha": spec.alpha,
        "i_values": [float(v) for v in spec.i_values],
        "k": spec.k,
        "m": spec.m,
        "n": spec.n,
        "seed": spec.seed,
        "instances": spec.instances,
        "epsilon_floor": spec.epsilon_floor,
        "bodies": spec.bodies,
        "dimension": spec.dimension,
        "resolution": spec.resolution,
    }


def run_job(spec: JobSpec) -> int:
    """Execute one job and write its report; returns the process exit code."""
    tol = _tolerances(spec)
    report = {
        "command": spec.command,
        "inputs": {"document": None, "options": _options_echo(spec)},
        "tolerances": {
            "eps_ineq": tol.ineq,
            "eps_eq": tol.eq,
            "eps_prop": tol.prop,
            "eps_norm": 1e-9,
        },
        "warnings": [],
        "values": {},
    }
    exit_code = 0
    try:
        if spec.command == "audit":
            exit_code = _run_audit(spec, tol, report)
        elif spec.command == "geometry":
            _run_geometry(spec, report)
        else:
            space, pairs, warnings, echo = load_document(spec.input_path, spec.epsilon_floor)
            report["inputs"]["document"] = echo
            report["warnings"] = warnings
            if spec.command == "compute":
                _run_compute(spec, pairs, echo, report)
            elif spec.command == "mixed":
                exit_code = _run_mixed(spec, pairs, echo, report)
            elif spec.command == "ith":
                _run_ith(spec, pairs, echo, report)
            elif spec.command == "dissimilarity":
                _run_dissimilarity(spec, space, pairs, echo, report)
            else:
                raise MixdivError(f"unknown command {spec.command!r}")
    except MixdivError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        _write_report(spec, report)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _write_report(spec, report)
    return exit_code


def _run_compute(spec: JobSpec, pairs, echo, report) -> None:
    gens = _pair_generators(spec, echo, len(pairs))
    values = [f_divergence(g, p, q) for g, (p, q) in zip(gens, pairs)]
    report["values"] = {
        "generators": [g.label for g in gens],
        "f_divergence": values,
    }


def _run_mixed(spec: JobSpec, pairs, echo, report) -> int:
    gens = _pair_generators(spec, echo, len(pairs))
    triples = [PairTriple(g, p, q) for g, (p, q) in zip(gens, pairs)]
    value = mixed_divergence(triples)
    row = [mixed_divergence_k(triples, k) for k in range(len(triples) + 1)]
    report["values"] = {
        "generators": [g.label for g in gens],
        "mixed_divergence": value,
        "order_change_row": row,
    }
    if spec.alpha is not None:
        report["values"]["renyi"] = {
            "alpha": spec.alpha,
            "value": mixed_renyi(pairs, spec.alpha),
        }
    if spec.k is not None:
        report["values"]["order_change_k"] = {
            "k": spec.k,
            "value": mixed_divergence_k(triples, spec.k),
        }
    if spec.m is not None:
        check = check_alexandrov_fenchel(triples, spec.m, _tolerances(spec))
        report["values"]["substitution_inequality"] = report_to_dict(check)
        if not check.holds:
            return 2
    return 0


def _run_ith(spec: JobSpec, pairs, echo, report) -> None:
    if len(pairs) < 2:
        raise MixdivError("the ith command needs at least two pairs")
    if spec.alpha is not None and not spec.generator_specs:
        spec.generator_specs = [{"kind": "power", "alpha": spec.alpha}]
    gens = _pair_generators(spec, echo, len(pairs))[:2]
    n = spec.n if spec.n is not None else 2
    grid = [float(v) for v in spec.i_values] or [float(v) for v in range(n + 1)]
    triple1 = PairTriple(gens[0], *pairs[0])
    triple2 = PairTriple(gens[1], *pairs[1])
    values = [ith_mixed(IthMixedSpec(triple1, triple2, i=i, n=n)) for i in grid]
    report["values"] = {
        "generators": [g.label for g in gens],
        "n": n,
        "i_grid": grid,
        "ith_mixed": values,
    }


def _run_dissimilarity(spec: JobSpec, space, pairs, echo, report) -> None:
    if not spec.generator_specs:
        raise MixdivError("dissimilarity needs one --f with a multivariate spec")
    g = _multivariate_from_spec(spec.generator_specs[0])
    if "densities" in echo:
        dens = [
            validate_density(space, row, require_prob=False)
            for row in echo["densities"]
        ]
    else:
        dens = [p for (p, _) in pairs]
    value = f_dissimilarity(g, make_vector(dens))
    report["values"] = {"generator": g.label, "dissimilarity": value}


def _run_audit(spec: JobSpec, tol: Tolerances, report) -> int:
    n = spec.instances
    config = AuditConfig(
        seed=spec.seed,
        identities=n,
        af_convex=n,
        af_concave=n,
        concave_chain=n,
        jensen=n,
        interpolation=n,
        corollaries=max(1, n // 6),
        equality_families=max(1, n // 5),
        tolerances=tol,
    )
    reports = audit_suite(config)
    bad = violations(reports)
    report["values"] = {
        "total_reports": len(reports),
        "violations": len(bad),
        "reports": [report_to_dict(r) for r in reports],
    }
    return 2 if bad else 0


def _run_geometry(spec: JobSpec, report) -> None:
    body_specs = list(spec.bodies)
    if not body_specs and spec.input_path:
        doc = _parse_document(spec.input_path)
        body_specs = doc.get("bodies", [])
    if not body_specs:
        raise MixdivError("geometry needs --body specs or a document with 'bodies'")
    bodies = [EllipsoidBody(semi_axes=tuple(b["semi_axes"])) for b in body_specs]
    dim = spec.dimension if spec.dimension is not None else bodies[0].dimension
    grid = sphere_grid(dim, spec.resolution)
    gen_specs = spec.generator_specs or [{"kind": "power", "alpha": 0.25}]
    if spec.i_values:
        if len(bodies) != 2:
            raise MixdivError("the interpolated variant needs exactly two bodies")
        if len(gen_specs) == 1:
            gen_specs = gen_specs * 2
        gens = [generator_from_spec(s) for s in gen_specs[:2]]
        values = [
            ith_mixed_affine_surface_area(bodies[0], bodies[1], gens, i, grid)
            for i in spec.i_values
        ]
        report["values"] = {
            "generators": [g.label for g in gens],
            "dimension": dim,
            "resolution": grid.n_nodes,
            "i_grid": [float(v) for v in spec.i_values],
            "ith_mixed_affine_surface_area": values,
        }
    else:
        if len(gen_specs) == 1:
            gen_specs = gen_specs * len(bodies)
        gens = [generator_from_spec(s) for s in gen_specs]
        value = mixed_affine_surface_area(bodies, gens, grid)
        report["values"] = {
            "generators": [g.label for g in gens],
            "dimension": dim,
            "resolution": grid.n_nodes,
            "mixed_affine_surface_area": value,
        }


def _write_report(spec: JobSpec, report: dict) -> None:
    text = json.dumps(report, indent=2)
    if spec.output_path:
        with open(spec.output_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _json_flag(value: str) -> dict:
    try:
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"invalid JSON {value!r}: {exc.msg}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixdiv",
        description="Mixed divergences over finite measure spaces, with inequality audits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, needs_input: bool = True) -> None:
        if needs_input:
            p.add_argument("--input", required=True, help="JSON or CSV input document")
        p.add_argument("--output", help="report path (stdout when omitted)")
        p.add_argument(
            "--f", action="append", type=_json_flag, default=[], dest="fspecs",
            help='generator spec, e.g. {"kind":"power","alpha":0.5}; repeatable',
        )
        p.add_argument("--epsilon-floor", type=float, default=None,
                       help="replace zero densities by this value, then renormalize")
        p.add_argument("--tol-ineq", type=float, default=None)
        p.add_argument("--tol-eq", type=float, default=None)
        p.add_argument("--tol-prop", type=float, default=None)

    p = sub.add_parser("compute", help="classical divergence per pair")
    common(p)

    p = sub.add_parser("mixed", help="mixed divergence and its order-change row")
    common(p)
    p.add_argument("--alpha", type=float, default=None,
                   help="also report the mixed Renyi divergence of this order")
    p.add_argument("--k", type=int, default=None,
                   help="also report the single order-k variant")
    p.add_argument("--m", type=int, default=None,
                   help="also audit the order-m substitution inequality")

    p = sub.add_parser("ith", help="two-pair interpolated divergence on an i grid")
    common(p)
    p.add_argument("--i", action="append", type=float, default=[], dest="i_values")
    p.add_argument("--n", type=int, default=None, help="ambient exponent base (default 2)")
    p.add_argument("--alpha", type=float, default=None,
                   help="use power generators of this exponent when --f is absent")

    p = sub.add_parser("dissimilarity", help="multivariate integrand over densities")
    common(p)

    p = sub.add_parser("audit", help="randomized inequality suite")
    common(p, needs_input=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=1000,
                   help="instances per check family")

    p = sub.add_parser("geometry", help="ball/ellipsoid affine surface areas")
    common(p, needs_input=False)
    p.add_argument("--input", required=False, help="optional document with 'bodies'")
    p.add_argument("--body", action="append", type=_json_flag, default=[], dest="bodies",
                   help='body spec, e.g. {"semi_axes":[1,2,3]}; repeatable')
    p.add_argument("--i", action="append", type=float, default=[], dest="i_values")
    p.add_argument("--dimension", type=int, default=None)
    p.add_argument("--resolution", type=int, default=None)
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    return JobSpec(
        command=args.command,
        input_path=getattr(args, "input", None),
        output_path=getattr(args, "output", None),
        generator_specs=getattr(args, "fspecs", []),
        alpha=getattr(args, "alpha", None),
        i_values=getattr(args, "i_values", []),
        k=getattr(args, "k", None),
        m=getattr(args, "m", None),
        n=getattr(args, "n", None),
        seed=getattr(args, "seed", 0),
        instances=getattr(args, "instances", 1000),
        tol_ineq=getattr(args, "tol_ineq", None),
        tol_eq=getattr(args, "tol_eq", None),
        tol_prop=getattr(args, "tol_prop", None),
        epsilon_floor=getattr(args, "epsilon_floor", None),
        bodies=getattr(args, "bodies", []),
        dimension=getattr(args, "dimension", None),
        resolution=getattr(args, "resolution", None),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    code = run_job(job_from_args(args))
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
