"""Command-line front end.

Every subcommand builds a :class:`Report` (a JSON payload plus a flat table)
and prints it as canonical JSON, an aligned text table, or TSV.  Exit codes:
0 on success, 2 for invalid input or unmet preconditions, 3 when the query is
infeasible (non-integral or negative length, negative expected dimension).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import __version__
from .chern import (
    ChernVector,
    Polarization,
    bogomolov_defect,
    dim_moduli_1dim,
    dim_stack_lambda,
    euler_pairing,
    hilb_length,
    ktheory_hyperplane_rank,
)
from .config import chern_from_dict, chern_to_dict, dumps, load_surface, parse_json_arg
from .errors import EllwallError, Infeasible, NegativeDimension, PreconditionViolated, ValidationError
from .hilbpoly import HodgePolynomial, hodge_poly_hilb, hodge_poly_pic0, moduli_hodge
from .lambdawalls import LambdaValue, ReductionCertificate, WallLambda, enumerate_walls_lambda, reduction_certificate
from .lattice import DivisorClass, SurfaceGeometry, all_fiber_roots
from .rational import format_rational, to_fraction
from .special52 import ChamberInterval, RaySpec, chambers_I0, movable_cone, nef_cone, normalize_to_I0, walls_I0
from .walls1d import Wall1D, walls_on_segment

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3


@dataclass
class Report:
    payload: dict[str, Any]
    columns: list[str] = field(default_factory=list)
    rows: list[list[Any]] = field(default_factory=list)


# --- serialization helpers -------------------------------------------------


def _fmt(x: Any) -> Any:
    return format_rational(x)


def _lam(lam: LambdaValue) -> Any:
    return "-inf" if lam.value is None else _fmt(lam.value)


def _t_label(t: Any) -> Any:
    return "-inf" if t is None else _fmt(t)


def _divisor(D: DivisorClass) -> list[Any]:
    return [_fmt(c) for c in D.coords]


def _cell(x: Any) -> str:
    if isinstance(x, (list, tuple)):
        return "(" + ",".join(_cell(v) for v in x) + ")"
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def _chern_cell(e: ChernVector) -> str:
    return _cell([_fmt(e.r), _divisor(e.xi), _fmt(e.a)])


# --- argument parsing -------------------------------------------------------


def _chern_arg(text: str, S: SurfaceGeometry | None) -> ChernVector:
    return chern_from_dict(parse_json_arg(text, "chern vector"), S)


def _vector_arg(text: str, S: SurfaceGeometry, what: str) -> DivisorClass:
    data = parse_json_arg(text, what)
    if not isinstance(data, list):
        raise ValidationError(f"{what}: expected a JSON list")
    try:
        D = DivisorClass(tuple(to_fraction(x) for x in data))
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{what}: {exc}") from exc
    if len(D) != S.ns_rank:
        raise ValidationError(f"{what} has length {len(D)}, expected ns_rank={S.ns_rank}")
    return D


def _rational_arg(text: str, what: str) -> Any:
    try:
        return to_fraction(text)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{what}: {exc}") from exc


def _polarization(args: argparse.Namespace, S: SurfaceGeometry) -> Polarization:
    H = _vector_arg(args.H, S, "--H") if getattr(args, "H", None) else None
    alpha = _vector_arg(args.alpha, S, "--alpha") if getattr(args, "alpha", None) else None
    return Polarization.normalized(S, H, alpha)


# --- subcommands -------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> Report:
    S = load_surface(args.surface)
    roots = all_fiber_roots(S, include_negatives=False)
    payload = {
        "name": S.name,
        "ns_rank": S.ns_rank,
        "g": S.g,
        "e_chi": S.e_chi,
        "q": S.q,
        "p_g": S.p_g,
        "h11": S.h11_value,
        "canonical_coefficient": _fmt(S.canonical_coefficient),
        "kodaira_dimension_one": S.kodaira_dimension_one,
        "multiple_fibers": list(S.multiple_fibers),
        "fiber_lattices": [lat.fiber_id for lat in S.fiber_lattices],
        "positive_fiber_roots": len(roots),
        "valid": True,
    }
    rows = [[k, _cell(v)] for k, v in sorted(payload.items())]
    return Report(payload, ["key", "value"], rows)


def cmd_pairing(args: argparse.Namespace) -> Report:
    S = load_surface(args.surface)
    e1, e2 = _chern_arg(args.e1, S), _chern_arg(args.e2, S)
    chi12, chi21 = euler_pairing(S, e1, e2), euler_pairing(S, e2, e1)
    payload = {"e1": chern_to_dict(e1), "e2": chern_to_dict(e2), "chi_12": _fmt(chi12), "chi_21": _fmt(chi21)}
    return Report(payload, ["e1", "e2", "chi_12", "chi_21"], [[_chern_cell(e1), _chern_cell(e2), _fmt(chi12), _fmt(chi21)]])


def cmd_dim(args: argparse.Namespace) -> Report:
    S = load_surface(args.surface)
    e = _chern_arg(args.chern, S)
    payload: dict[str, Any] = {"chern": chern_to_dict(e), "chi_ee": _fmt(euler_pairing(S, e, e)), "p_g": S.p_g}
    if e.r == 0:
        dim = dim_moduli_1dim(S, e)
        payload["kind"] = "one-dimensional"
    else:
        dim = dim_stack_lambda(S, e)
        payload["kind"] = "positive-rank"
        payload["bogomolov_defect"] = _fmt(bogomolov_defect(S, e))
        payload["ktheory_hyperplane_rank"] = ktheory_hyperplane_rank(S, e)
        payload["hilb_length"] = hilb_length(S, e) if dim >= 0 else None
    payload["dim"] = dim
    if dim < 0:
        raise NegativeDimension(f"expected dimension {dim} is negative")
    rows = [[k, _cell(v)] for k, v in sorted(payload.items()) if k != "chern"]
    return Report(payload, ["key", "value"], rows)


def _wall1d_dict(w: Wall1D) -> dict[str, Any]:
    return {
        "kind": w.kind.value,
        "u": chern_to_dict(w.u),
        "position": None if w.position is None else _fmt(w.position),
        "codim": w.codim,
        "divisorial": w.divisorial,
        "move": w.move.tag.value,
        "target": chern_to_dict(w.move.target),
        "certified": w.certified,
    }


def cmd_walls1d(args: argparse.Namespace) -> Report:
    S = load_surface(args.surface)
    e = _chern_arg(args.chern, S)
    start = _vector_arg(args.alpha_start, S, "--alpha-start")
    end = _vector_arg(args.alpha_end, S, "--alpha-end")
    H = _vector_arg(args.H, S, "--H") if args.H else None
    walls = walls_on_segment(S, e, start, end, H)
    payload = {"chern": chern_to_dict(e), "walls": [_wall1d_dict(w) for w in walls]}
    columns = ["position", "kind", "u", "codim", "divisorial", "move", "certified"]
    rows = [
        [_cell(None if w.position is None else _fmt(w.position)), w.kind.value, _chern_cell(w.u), _cell(w.codim),
         _cell(w.divisorial), w.move.tag.value, _cell(w.certified)]
        for w in walls
    ]
    return Report(payload, columns, rows)


def _wall_lambda_dict(w: WallLambda) -> dict[str, Any]:
    c = w.classification
    return {
        "kind": w.kind.value,
        "tau": chern_to_dict(w.tau),
        "lambda": _lam(w.lam),
        "codim": w.codim,
        "classification": {"kind": c.kind.value, "codim": c.codim, "case": c.case, "projective": c.projective},
    }


def cmd_walls_lambda(args: argparse.Namespace) -> Report:
    S = load_surface(args.surface)
    e = _chern_arg(args.chern, S)
    P = _polarization(args, S)
    lam0 = _rational_arg(args.lambda0, "--lambda0")
    lam_min = None if args.lambda_min is None else _rational_arg(args.lambda_min, "--lambda-min")
    walls = enumerate_walls_lambda(S, e, P, lam0, lam_min)
    payload = {
        "chern": chern_to_dict(e),
        "lambda0": _fmt(lam0),
        "lambda_min": "-inf" if lam_min is None else _fmt(lam_min),
        "walls": [_wall_lambda_dict(w) for w in walls],
    }
    columns = ["lambda", "kind", "tau", "codim", "crossing", "case"]
    rows = [
        [_lam(w.lam), w.kind.value, _chern_cell(w.tau), _cell(w.codim), w.classification.kind.value, _cell(w.classification.case)]
        for w in walls
    ]
    return Report(payload, columns, rows)


def _certificate_dict(cert: ReductionCertificate) -> dict[str, Any]:
    return {
        "kind": cert.kind.value,
        "chosen_pair": list(cert.chosen_pair),
        "dual_pair": list(cert.dual_pair),
        "used_dual_trick": cert.used_dual_trick,
        "length_l": cert.length_l,
        "target": None if cert.target is None else chern_to_dict(cert.target),
        "witnesses": [{"label": w.label, "lhs": w.lhs, "rhs": w.rhs, "holds": w.holds} for w in cert.witnesses],
        "obstructions": [
            {
                "multiplicity": ob.multiplicity,
                "inequality": {"label": ob.inequality.label, "lhs": ob.inequality.lhs, "rhs": ob.inequality.rhs},
                "candidates": [_wall_lambda_dict(w) for w in ob.candidates],
            }
            for ob in cert.obstructions
        ],
        "notes": list(cert.notes),
    }


def cmd_reduce(args: argparse.Namespace) -> Report:
    S = load_surface(args.surface)
    e = _chern_arg(args.chern, S)
    cert = reduction_certificate(S, e, _polarization(args, S))
    payload = {"chern": chern_to_dict(e), "certificate": _certificate_dict(cert)}
    rows = [[w.label, w.lhs, w.rhs, _cell(w.holds)] for w in cert.witnesses]
    return Report(payload, ["inequality", "lhs", "rhs", "holds"], rows)


def _ray_dict(ray: RaySpec) -> dict[str, Any]:
    return {"t": _t_label(ray.t), "kvector": chern_to_dict(ray.kvector), "primitive": list(ray.primitive)}


def _chamber_dict(c: ChamberInterval) -> dict[str, Any]:
    return {"t1": _t_label(c.t1), "t2": _fmt(c.t2)}


def cmd_special(args: argparse.Namespace) -> Report:
    l = args.l
    walls = walls_I0(l)
    chambers = chambers_I0(l)
    payload: dict[str, Any] = {
        "l": l,
        "walls": [_fmt(w) for w in walls],
        "chambers": [_chamber_dict(c) for c in chambers],
    }
    rows: list[list[Any]] = [["wall", _fmt(w), "", ""] for w in walls]
    rows += [["chamber", _t_label(c.t1), _fmt(c.t2), ""] for c in chambers]
    if args.t is not None:
        t = _rational_arg(args.t, "--t")
        t_star, word = normalize_to_I0(t)
        payload["normalization"] = {"t": _fmt(t), "t_star": _fmt(t_star), "word": [s.value for s in word]}
        rows.append(["normalization", _fmt(t), _fmt(t_star), " ".join(s.value for s in word)])
    if args.surface:
        S = load_surface(args.surface)
        mov = movable_cone(S, l)
        payload["movable_cone"] = [_ray_dict(r) for r in mov]
        payload["nef_cones"] = [
            {"chamber": _chamber_dict(c), "rays": [_ray_dict(r) for r in nef_cone(S, c, l)]} for c in chambers
        ]
        rows += [["movable-ray", _t_label(r.t), _cell(list(r.primitive)), ""] for r in mov]
    return Report(payload, ["item", "a", "b", "c"], rows)


def _hodge_dict(h: HodgePolynomial) -> dict[str, Any]:
    return {
        "hodge_numbers": [{"p": p, "q": q, "h": c} for (p, q), c in h.coefficients.items()],
        "euler": h.euler(),
        "symmetric": h.is_symmetric(),
    }


def cmd_hodge(args: argparse.Namespace) -> Report:
    S = load_surface(args.surface)
    if (args.n is None) == (args.chern is None):
        raise ValidationError("hodge needs exactly one of --n or --chern")
    if args.n is not None:
        if args.n < 0:
            raise ValidationError(f"--n must be non-negative, got {args.n}")
        h = hodge_poly_hilb(S, args.n) * hodge_poly_pic0(S)
        payload: dict[str, Any] = {"n": args.n}
    else:
        e = _chern_arg(args.chern, S)
        payload = {"chern": chern_to_dict(e), "n": hilb_length(S, e)}
        h = moduli_hodge(S, e)
    payload.update(_hodge_dict(h))
    rows = [[p, q, c] for (p, q), c in h.coefficients.items()]
    return Report(payload, ["p", "q", "h"], rows)


# --- output ------------------------------------------------------------------


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return dumps(report.payload)
    cells = [[_cell(v) for v in row] for row in report.rows]
    if fmt == "tsv":
        lines = ["\t".join(report.columns)] + ["\t".join(row) for row in cells]
        return "\n".join(lines) + "\n"
    widths = [len(c) for c in report.columns]
    for row in cells:
        widths = [max(w, len(v)) for w, v in zip(widths, row)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(report.columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _diagnostic(kind: str, message: str) -> str:
    return json.dumps({"error": kind, "message": message}, sort_keys=True)


class _Parser(argparse.ArgumentParser):
    """Report usage errors as JSON diagnostics with exit code 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        sys.stderr.write(_diagnostic("UsageError", message) + "\n")
        raise SystemExit(EXIT_INVALID)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ellwall", description="Wall-crossing numerics for sheaves on elliptic surfaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func: Any, help_text: str, surface: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if surface:
            p.add_argument("surface", help="surface JSON file")
        p.add_argument("--format", choices=("json", "table", "tsv"), default="json")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check a surface file and print its invariants")

    p = add("pairing", cmd_pairing, "Euler pairing chi(e1, e2) and chi(e2, e1)")
    p.add_argument("--e1", required=True, help='JSON {"r":..,"xi":[..],"a":..}')
    p.add_argument("--e2", required=True)

    p = add("dim", cmd_dim, "expected dimension of the moduli space")
    p.add_argument("--chern", required=True)

    p = add("walls1d", cmd_walls1d, "walls for 1-dimensional sheaves along a segment of twists")
    p.add_argument("--chern", required=True)
    p.add_argument("--alpha-start", required=True, help="JSON list")
    p.add_argument("--alpha-end", required=True, help="JSON list")
    p.add_argument("--H", help="JSON list; defaults to the surface polarization")

    p = add("walls-lambda", cmd_walls_lambda, "lambda-walls below lambda0 for positive rank")
    p.add_argument("--chern", required=True)
    p.add_argument("--lambda0", required=True, help='rational, e.g. "-2" or "-5/2"')
    p.add_argument("--lambda-min", help="rational; defaults to -infinity")
    p.add_argument("--H")
    p.add_argument("--alpha")

    p = add("reduce", cmd_reduce, "reduction certificate to Hilb^l x Pic^0")
    p.add_argument("--chern", required=True)
    p.add_argument("--H")
    p.add_argument("--alpha")

    p = add("special", cmd_special, "walls, chambers and cones for rank-one ideal sheaves", surface=False)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--t", help="rational t < 0 to normalize into I_0")
    p.add_argument("--surface", help="surface JSON file; adds the cone rays")

    p = add("hodge", cmd_hodge, "Hodge numbers of Hilb^n x Pic^0")
    p.add_argument("--n", type=int)
    p.add_argument("--chern")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.func(args)
    except Infeasible as exc:
        sys.stderr.write(_diagnostic(type(exc).__name__, str(exc)) + "\n")
        return EXIT_INFEASIBLE
    except (ValidationError, PreconditionViolated, EllwallError, ValueError, TypeError) as exc:
        sys.stderr.write(_diagnostic(type(exc).__name__, str(exc)) + "\n")
        return EXIT_INVALID
    sys.stdout.write(render(report, args.format))
    return EXIT_OK


def main() -> None:
    sys.exit(run())
