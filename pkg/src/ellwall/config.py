"""JSON ingestion and emission for surfaces and invariant vectors.

Rationals are written as JSON integers when integral and as ``"p/q"`` strings
otherwise.  Floats are rejected on input.

Surface schema (all keys except ``g``, ``e_chi``, ``gram``, ``f``, ``H`` are
optional)::

    {
      "name": "rational-I3",
      "g": 0, "e_chi": 1,
      "gram": [[-1, 1, 0, 0], ...],
      "f": [0, 1, 0, 0], "H": [3, 4, -1, -1], "sigma": [1, 0, 0, 0],
      "multiple_fibers": [2, 3],
      "fiber_lattices": [
        {"fiber_id": "I3", "multiplicity": 1,
         "components": [[0, 0, 1, 0], [0, 0, 0, 1]], "comp_multiplicities": [1, 1]}
      ],
      "h11": 10
    }
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema

from .chern import ChernVector
from .errors import ValidationError
from .lattice import DivisorClass, FiberComponentLattice, SurfaceGeometry
from .rational import format_rational, to_fraction

_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$"},
    ]
}
_INT_VECTOR = {"type": "array", "items": {"type": "integer"}}

SURFACE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "required": ["g", "e_chi", "gram", "f", "H"],
    "properties": {
        "name": {"type": "string"},
        "g": {"type": "integer", "minimum": 0},
        "e_chi": {"type": "integer", "minimum": 0},
        "gram": {"type": "array", "minItems": 2, "items": {"type": "array", "items": _RATIONAL}},
        "f": _INT_VECTOR,
        "H": _INT_VECTOR,
        "sigma": {"oneOf": [_INT_VECTOR, {"type": "null"}]},
        "multiple_fibers": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "fiber_lattices": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["fiber_id", "components", "comp_multiplicities"],
                "properties": {
                    "fiber_id": {"type": "string"},
                    "multiplicity": {"type": "integer", "minimum": 1},
                    "components": {"type": "array", "items": _INT_VECTOR},
                    "comp_multiplicities": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                },
            },
        },
        "h11": {"oneOf": [{"type": "integer"}, {"type": "null"}]},
    },
}

CHERN_SCHEMA: dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "required": ["r", "xi", "a"],
    "properties": {
        "r": _RATIONAL,
        "xi": {"type": "array", "items": _RATIONAL},
        "a": _RATIONAL,
    },
}


def _schema_check(data: Any, schema: dict[str, Any], what: str) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda err: list(err.absolute_path))
    if errors:
        err = errors[0]
        path = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise ValidationError(f"{what} at {path}: {err.message}")


def surface_from_dict(data: Any) -> SurfaceGeometry:
    _schema_check(data, SURFACE_SCHEMA, "surface")
    lattices = tuple(
        FiberComponentLattice(
            fiber_id=lat["fiber_id"],
            multiplicity=lat.get("multiplicity", 1),
            components=tuple(DivisorClass(tuple(c)) for c in lat["components"]),
            comp_multiplicities=tuple(lat["comp_multiplicities"]),
        )
        for lat in data.get("fiber_lattices", [])
    )
    sigma = data.get("sigma")
    return SurfaceGeometry(
        g=data["g"],
        e_chi=data["e_chi"],
        gram=tuple(tuple(to_fraction(x) for x in row) for row in data["gram"]),
        f=DivisorClass(tuple(data["f"])),
        H=DivisorClass(tuple(data["H"])),
        multiple_fibers=tuple(data.get("multiple_fibers", [])),
        sigma=None if sigma is None else DivisorClass(tuple(sigma)),
        fiber_lattices=lattices,
        h11=data.get("h11"),
        name=data.get("name", ""),
    )


def _int_list(v: DivisorClass) -> list[int]:
    return [int(c) for c in v.coords]


def surface_to_dict(S: SurfaceGeometry) -> dict[str, Any]:
    out: dict[str, Any] = {
        "g": S.g,
        "e_chi": S.e_chi,
        "gram": [[format_rational(x) for x in row] for row in S.gram],
        "f": _int_list(S.f),
        "H": _int_list(S.H),
        "sigma": None if S.sigma is None else _int_list(S.sigma),
        "multiple_fibers": list(S.multiple_fibers),
        "fiber_lattices": [
            {
                "fiber_id": lat.fiber_id,
                "multiplicity": lat.multiplicity,
                "components": [_int_list(c) for c in lat.components],
                "comp_multiplicities": list(lat.comp_multiplicities),
            }
            for lat in S.fiber_lattices
        ],
        "h11": S.h11,
    }
    if S.name:
        out["name"] = S.name
    return out


def load_surface(path: str | Path) -> SurfaceGeometry:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"{path}: cannot read: {exc.strerror}") from exc
    return surface_from_dict(parse_json_arg(text, str(path)))


def chern_from_dict(data: Any, S: SurfaceGeometry | None = None) -> ChernVector:
    _schema_check(data, CHERN_SCHEMA, "chern vector")
    e = ChernVector(to_fraction(data["r"]), DivisorClass(tuple(data["xi"])), to_fraction(data["a"]))
    if S is not None and len(e.xi) != S.ns_rank:
        raise ValidationError(f"chern vector xi has length {len(e.xi)}, expected ns_rank={S.ns_rank}")
    return e


def chern_to_dict(e: ChernVector) -> dict[str, Any]:
    return {"r": format_rational(e.r), "xi": [format_rational(x) for x in e.xi], "a": format_rational(e.a)}


def parse_json_arg(text: str, what: str) -> Any:
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{what}: invalid JSON: {exc}") from exc


def _reject_float(text: str) -> Any:
    raise ValidationError(f"floating-point literal {text!r} not allowed; use an integer or a \"p/q\" string")


def dumps(data: Any) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
