"""Run configuration: JSON loading, schema validation and object construction."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .cab import CabCurve, elliptic_curve, hermitian_curve, rational_curve
from .errors import ConfigError
from .ff import FieldCtx
from .ring import CurveFunction

SCHEMA_TAG = "agdist/1"

_coord = {"oneOf": [{"type": "integer"},
                    {"type": "array", "items": {"type": "integer"}}]}
_elt = {"oneOf": [{"type": "integer"}, {"type": "array", "items": _coord}]}

SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["field", "curve"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_TAG},
        "name": {"type": "string"},
        "seed": {"type": "integer"},
        "field": {
            "type": "object",
            "required": ["p"],
            "additionalProperties": False,
            "properties": {
                "p": {"type": "integer", "minimum": 2},
                "d": {"type": "integer", "minimum": 1},
                "m": {"type": "integer", "minimum": 1},
                "modulus_q": {"type": "array", "items": {"type": "integer"}, "minItems": 2},
                "modulus_qm": {"type": "array", "items": {"type": "integer"}, "minItems": 2},
            },
        },
        "curve": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["elliptic", "hermitian", "rational"]},
                "a": {"type": "integer", "minimum": 1},
                "b": {"type": "integer", "minimum": 1},
                "coeffs": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["i", "j", "c"],
                        "additionalProperties": False,
                        "properties": {
                            "i": {"type": "integer", "minimum": 0},
                            "j": {"type": "integer", "minimum": 0},
                            "c": _elt,
                        },
                    },
                },
            },
            "oneOf": [{"required": ["kind"]}, {"required": ["a", "b", "coeffs"]}],
        },
        "code": {
            "type": "object",
            "required": ["s"],
            "additionalProperties": False,
            "properties": {
                "s": {"type": "integer", "minimum": 0},
                "sprime": {"type": "integer", "minimum": 1},
                "g": {
                    "oneOf": [
                        {"type": "object", "required": ["seed"], "additionalProperties": False,
                         "properties": {"seed": {"type": "integer"}}},
                        {"type": "object", "required": ["terms"], "additionalProperties": False,
                         "properties": {"terms": {"type": "array", "items": {
                             "type": "object", "required": ["u", "v", "c"],
                             "additionalProperties": False,
                             "properties": {"u": {"type": "integer", "minimum": 0},
                                            "v": {"type": "integer", "minimum": 0},
                                            "c": _elt}}}}},
                    ]
                },
                "points": {"oneOf": [{"const": "auto"},
                                     {"type": "array", "items": {"type": "integer", "minimum": 0}}]},
            },
        },
    },
}


@dataclass
class RunConfig:
    raw: dict
    ctx: FieldCtx
    curve: CabCurve
    source: str = "<config>"

    @property
    def code(self) -> dict | None:
        return self.raw.get("code")

    @property
    def seed(self) -> int:
        return int(self.raw.get("seed", 0))

    def resolved(self) -> dict:
        """The config with defaults (moduli, sprime, seed) filled in."""
        out = copy.deepcopy(self.raw)
        out["schema"] = SCHEMA_TAG
        out["field"] = self.ctx.describe()
        out["curve"] = self.curve.describe()
        out["seed"] = self.seed
        if out.get("code") is not None:
            code = out["code"]
            code.setdefault("sprime", code["s"] + 1)
            code.setdefault("g", {"seed": self.seed})
            code.setdefault("points", "auto")
        return out


def _locate(text: str, path) -> str:
    return "/".join(str(p) for p in path) or "<root>"


def parse(text: str, source: str = "<config>") -> dict:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise ConfigError(f"{source}: at {_locate(text, err.absolute_path)}: {err.message}")
    return raw


def element(ctx: FieldCtx, c) -> int:
    """Decode an element: a bare integer is taken mod p; a list gives F_q
    coordinates, each an encoded integer below q or a list of F_p digits."""
    if isinstance(c, int):
        return int(ctx.ext.from_int(c))
    if len(c) > ctx.m:
        raise ConfigError(f"element {c} has more than m={ctx.m} coordinates")
    coords = []
    for co in c:
        if isinstance(co, list):
            if len(co) > ctx.d or any(not 0 <= v < ctx.p for v in co):
                raise ConfigError(f"bad F_q digit vector {co}")
            co = sum(v * ctx.p**i for i, v in enumerate(co))
        if not 0 <= co < ctx.q:
            raise ConfigError(f"coordinate {co} is not an element of F_{ctx.q}")
        coords.append(co)
    coords += [0] * (ctx.m - len(coords))
    return int(ctx.from_coords(coords))


def build_field(block: dict) -> FieldCtx:
    mq = block.get("modulus_q")
    mqm = block.get("modulus_qm")
    return FieldCtx(block["p"], block.get("d", 1), block.get("m", 1),
                    tuple(mq) if mq else None, tuple(mqm) if mqm else None)


def build_curve(block: dict, ctx: FieldCtx) -> CabCurve:
    kind = block.get("kind")
    if kind == "elliptic":
        return elliptic_curve(ctx)
    if kind == "hermitian":
        return hermitian_curve(ctx)
    if kind == "rational":
        return rational_curve(ctx)
    coeffs: dict[tuple[int, int], int] = {}
    for term in block["coeffs"]:
        key = (term["i"], term["j"])
        if key in coeffs:
            raise ConfigError(f"duplicate curve term x^{key[0]} y^{key[1]}")
        coeffs[key] = element(ctx, term["c"])
    return CabCurve(block["a"], block["b"], coeffs, ctx)


def function_from_block(curve: CabCurve, terms: list[dict]) -> CurveFunction:
    return CurveFunction(curve, {(t["u"], t["v"]): element(curve.ctx, t["c"]) for t in terms})


def load_config(text: str, source: str = "<config>") -> RunConfig:
    raw = parse(text, source)
    ctx = build_field(raw["field"])
    curve = build_curve(raw["curve"], ctx)
    curve.check_equation()
    return RunConfig(raw, ctx, curve, source)


def load_path(path: str | Path) -> RunConfig:
    p = Path(path)
    if not p.exists():
        preset = preset_text(str(path))
        if preset is None:
            raise ConfigError(f"{path}: no such file or preset")
        return load_config(preset, f"preset:{path}")
    return load_config(p.read_text(), str(p))


def preset_names() -> list[str]:
    return sorted(r.name[:-5] for r in resources.files("agdist.configs").iterdir()
                  if r.name.endswith(".json"))


def preset_text(name: str) -> str | None:
    res = resources.files("agdist.configs") / f"{name}.json"
    return res.read_text() if res.is_file() else None
