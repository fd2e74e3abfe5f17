"""Command-line front end: ``agdist curve info | distinguish | sweep | params``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

from . import bounds, goppa, lincode, params
from .config import SCHEMA_TAG, RunConfig, function_from_block, load_path, preset_names
from .errors import (
    AgDistError,
    BadLeadingCoefficient,
    CaseClassificationMismatch,
    ConfigError,
    FieldError,
    GroebnerAssertionFailure,
    NotCoprime,
    SingularPoint,
    WeightViolation,
)
from .ring import monomial_basis

EXIT_OK, EXIT_CONFIG, EXIT_INTERNAL = 0, 2, 3
_CONFIG_ERRORS = (ConfigError, FieldError, NotCoprime, BadLeadingCoefficient, WeightViolation,
                  SingularPoint)


class MeasuredExceedsBound(AssertionError):
    """A measured dimension is larger than a proven upper bound."""


def _progress(enabled: bool, msg: str) -> None:
    if enabled:
        print(msg, file=sys.stderr, flush=True)


# ---- formatting -----------------------------------------------------------

def _jsonable(x: Any):
    if isinstance(x, Fraction):
        return float(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x


def _flat(row: dict) -> dict:
    out = {}
    for k, v in row.items():
        if isinstance(v, dict):
            for k2, v2 in _flat(v).items():
                out[f"{k}.{k2}"] = v2
        elif isinstance(v, list) and any(isinstance(x, dict) for x in v):
            out[k] = json.dumps(_jsonable(v), separators=(",", ":"))
        elif isinstance(v, list):
            out[k] = ";".join(str(_jsonable(x)) for x in v)
        else:
            out[k] = _jsonable(v)
    return out


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(report), indent=2) + "\n"
    rows = report.get("rows") or [report.get("result", {})]
    flat = [_flat(r) for r in rows]
    cols: list[str] = []
    for r in flat:
        cols += [c for c in r if c not in cols]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in flat:
            w.writerow(r)
        return buf.getvalue()
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for r in flat:
        lines.append("| " + " | ".join("" if r.get(c) is None else str(r.get(c)) for c in cols) + " |")
    return "\n".join(lines) + "\n"


def _emit(report: dict, args) -> None:
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _envelope(command: str, cfg: RunConfig | None, **payload) -> dict:
    out: dict[str, Any] = {"schema": SCHEMA_TAG, "command": command}
    if cfg is not None:
        out["config"] = cfg.resolved()
    out.update(payload)
    return out


# ---- shared construction ---------------------------------------------------

def _goppa_function(cfg: RunConfig, sprime: int, seed: int):
    gblock = (cfg.code or {}).get("g", {"seed": seed})
    if "terms" in gblock:
        g = function_from_block(cfg.curve, gblock["terms"])
        if g.weighted_degree != sprime:
            raise ConfigError(f"g has weighted degree {g.weighted_degree}, expected s'={sprime}")
        return g
    return goppa.random_goppa_function(cfg.curve, sprime, seed)


def _resolve_seed(cfg: RunConfig, args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    g = (cfg.code or {}).get("g", {})
    return int(g.get("seed", cfg.seed))


def _points(cfg: RunConfig):
    pts = (cfg.code or {}).get("points", "auto")
    return None if pts == "auto" else pts


def _instance_report(cfg: RunConfig, s: int, sprime: int, seed: int, empirical: bool,
                     verbose: bool) -> dict:
    ctx, curve = cfg.ctx, cfg.curve
    g = _goppa_function(cfg, sprime, seed)
    pts = _points(cfg)
    if pts is None:
        n = len(goppa.default_points(curve, g))
    else:
        n = len(pts)
    rep = bounds.bound_report(ctx.q, ctx.m, n, s, sprime, curve.genus)
    out = rep.to_dict()
    out["seed"] = seed
    out["g"] = [{"u": u, "v": v, "c": ctx.coords(c).tolist()} for (u, v), c in sorted(g.terms.items())]
    if not empirical:
        return out
    t0 = time.perf_counter()
    _progress(verbose, f"[agdist] building instance s={s} s'={sprime} seed={seed}")
    inst = goppa.build(curve, s, g, pts)
    dims: dict[str, Any] = {"n": inst.n, "gamma": inst.gamma.dim,
                            "gamma_dual": inst.gamma_dual.dim}
    _progress(verbose, "[agdist] square of the dual")
    dims["gamma_dual_square"] = lincode.schur_square(inst.gamma_dual).dim
    _progress(verbose, "[agdist] square of Gamma")
    dims["gamma_square"] = lincode.schur_square(inst.gamma).dim
    if rep.i_star is not None:
        _progress(verbose, "[agdist] T_i spaces")
        dims.update(bounds.t_i_dimensions(inst))
    dims["c1"] = goppa.c1_dimension(inst)
    _progress(verbose, f"[agdist] done in {time.perf_counter() - t0:.2f}s")
    out["dims"] = dims
    bound = rep.one_point_bound if rep.one_point_bound is not None else rep.goppa_like_bound
    limits = [b for b in (rep.generic_bound, rep.goppa_like_bound, rep.one_point_bound) if b is not None]
    if rep.hypothesis_met and any(dims["gamma_dual_square"] > b for b in limits):
        raise MeasuredExceedsBound(
            f"measured {dims['gamma_dual_square']} exceeds bound {min(limits)}")
    out["sharp"] = dims["gamma_dual_square"] == min(bound, inst.n)
    return out


# ---- commands ----------------------------------------------------------------

def cmd_curve_info(args) -> dict:
    cfg = load_path(args.config)
    curve = cfg.curve
    genus = curve.validate()
    N = len(curve.affine_points) + 1
    Q = cfg.ctx.order
    s_values = args.s if args.s else ([cfg.code["s"]] if cfg.code else [])
    result = {
        "genus": genus,
        "field_order": Q,
        "affine_points": N - 1,
        "rational_points": N,
        "hasse_weil_ok": curve.hasse_weil_ok(N),
        "maximal": (N - Q - 1) ** 2 == 4 * genus * genus * Q and N > Q + 1,
        "l_dims": {str(s): len(monomial_basis(curve, s)) for s in s_values},
    }
    return _envelope("curve info", cfg, result=result)


def cmd_distinguish(args) -> dict:
    cfg = load_path(args.config)
    cfg.curve.validate()
    if not cfg.code:
        raise ConfigError(f"{cfg.source}: the distinguish command needs a 'code' block")
    s = cfg.code["s"]
    sprime = cfg.code.get("sprime", s + 1)
    seed = _resolve_seed(cfg, args)
    result = _instance_report(cfg, s, sprime, seed, args.empirical, not args.quiet)
    return _envelope("distinguish", cfg, result=result)


def _parse_range(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise ConfigError(f"empty range {part}")
            out.extend(range(lo_i, hi_i + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ConfigError("empty range")
    return out


def cmd_sweep(args) -> dict:
    cfg = load_path(args.config)
    cfg.curve.validate()
    code = cfg.code or {"s": 0}
    gap = code.get("sprime", code["s"] + 1) - code["s"]
    s_values = _parse_range(args.s) if args.s else [code["s"]]
    seeds = _parse_range(args.seeds) if args.seeds else [_resolve_seed(cfg, args)]
    rows = []
    for s in s_values:
        for seed in seeds:
            _progress(not args.quiet and args.empirical, f"[agdist] s={s} seed={seed}")
            r = _instance_report(cfg, s, s + gap, seed, args.empirical, False)
            r.pop("g", None)
            rows.append(r)
    return _envelope("sweep", cfg, rows=rows)


def cmd_params_hermitian(args) -> dict:
    if args.rows == "paper":
        triples = params.HERMITIAN_REFERENCE_ROWS
    else:
        if args.q0 is None or args.s is None or args.n is None:
            raise ConfigError("custom rows need --q0, --s and --n")
        triples = [(args.q0, args.s, args.n)]
    rows = [params.hermitian_row(*t).to_dict() for t in triples]
    return _envelope("params hermitian", None, rows=rows)


def cmd_params_elliptic(args) -> dict:
    if args.rows == "paper":
        triples = params.ELLIPTIC_REFERENCE_ROWS
        published = params.ELLIPTIC_PUBLISHED_SMAX
    else:
        if args.q is None or args.m is None or args.n is None:
            raise ConfigError("custom rows need --q, --m and --n")
        triples, published = [(args.q, args.m, args.n)], [None]
    rows = []
    for (q, m, n), pub in zip(triples, published):
        s_max, rate = params.elliptic_max_distinguishable_s(q, m, n)
        row = {"q": q, "m": m, "n": n, "s_max": s_max, "rate": round(float(rate), 3)}
        if pub is not None:
            row["s_published"] = pub
            row["within_1"] = s_max is not None and abs(s_max - pub) <= 1
        rows.append(row)
    return _envelope("params elliptic", None, rows=rows)


# ---- argument parsing ----------------------------------------------------------

def _common(p: argparse.ArgumentParser, config: bool = True) -> None:
    if config:
        p.add_argument("--config", required=True,
                       help=f"JSON config path or preset name ({', '.join(preset_names())})")
    p.add_argument("--format", choices=["json", "csv", "md"], default="json")
    p.add_argument("--out", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="agdist", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    curve = sub.add_parser("curve", help="curve utilities")
    csub = curve.add_subparsers(dest="curve_command", required=True)
    info = csub.add_parser("info", help="genus, points, Hasse-Weil, dim L(sP_inf)")
    _common(info)
    info.add_argument("--s", type=int, action="append", help="report dim L(sP_inf) (repeatable)")
    info.set_defaults(func=cmd_curve_info)

    dist = sub.add_parser("distinguish", help="bounds (and measured dimensions) for one instance")
    _common(dist)
    dist.add_argument("--empirical", action="store_true", help="build the codes and measure")
    dist.add_argument("--seed", type=int, help="override the seed used to sample g")
    dist.add_argument("--quiet", action="store_true", help="no progress on stderr")
    dist.set_defaults(func=cmd_distinguish)

    sw = sub.add_parser("sweep", help="one row per (s, seed)")
    _common(sw)
    sw.add_argument("--s", help="values of s, e.g. 4..10 or 4,6,8")
    sw.add_argument("--seeds", help="seeds, same syntax as --s")
    sw.add_argument("--seed", type=int)
    sw.add_argument("--empirical", action="store_true")
    sw.add_argument("--quiet", action="store_true")
    sw.set_defaults(func=cmd_sweep)

    par = sub.add_parser("params", help="parameter tables")
    psub = par.add_subparsers(dest="params_command", required=True)
    herm = psub.add_parser("hermitian", help="Hermitian Goppa-like parameter rows")
    _common(herm, config=False)
    herm.add_argument("--rows", choices=["paper", "custom"], default="paper")
    herm.add_argument("--q0", type=int)
    herm.add_argument("--s", type=int)
    herm.add_argument("--n", type=int)
    herm.set_defaults(func=cmd_params_hermitian)
    ell = psub.add_parser("elliptic", help="largest distinguishable s on elliptic curves")
    _common(ell, config=False)
    ell.add_argument("--rows", choices=["paper", "custom"], default="paper")
    ell.add_argument("--q", type=int)
    ell.add_argument("--m", type=int)
    ell.add_argument("--n", type=int)
    ell.set_defaults(func=cmd_params_elliptic)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except _CONFIG_ERRORS as exc:
        print(f"agdist: config error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (AssertionError, GroebnerAssertionFailure, CaseClassificationMismatch) as exc:
        print(f"agdist: internal assertion: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except AgDistError as exc:
        print(f"agdist: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    _emit(report, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
