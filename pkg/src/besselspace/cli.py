"""Command-line front end: reproducible experiments with CSV/JSON reports.

Every command echoes its fully resolved configuration into the output, and
with a fixed ``--seed`` the emitted bytes are identical across runs (no
timestamps, stable float formatting).  Exit codes: 0 success, 2 on
configuration or precondition errors, 3 on numerical-budget failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .corpus import equivalence_corpus, parse_function
from .differences import (SeminormRequest, full_difference_norm,
                          kdelta_transform_symbol, square_difference_norm,
                          strichartz_norm)
from .errors import BudgetError
from .grid import SCALAR, TargetSpace, lp_norm, make_grid
from .halfspace import (HalfspaceExperiment, boundary_profile, default_sweep_grid,
                        multiplier_sweep)
from .kernels import gaussian_kernel, indicator_cube_kernel, parse_kernel
from .lp_decomp import bessel_norm, make_phi, randomized_lp_norm, triebel_norm
from .reports import NormReport
from .symbols import (dilation_conditions, hoelder_conditions, mihlin_norm,
                      parse_symbol, tauberian_constant)
from .weights import parse_weight, piecewise_power_weight, weight_record

__all__ = ["main"]


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _resolve_out(path: str | None) -> str | None:
    if path is None:
        return None
    base = os.environ.get("BESSELSPACE_OUTDIR", "")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _emit(text: str, path: str | None):
    path = _resolve_out(path)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _csv(meta: dict, header: list, rows: list) -> str:
    lines = [f"# {k} = {_fmt(v)}" for k, v in sorted(meta.items())]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _space(text: str) -> TargetSpace:
    if text == "scalar":
        return SCALAR
    parts = text.split(":")
    if parts[0] == "lq" and len(parts) == 3:
        return TargetSpace("sequence", float(parts[1]), int(parts[2]))
    raise ValueError(f"unknown target space {text!r} (use scalar or lq:q:M)")


def _add_common(sp):
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--n", type=int, default=1024)
    sp.add_argument("--period", type=float, default=32.0)
    sp.add_argument("--space", default="scalar")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--config", default=None, help="JSON file with default options")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="besselspace")
    sub = ap.add_subparsers(dest="command", required=True)

    norm = sub.add_parser("norm", help="compute one norm report")
    norm.add_argument("--norm", required=True,
                      choices=("lp", "bessel", "triebel", "randomized-lp",
                               "full-diff", "square-diff", "strichartz"))
    norm.add_argument("--f", required=True, help="function descriptor")
    norm.add_argument("--s", type=float, default=0.5)
    norm.add_argument("--p", type=float, default=2.0)
    norm.add_argument("--q", type=float, default=2.0)
    norm.add_argument("--w", default="const:1")
    norm.add_argument("--kernel", default="gauss")
    norm.add_argument("--m", type=int, default=2)
    norm.add_argument("--j-max", type=int, default=16)
    norm.add_argument("--trials", type=int, default=512)
    norm.add_argument("--t-levels", default="-3:6")
    _add_common(norm)

    sweep = sub.add_parser("equiv-sweep", help="difference-norm equivalence ratios")
    sweep.add_argument("--s", default="0.25,0.5,0.75")
    sweep.add_argument("--p", default="1.5,2,3")
    sweep.add_argument("--w", default="const:1,power:0.5")
    sweep.add_argument("--kernel", default="auto",
                       help="auto picks indicator_cube for constant weights, gauss otherwise")
    sweep.add_argument("--m", type=int, default=2)
    sweep.add_argument("--trials", type=int, default=256)
    sweep.add_argument("--mode", choices=("rademacher", "square"), default="rademacher")
    _add_common(sweep)

    cond = sub.add_parser("conditions", help="multiplier condition report")
    cond.add_argument("--symbol", required=True)
    cond.add_argument("--N", type=int, default=None)
    cond.add_argument("--gamma", type=float, default=0.9)
    cond.add_argument("--delta0", type=float, default=1.0)
    cond.add_argument("--delta-inf", type=float, default=0.05)
    cond.add_argument("--theta", type=float, default=0.9)
    cond.add_argument("--eps", type=float, default=1.0)
    _add_common(cond)

    mult = sub.add_parser("multiplier", help="half-space multiplier sweep")
    mult.add_argument("--alpha", default="-0.5,0,0.5")
    mult.add_argument("--beta", default="-0.5,0,0.5")
    mult.add_argument("--p", default="1.5,2,3")
    mult.add_argument("--s", default=None,
                      help="explicit s list; default brackets the threshold per cell")
    mult.add_argument("--profile-s", default="0.25,0.5,0.75")
    mult.add_argument("--kernel", default="gauss")
    mult.add_argument("--k-max", type=int, default=4)
    _add_common(mult)
    return ap


def _floats(text: str) -> list:
    return [float(v) for v in text.split(",") if v != ""]


def _apply_config(args: argparse.Namespace):
    if getattr(args, "config", None):
        with open(args.config) as fh:
            defaults = json.load(fh)
        for key, val in defaults.items():
            attr = key.replace("-", "_")
            if not hasattr(args, attr):
                raise ValueError(f"unknown config key {key!r}")
            if getattr(args, attr) == _build_parser().get_default(attr):
                setattr(args, attr, val)
    return args


def _cmd_norm(args) -> int:
    grid = make_grid(args.d, args.n, args.period)
    space = _space(args.space)
    w = parse_weight(args.w)
    f = parse_function(args.f, grid, space)
    kind = args.norm
    if kind == "lp":
        report = NormReport(lp_norm(f, args.p, w), "quadrature",
                            params={"p": args.p})
    elif kind == "bessel":
        report = bessel_norm(f, args.s, args.p, w)
    elif kind == "triebel":
        report = triebel_norm(f, args.s, args.p, args.q, w, make_phi())
    elif kind == "randomized-lp":
        report = randomized_lp_norm(f, args.s, args.p, w, make_phi(),
                                    trials=args.trials, seed=args.seed)
    elif kind == "full-diff":
        K = parse_kernel(args.kernel, args.d)
        req = SeminormRequest(args.s, args.p, args.m, K, w, j_max=args.j_max,
                              trials=args.trials, seed=args.seed)
        report = full_difference_norm(f, req)
    elif kind == "square-diff":
        K = parse_kernel(args.kernel, args.d)
        report = square_difference_norm(f, args.s, args.p, w, args.m, K,
                                        j_max=args.j_max)
    else:
        lo, hi = args.t_levels.split(":")
        report = strichartz_norm(f, args.s, args.p, (int(lo), int(hi)))
    config = {"command": "norm", "norm": kind, "f": args.f, "s": args.s,
              "p": args.p, "q": args.q, "w": weight_record(w),
              "kernel": args.kernel, "m": args.m, "grid": [args.d, args.n, args.period],
              "space": args.space, "seed": args.seed, "trials": args.trials}
    payload = report.to_dict()
    payload["config"] = config
    if args.format == "json":
        _emit(_json(payload), args.out)
    else:
        _emit(_csv(config, ["value", "kind", "std_error"],
                   [[report.value, report.kind,
                     "" if report.std_error is None else report.std_error]]),
              args.out)
    return 0


def _cmd_equiv_sweep(args) -> int:
    grid = make_grid(args.d, args.n, args.period)
    space = _space(args.space)
    corpus = equivalence_corpus(grid, space)
    rows = []
    ratios = []
    for s in _floats(args.s):
        for p in _floats(args.p):
            for wrec in args.w.split(","):
                w = parse_weight(wrec)
                if args.kernel == "auto":
                    K = indicator_cube_kernel(args.d) if w.kind == "constant" \
                        else gaussian_kernel(args.d)
                else:
                    K = parse_kernel(args.kernel, args.d)
                req = SeminormRequest(s, p, args.m, K, w, trials=args.trials,
                                      seed=args.seed, mode=args.mode)
                for name, f in corpus:
                    hs = bessel_norm(f, s, p, w).value
                    fd = full_difference_norm(f, req).value
                    ratio = fd / hs
                    ratios.append(ratio)
                    rows.append([name, s, p, wrec, K.name, args.mode, hs, fd, ratio])
    meta = {"command": "equiv-sweep", "grid": f"{args.d}x{args.n}x{args.period}",
            "m": args.m, "trials": args.trials, "seed": args.seed,
            "space": args.space}
    if ratios:
        meta["ratio_min"] = min(ratios)
        meta["ratio_max"] = max(ratios)
    text = _csv(meta, ["function", "s", "p", "w", "kernel", "mode",
                       "bessel", "full_difference", "ratio"], rows)
    _emit(text, args.out)
    return 0


def _cmd_conditions(args) -> int:
    sym = parse_symbol(args.symbol, d=args.d)
    report = {
        "symbol": args.symbol,
        "mihlin_norm": mihlin_norm(sym, args.N),
        "tauberian_c": tauberian_constant(sym, args.eps),
    }
    dil = dilation_conditions(sym, args.delta0, args.delta_inf, N=args.N)
    report["dilation"] = dil.to_dict()
    if sym.d == 1:
        hoe = hoelder_conditions(sym, args.gamma, args.delta0, args.delta_inf,
                                 args.theta)
        report["hoelder"] = hoe.to_dict()
    report["config"] = {"command": "conditions", "symbol": args.symbol,
                        "N": args.N, "gamma": args.gamma, "delta0": args.delta0,
                        "delta_inf": args.delta_inf, "theta": args.theta,
                        "eps": args.eps, "d": args.d}
    _emit(_json(report), args.out)
    return 0


def _cmd_multiplier(args) -> int:
    grid = make_grid(args.d, args.n, args.period)
    space = _space(args.space)
    kernel = parse_kernel(args.kernel, args.d)
    if args.s is None:
        cells = default_sweep_grid(_floats(args.alpha), _floats(args.beta),
                                   _floats(args.p))
    else:
        cells = [(a, b, p, s)
                 for a in _floats(args.alpha) for b in _floats(args.beta)
                 for p in _floats(args.p) for s in _floats(args.s)]
    rows = []
    agree_all = True
    for (a, b, p, s) in cells:
        w = piecewise_power_weight(a, b)
        exp = HalfspaceExperiment(grid, s, p, w, kernel=kernel, k_max=args.k_max,
                                  space=space, seed=args.seed)
        res = multiplier_sweep(exp)
        agree_all = agree_all and res.agree
        rows.append([a, b, p, s, res.inclusion.verdict, res.verdict,
                     res.agree, res.growth_rate, res.inclusion.sup])
    meta = {"command": "multiplier", "grid": f"{args.d}x{args.n}x{args.period}",
            "kernel": kernel.name, "k_max": args.k_max, "seed": args.seed,
            "agree_all": agree_all}
    for s in _floats(args.profile_s):
        meta[f"profile_slope_s={s:g}"] = boundary_profile(kernel, s).slope
    text = _csv(meta, ["alpha", "beta", "p", "s", "inclusion_verdict",
                       "sweep_verdict", "agree", "growth_rate", "inclusion_sup"],
                rows)
    _emit(text, args.out)
    return 0


_COMMANDS = {
    "norm": _cmd_norm,
    "equiv-sweep": _cmd_equiv_sweep,
    "conditions": _cmd_conditions,
    "multiplier": _cmd_multiplier,
}


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        args = _apply_config(args)
        return _COMMANDS[args.command](args)
    except BudgetError as exc:
        sys.stdout.write(_json({"error": {"type": "budget", "message": str(exc)}}))
        return 3
    except (ValueError, OSError, KeyError) as exc:
        sys.stdout.write(_json({"error": {"type": "config", "message": str(exc)}}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
