"""Command-line front end.

Every command prints (or writes to ``--out``) a JSON envelope
``{command, config, result, timing}``; ``--csv`` emits the command's sequence
output instead (rearrangement profile, truncation sequence, dyadic norms).

Exit status: 0 success or prediction matched, 1 prediction mismatch,
2 validation error.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import logging
import math
import sys
import time

import numpy as np

from . import __version__
from .bumps import make_bump
from .calculus import SobolevParams, bessel_asymptotics_check, h_hat_check, lorentz_sobolev_norm
from .counterexample import DEFAULT_RADII, h_field, sharpness_case1, sharpness_case2, sigma_counter
from .grid import Field, GridSpec, ParameterError, field_from_function, make_grid, plane_wave
from .hardy import hardy_norm, make_atom
from .inequality_lab import CHECKERS, append_jsonl
from .littlewood_paley import hormander_norm
from .rearrangement import LorentzParams, decreasing_rearrangement, lorentz_norm

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2

DEFAULT_GRIDS = {
    "norm": (1, 16.0, 1024),
    "sharpness": None,
    "bessel": (1, 32.0, 2 ** 17),
    "inequalities": (1, 8.0, 256),
    "hormander": (1, 512.0, 65536),
}

# per-command parameter defaults; a config file or flags override them
DEFAULT_PARAMS = {
    "norm": {"field": "gaussian", "norm": "l2", "p": 2.0, "q": None, "s": 0.0, "t": 1.0, "gamma": 1.0,
             "k0": 3, "center": None, "side": 1.0, "atom_p": 1.0, "radius": 1.0, "k_range": None},
    "sharpness": {"case": 1, "n": 1, "p": 1.0, "s": 0.75, "r": 1.0, "q": 1.0, "radii": list(DEFAULT_RADII)},
    "bessel": {"s": 2.0, "gamma": None},
    "inequalities": {"lemma": "holder", "trials": 100, "p": None, "q": None, "r": None, "t": None, "s": None,
                     "q_conv": None, "q_inner": None, "family_size": 8, "theta": "psi", "classical": False,
                     "p1": None, "r1": None, "s1": None, "ledger": None},
    "hormander": {"t": 1.0, "gamma": 4.0, "s": 0.75, "r": 4 / 3, "q": 1.0, "j_min": -3, "j_max": 3,
                  "construction_grid": None, "piece_grid": None},
}

HORMANDER_PIECE_GRIDS = {1: (1, 4.0, 2 ** 15), 2: (2, 4.0, 1024)}

# example parameters used when a lemma is run without its exponents
LEMMA_DEFAULTS = {
    "young": {"p": 1.5, "q_conv": 1.2, "r": 2.0, "t": 1.0},
    "hausdorff_young": {"p": 4.0, "r": 1.0},
    "kato_ponce": {"p": 2.0, "r": 1.0, "s": 0.75},
    "minkowski": {"q_inner": 1.0, "p": 2.0, "r": 1.0},
    "holder": {"p": 3.0, "q": 1.0},
    "embedding": {"p": 4 / 3, "r": 2.0, "s": 0.75, "p1": 2.0, "r1": 2.0, "s1": 0.5},
}


# -- argument parsing ----------------------------------------------------------

def _grid_arg(text: str) -> list:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be dim,L,N")
    try:
        return [int(parts[0]), float(parts[1]), int(parts[2])]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from None


def _num(text: str) -> float:
    """Float that also accepts 'inf' and simple fractions like 4/3."""
    if "/" in text:
        a, b = text.split("/", 1)
        return float(a) / float(b)
    return float(text)


def _floats(text: str) -> list:
    return [_num(x) for x in text.split(",") if x]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--grid", type=_grid_arg, help="dim,L,N")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", dest="output_path", help="write output here instead of stdout")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    common.add_argument("--config", help="JSON run configuration; flags override its values")
    common.add_argument("--timing", action="store_true", help="record wall time (breaks byte-determinism)")

    parser = argparse.ArgumentParser(prog="hardylab", description="Numerical lab for Hardy-space multipliers")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", parents=[common], argument_default=argparse.SUPPRESS,
                       help="norm of a built-in field")
    p.add_argument("--field", choices=["gaussian", "plane_wave", "h_field", "atom", "indicator"])
    p.add_argument("--norm", choices=["lorentz", "lorentz_sobolev", "hardy", "l2"])
    for name in ("p", "q", "s", "t", "gamma", "side", "atom-p", "radius"):
        p.add_argument(f"--{name}", dest=name.replace("-", "_"), type=_num)
    p.add_argument("--k0", type=int, help="plane-wave frequency index")
    p.add_argument("--center", type=_floats, help="atom cube center, comma separated")
    p.add_argument("--k-range", dest="k_range", type=lambda s: [int(x) for x in s.split(",")])

    p = sub.add_parser("sharpness", parents=[common], argument_default=argparse.SUPPRESS,
                       help="sharpness case drivers")
    p.add_argument("--case", type=int, choices=[1, 2])
    p.add_argument("--n", type=int)
    for name in ("p", "s", "r", "q"):
        p.add_argument(f"--{name}", type=_num)
    p.add_argument("--radii", type=_floats)

    p = sub.add_parser("bessel", parents=[common], argument_default=argparse.SUPPRESS,
                       help="Bessel potential or log-modulated transform asymptotics")
    p.add_argument("--s", type=_num)
    p.add_argument("--gamma", type=_num, help="check the transform of H^(s,gamma) instead of G_s")

    p = sub.add_parser("inequalities", parents=[common], argument_default=argparse.SUPPRESS,
                       help="randomized inequality checkers")
    p.add_argument("--lemma", choices=sorted(CHECKERS) + ["all"])
    p.add_argument("--trials", type=int)
    for name in ("p", "q", "r", "t", "s", "q-conv", "q-inner", "p1", "r1", "s1"):
        p.add_argument(f"--{name}", dest=name.replace("-", "_"), type=_num)
    p.add_argument("--family-size", dest="family_size", type=int)
    p.add_argument("--theta", help="bump kind used as the Kato-Ponce multiplier, or 'one'")
    p.add_argument("--classical", action="store_true", help="Hausdorff-Young in the Lebesgue pairing")
    p.add_argument("--ledger", help="append each report to this JSON-lines file")

    p = sub.add_parser("hormander", parents=[common], argument_default=argparse.SUPPRESS,
                       help="windowed Hormander norm of the sharpness symbol")
    for name in ("t", "gamma", "s", "r", "q"):
        p.add_argument(f"--{name}", type=_num)
    p.add_argument("--j-min", dest="j_min", type=int)
    p.add_argument("--j-max", dest="j_max", type=int)
    p.add_argument("--construction-grid", dest="construction_grid", type=_grid_arg)
    p.add_argument("--piece-grid", dest="piece_grid", type=_grid_arg)
    return parser


TOP_LEVEL = ("grid", "seed", "output_path", "format", "timing")


def resolve_config(args: argparse.Namespace) -> dict:
    """defaults <- config file <- flags, in the RunConfig shape."""
    command = args.command
    cfg = {"grid": DEFAULT_GRIDS[command], "seed": 0, "output_path": None, "format": "json",
           "timing": False, "params": copy.deepcopy(DEFAULT_PARAMS[command])}
    given = vars(args)
    if "config" in given:
        try:
            with open(given["config"]) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParameterError(f"cannot read config {given['config']}: {exc}") from None
        if not isinstance(doc, dict):
            raise ParameterError("config must be a JSON object")
        unknown = set(doc.get("params", {})) - set(cfg["params"])
        if unknown:
            raise ParameterError(f"unknown parameters in config: {sorted(unknown)}")
        for key in TOP_LEVEL:
            if key in doc:
                cfg[key] = doc[key]
        cfg["params"].update(doc.get("params", {}))
    for key, val in given.items():
        if key in ("command", "config", "verbose"):
            continue
        if key in TOP_LEVEL:
            cfg[key] = val
        else:
            cfg["params"][key] = val
    if isinstance(cfg["grid"], dict):
        cfg["grid"] = [cfg["grid"]["dim"], cfg["grid"]["L"], cfg["grid"]["N"]]
    return cfg


def _grid(cfg: dict) -> GridSpec:
    if cfg["grid"] is None:
        raise ParameterError("this command needs --grid")
    return make_grid(*cfg["grid"])


# -- commands -----------------------------------------------------------------

def _build_field(grid: GridSpec, prm: dict, seed: int) -> Field:
    kind = prm["field"]
    if kind == "gaussian":
        return field_from_function(grid, lambda *x: np.exp(-np.pi * sum(c * c for c in x)))
    if kind == "plane_wave":
        return plane_wave(grid, [prm["k0"]] + [0] * (grid.dim - 1))
    if kind == "h_field":
        return h_field(prm["t"], prm["gamma"], grid)
    if kind == "indicator":
        if not prm["radius"] > 0:
            raise ParameterError("indicator radius must be positive")
        return Field(grid, (grid.radius() < prm["radius"]).astype(float))
    if kind == "atom":
        center = prm["center"] or [0.0] * grid.dim
        return make_atom(grid, center, prm["side"], prm["atom_p"], seed=seed).values
    raise ParameterError(f"unknown field {kind!r}")


def cmd_norm(cfg: dict) -> tuple[dict, list, int]:
    grid, prm = _grid(cfg), cfg["params"]
    f = _build_field(grid, prm, cfg["seed"])
    norm = prm["norm"]
    p = prm["p"]
    rows = []
    if norm == "l2":
        value = f.lp_norm(2)
        norm_id = "l2"
    elif norm in ("lorentz", "lorentz_sobolev"):
        lp = LorentzParams(p, prm["q"])
        if norm == "lorentz":
            prof = decreasing_rearrangement(f)
            value = lorentz_norm(prof, lp)
            rows = [("value", "cumulative_measure")] + prof.rows()
            norm_id = f"lorentz({lp.p:g},{lp.q:g})"
        else:
            value = lorentz_sobolev_norm(f, SobolevParams(prm["s"], lp))
            norm_id = f"lorentz_sobolev({lp.p:g},{lp.q:g},{prm['s']:g})"
    elif norm == "hardy":
        value = hardy_norm(f, p, prm["k_range"])
        norm_id = f"hardy({p:g})"
    else:
        raise ParameterError(f"unknown norm {norm!r}")
    result = {"field": prm["field"], "norm_id": norm_id, "value": value, "grid": grid.to_dict(),
              "seed": cfg["seed"]}
    return result, rows, EXIT_OK


def cmd_sharpness(cfg: dict) -> tuple[dict, list, int]:
    prm = cfg["params"]
    if prm["case"] == 1:
        report = sharpness_case1(prm["r"], prm["q"], prm["s"], prm["p"], prm["n"], prm["radii"])
    elif prm["case"] == 2:
        report = sharpness_case2(prm["q"], prm["s"], prm["p"], prm["n"], prm["radii"])
    else:
        raise ParameterError(f"case must be 1 or 2, got {prm['case']}")
    rows = [("R", "lower_bound")] + [tuple(x) for x in report.lower_sequence]
    result = report.to_dict()
    result["seed"] = cfg["seed"]
    return result, rows, EXIT_OK if report.matched else EXIT_MISMATCH


def cmd_bessel(cfg: dict) -> tuple[dict, list, int]:
    grid, prm = _grid(cfg), cfg["params"]
    if prm["gamma"] is None:
        report = bessel_asymptotics_check(prm["s"], grid)
        ok = report.decay_ok and math.isfinite(report.ratio_low) and report.ratio_low > 0
    else:
        report = h_hat_check(prm["s"], prm["gamma"], grid)
        ok = report.positive and math.isfinite(report.c_exp) and report.ratio_low > 0
    return report.to_dict(), [], EXIT_OK if ok else EXIT_MISMATCH


def _lemma_kwargs(lemma: str, prm: dict) -> dict:
    d = dict(LEMMA_DEFAULTS[lemma])
    for key in ("p", "q", "r", "t", "s", "q_conv", "q_inner", "p1", "r1", "s1"):
        if prm.get(key) is not None:
            d[key] = prm[key]
    if lemma == "young":
        return {k: d[k] for k in ("p", "q_conv", "r", "t")}
    if lemma == "hausdorff_young":
        return {"p": d["p"], "r": d["r"], "classical": bool(prm["classical"])}
    if lemma == "kato_ponce":
        theta = None if prm["theta"] in (None, "one") else make_bump(prm["theta"], 1)
        return {"theta": theta, "p": d["p"], "r": d["r"], "s": d["s"]}
    if lemma == "minkowski":
        return {"q_inner": d["q_inner"], "p": d["p"], "r": d["r"], "family_size": prm["family_size"]}
    if lemma == "holder":
        return {"p": d["p"], "q": d["q"]}
    return {"p0": d["p"], "r0": d["r"], "s0": d["s"], "p1": d["p1"], "r1": d["r1"], "s1": d["s1"]}


def cmd_inequalities(cfg: dict) -> tuple[dict, list, int]:
    grid, prm = _grid(cfg), cfg["params"]
    lemmas = sorted(CHECKERS) if prm["lemma"] == "all" else [prm["lemma"]]
    if prm["lemma"] == "all" and any(prm.get(k) is not None for k in LEMMA_DEFAULTS["embedding"]):
        raise ParameterError("exponent flags apply to a single lemma; drop them with --lemma all")
    reports = []
    for lemma in lemmas:
        kwargs = _lemma_kwargs(lemma, prm)
        if lemma == "kato_ponce" and kwargs["theta"] is not None and kwargs["theta"].dim != grid.dim:
            kwargs["theta"] = make_bump(kwargs["theta"].kind, grid.dim)
        rep = CHECKERS[lemma](trials=prm["trials"], grid=grid, seed=cfg["seed"], **kwargs)
        if prm["ledger"]:
            append_jsonl(rep, prm["ledger"])
        reports.append(rep)
    rows = [("lemma_id", "trials", "worst_ratio", "ceiling", "pass")] + [
        (r.lemma_id, r.trials, r.worst_ratio, r.ceiling, r.passed) for r in reports]
    result = {"reports": [r.to_dict() for r in reports]}
    return result, rows, EXIT_OK if all(r.passed for r in reports) else EXIT_MISMATCH


def cmd_hormander(cfg: dict) -> tuple[dict, list, int]:
    grid, prm = _grid(cfg), cfg["params"]
    # default: twice the box at the same N, so H^ is sampled finely in frequency
    cgrid = (make_grid(*prm["construction_grid"]) if prm["construction_grid"]
             else make_grid(grid.dim, 2 * grid.L, grid.N))
    # the symbol lives in a ball of radius 1/100, so pieces need a fine grid
    pgrid = make_grid(*(prm["piece_grid"] or HORMANDER_PIECE_GRIDS[grid.dim]))
    sigma = sigma_counter(prm["t"], prm["gamma"], grid, cgrid)
    res = hormander_norm(sigma, prm["s"], LorentzParams(prm["r"], prm["q"]),
                         j_range=(prm["j_min"], prm["j_max"]), piece_grid=pgrid)
    result = res.to_dict()
    result.update({"symbol": sigma.label, "grid": grid.to_dict(), "seed": cfg["seed"]})
    rows = [("j", "norm")] + sorted(res.norms.items())
    ok = -2 <= res.argmax_j <= 2
    return result, rows, EXIT_OK if ok else EXIT_MISMATCH


COMMANDS = {
    "norm": cmd_norm,
    "sharpness": cmd_sharpness,
    "bessel": cmd_bessel,
    "inequalities": cmd_inequalities,
    "hormander": cmd_hormander,
}


# -- output -------------------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def render(command: str, cfg: dict, result: dict, rows: list, elapsed) -> str:
    if cfg["format"] == "csv":
        if not rows:
            raise ParameterError(f"{command} has no sequence output; use --json")
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    shown = {k: v for k, v in cfg.items() if k not in ("output_path", "format", "timing")}
    envelope = {"command": command, "config": shown, "result": result, "timing": elapsed}
    return json.dumps(_jsonable(envelope), indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
        start = time.perf_counter()
        result, rows, status = COMMANDS[args.command](cfg)
        elapsed = round(time.perf_counter() - start, 6) if cfg["timing"] else None
        text = render(args.command, cfg, result, rows, elapsed)
    except ValueError as exc:
        print(f"hardylab {args.command}: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if cfg["output_path"]:
        with open(cfg["output_path"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
