"""Command-line entry point: ``rotormub {verify,figure,eval,operators}``.

Exit codes: 0 success, 1 a verification check failed, 2 bad configuration or
a domain error in ``eval``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, replace
from pathlib import Path

import numpy as np

from . import fock_rotor_map as fm
from . import mub_fock as mf
from . import mub_stereographic as ms
from .errors import RotorMubError
from .special_functions import LineBasisLabel
from .verification import SUITES, RunConfig, run_suite


class ConfigError(ValueError):
    pass


_CONFIG_KEYS = {
    "n_max": int,
    "l_max": int,
    "grid_size": int,
    "grid": int,
    "pole_epsilon": float,
    "pole_eps": float,
    "abel_radii": lambda s: tuple(float(r) for r in s.split(",")),
    "format": str,
    "output_format": str,
    "out": str,
    "output_dir": str,
    "seed": int,
}
_ALIASES = {"grid": "grid_size", "pole_eps": "pole_epsilon", "format": "output_format",
            "out": "output_dir"}


def read_config_file(path) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment; ``tol.CHECK = VALUE`` sets tolerances."""
    values, tols = {}, {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key.startswith("tol."):
            tols[key[4:]] = _parse_float(val, key)
            continue
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[_ALIASES.get(key, key)] = _CONFIG_KEYS[key](val)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
    if tols:
        values["tolerances"] = tols
    return values


def _parse_float(text, what):
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"bad number for {what}: {text!r}") from None


def _parse_tol(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ConfigError(f"--tol expects CHECK=VALUE, got {item!r}")
        name, val = item.split("=", 1)
        out[name.strip()] = _parse_float(val, name)
    return out


def build_config(args) -> RunConfig:
    values = read_config_file(args.config) if args.config else {}
    flags = {
        "n_max": args.n_max,
        "l_max": args.l_max,
        "grid_size": args.grid,
        "pole_epsilon": args.pole_eps,
        "output_format": args.format,
        "output_dir": args.out,
        "seed": args.seed,
    }
    values.update({k: v for k, v in flags.items() if v is not None})
    tols = dict(values.get("tolerances", {}))
    tols.update(_parse_tol(args.tol))
    values["tolerances"] = tols
    cfg = RunConfig(**values)
    try:
        cfg.validate()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _fmt(x) -> str:
    # locale-independent, round-trippable
    return repr(float(x))


def _table_csv(header, rows, preamble=()) -> str:
    buf = io.StringIO()
    for line in preamble:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


# ------------------------------------------------------------------ commands

def cmd_verify(args) -> int:
    cfg = build_config(args)
    results = run_suite(args.suite, cfg, timings=not args.no_timings)
    rows = [r.as_dict() for r in results]
    header = {"suite": args.suite, "seed": cfg.seed, "config": _config_dict(cfg)}
    out = Path(cfg.output_dir) / f"report-{args.suite}.{cfg.output_format}"
    if cfg.output_format == "json":
        _write(out, json.dumps({**header, "rows": rows}, indent=2, sort_keys=True) + "\n")
    else:
        cols = ["check", "citation", "deviation", "tolerance", "pass", "seconds"]
        body = [[r[c] if r[c] is not None else "" for c in cols] for r in rows]
        _write(out, _table_csv(cols, body, [f"suite={args.suite}", f"seed={cfg.seed}"]))
    failed = [r for r in results if not r.passed]
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark} {r.check}: deviation {r.deviation:.3e} (tolerance {r.tolerance:.1e})")
    print(f"{len(results) - len(failed)}/{len(results)} checks passed; report written to {out}")
    return 1 if failed else 0


def _config_dict(cfg: RunConfig) -> dict:
    d = asdict(cfg)
    d["abel_radii"] = list(d["abel_radii"])
    d.pop("output_dir")
    return d


def cmd_figure(args) -> int:
    cfg = build_config(args)
    data = mf.figure_dataset(args.which, cfg.grid_size, cfg.pole_epsilon, cfg.abel)
    out = Path(cfg.output_dir) / f"{args.which}.{cfg.output_format}"
    cols = ["phi", "re", "im", "abs"]
    if cfg.output_format == "json":
        payload = {"figure": args.which, "columns": cols, "rows": data.tolist()}
        _write(out, json.dumps(payload) + "\n")
    else:
        _write(out, _table_csv(cols, data.tolist()))
    print(f"{args.which}: {len(data)} rows written to {out}")
    return 0


def cmd_eval(args) -> int:
    cfg = build_config(args)
    phis = [float(p) for p in args.phi.split(",")] if args.phi else []
    try:
        rows = _evaluate(args.family, args.theta, args.y, phis, cfg)
    except (RotorMubError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = _table_csv(["phi", "re", "im", "abs"], rows)
    if args.out:
        out = Path(cfg.output_dir) / f"eval-{args.family}.csv"
        _write(out, text)
    sys.stdout.write(text)
    return 0


def _evaluate(family, theta, y, phis, cfg):
    if family == "stereo":
        if theta == 0.0:
            phi0, amp = ms.theta0_element(y)
            print(f"# theta = 0: ket concentrated at phi0 = {_fmt(phi0)} with amplitude {_fmt(amp)}")
            return [[phi0, amp, 0.0, amp]]
        label = LineBasisLabel(theta, y)
        vals = [ms.gamma_wavefunction(label, p) for p in phis]
    else:
        label = mf.FockMubLabel(theta, y)
        vals = list(np.atleast_1d(mf.psi_series(label, np.asarray(phis), cfg.abel)))
    return [[p, v.real, v.imag, abs(v)] for p, v in zip(phis, vals)]


def _operator(name, trunc):
    if name == "E":
        return fm.build_E_fock(trunc)
    if name == "L":
        return fm.build_L_from_N(trunc)
    if name == "A":
        return fm.build_ladder(trunc)
    if name == "R":
        return fm.build_projectors_reflection(trunc)[2]
    Q, P = fm.build_QP_from_EL(trunc)
    return Q if name == "Q" else P


def cmd_operators(args) -> int:
    cfg = build_config(args)
    trunc = fm.FockTruncation(cfg.n_max)
    op = _operator(args.name, trunc)
    labels = {fm.Basis.FOCK: trunc.n_values, fm.Basis.L: trunc.l_values}
    for basis in (fm.Basis.FOCK, fm.Basis.L):
        m = op.to(basis).matrix
        idx = labels[basis]
        rows = [[int(idx[i]), int(idx[j]), float(m[i, j].real), float(m[i, j].imag)]
                for i, j in zip(*np.nonzero(m))]
        out = Path(cfg.output_dir) / f"{args.name}_{basis.value}.csv"
        _write(out, _table_csv(["row", "col", "re", "im"], rows, [f"indexing={basis.value}"]))
        print(f"{args.name} ({basis.value}-indexed): {len(rows)} nonzero entries written to {out}")
    return 0


# ------------------------------------------------------------------ parser

def _common(p):
    p.add_argument("--config", help="flat key=value file; flags override it")
    p.add_argument("--n-max", type=int, help="even Fock cutoff (default 400)")
    p.add_argument("--l-max", type=int, help="angular-momentum cutoff (default 128)")
    p.add_argument("--grid", type=int, help="angle grid size (default 2048)")
    p.add_argument("--pole-eps", type=float, help="half-width of the window around phi = pi")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out", help="output directory (default .)")
    p.add_argument("--seed", type=int, help="seed for randomized check points")
    p.add_argument("--tol", action="append", metavar="CHECK=VALUE", help="override a tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotormub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--no-timings", action="store_true",
                   help="omit runtimes so that reports are byte-identical across runs")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure", help="emit a wave-function dataset")
    p.add_argument("which", choices=sorted(mf.FIGURES))
    _common(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("eval", help="evaluate a basis wave function at angles")
    p.add_argument("family", choices=("stereo", "fock"))
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--phi", default="", help="comma-separated angles")
    _common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("operators", help="dump a truncated operator in both indexings")
    p.add_argument("name", choices=("E", "L", "Q", "P", "R", "A"))
    _common(p)
    p.set_defaults(func=cmd_operators)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read or write: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
