"""Command-line front end: subcommand dispatch and deterministic serialization.

All numeric inputs are exact rational strings ("3/4", "2"); every record is
emitted as one json line (or one CSV row) in a fixed order, so identical
(config, seed) pairs produce byte-identical output.  Timings and progress go
to stderr only.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction

from . import levels as levels_mod
from . import qalg, radial
from .opalg import verify_q3, verify_qp3

SUBCOMMANDS = ("verify-algebra", "verify-poisson", "spectrum", "radial",
               "levels", "wavefunction")


class ConfigError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not an exact rational: {text!r} ({exc})") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singosc",
        description="Exact symmetry-algebra checks and spectra for double "
                    "singular oscillators.")
    parser.add_argument("--config", help="flat key = value file; flags win over it")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--hbar", default=None, help="exact rational (default 1)")
        p.add_argument("--omega", default=None, help="exact rational (default 1)")
        p.add_argument("--format", default=None, choices=("json-lines", "csv"))
        p.add_argument("--output", default=None, help="output path (default stdout)")
        p.add_argument("--seed", default=None, type=int)

    p = sub.add_parser("verify-algebra", help="exact quantum Q(3) identity checks")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--param-mode", default=None, choices=("symbolic", "sampled"))
    p.add_argument("--samples", default=None, type=int)
    p.add_argument("--skip-casimir", action="store_true")
    common(p)

    p = sub.add_parser("verify-poisson", help="exact classical Poisson checks")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = sub.add_parser("spectrum", help="algebraic spectrum from the unirreps")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c1", default=None)
    p.add_argument("--c2", default=None)
    p.add_argument("--p-max", default=None, type=int)
    p.add_argument("--l-max", default=None, type=int)
    common(p)

    p = sub.add_parser("radial", help="closed-form levels and the FD cross-check")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--c", default=None)
    p.add_argument("--l", default=None, type=int)
    p.add_argument("--count", default=None, type=int)
    p.add_argument("--grid-nodes", default=None, type=int)
    p.add_argument("--grid-levels", default=None, type=int)
    p.add_argument("--r-max", default=None, type=float)
    p.add_argument("--scheme", default=None, choices=("regularized", "chi"))
    common(p)

    p = sub.add_parser("levels", help="degeneracy table up to an energy cutoff")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c1", default=None)
    p.add_argument("--c2", default=None)
    p.add_argument("--e-cut", default=None)
    common(p)

    p = sub.add_parser("wavefunction", help="radial wavefunction samples")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--c", default=None)
    p.add_argument("--l", default=None, type=int)
    p.add_argument("--nr", default=None, type=int)
    p.add_argument("--r-max", default=None, type=float)
    p.add_argument("--samples", default=None, type=int)
    common(p)
    return parser


_DEFAULTS = {
    "hbar": "1", "omega": "1", "format": "json-lines", "output": None,
    "seed": 0, "param_mode": "symbolic", "samples": 3, "c1": "0", "c2": "0",
    "c": "0", "l": 0, "p_max": 2, "l_max": 2, "count": 3, "grid_nodes": 512,
    "grid_levels": 3, "r_max": None, "scheme": "regularized", "e_cut": "8",
    "nr": 0,
}


def _read_config(path: str) -> dict:
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key = value")
                key, _, value = line.partition("=")
                values[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return values


def _resolve(args: argparse.Namespace, config: dict) -> dict:
    """Flag > config-file > default, per option."""
    out = {}
    for key, value in vars(args).items():
        if key in ("config", "command"):
            continue
        if value is None or value is False:
            if key in config:
                raw = config[key]
                default = _DEFAULTS.get(key)
                if isinstance(default, int) and not isinstance(default, bool):
                    value = int(raw)
                elif isinstance(default, float) or key == "r_max":
                    value = float(raw)
                else:
                    value = raw
            elif value is None:
                value = _DEFAULTS.get(key)
        out[key] = value
    return out


def _emit(records: list[dict], fmt: str, output: str | None) -> None:
    if fmt == "json-lines":
        body = "".join(json.dumps(rec, sort_keys=True, default=str) + "\n"
                       for rec in records)
    else:
        buf = io.StringIO()
        fields = sorted({key for rec in records for key in rec})
        writer = csv.DictWriter(buf, fieldnames=fields, restval="",
                                lineterminator="\n")
        writer.writeheader()
        for rec in records:
            writer.writerow({k: rec.get(k, "") for k in fields})
        body = buf.getvalue()
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _random_rationals(rng: random.Random) -> dict:
    def draw():
        return Fraction(rng.randrange(1, 40), rng.randrange(1, 12))
    return {"hbar": draw(), "omega": draw(), "c1": draw(), "c2": draw()}


def _cmd_verify_algebra(opts: dict) -> tuple[list[dict], bool]:
    N, n = opts["N"], opts["n"]
    records: list[dict] = []
    ok = True
    if opts["param_mode"] == "symbolic":
        report = verify_q3(N, n, casimir=not opts["skip_casimir"])
        records.extend(report.records())
        ok = report.all_passed
        _log(f"verify-algebra ({N},{n}) symbolic: "
             f"{len(report.results)} checks in {report.total_time():.2f}s")
    else:
        rng = random.Random(opts["seed"])
        for sample_idx in range(opts["samples"]):
            values = _random_rationals(rng)
            report = verify_q3(N, n, casimir=not opts["skip_casimir"],
                               substitutions=values)
            for rec in report.records():
                rec["sample"] = sample_idx
                rec["sample_values"] = {k: str(v) for k, v in values.items()}
                records.append(rec)
            ok = ok and report.all_passed
            _log(f"verify-algebra ({N},{n}) sample {sample_idx}: "
                 f"{report.total_time():.2f}s")
    return records, ok


def _cmd_verify_poisson(opts: dict) -> tuple[list[dict], bool]:
    report = verify_qp3(opts["N"], opts["n"])
    _log(f"verify-poisson ({opts['N']},{opts['n']}): "
         f"{len(report.results)} checks in {report.total_time():.2f}s")
    return report.records(), report.all_passed


def _cmd_spectrum(opts: dict) -> tuple[list[dict], bool]:
    N, n = opts["N"], opts["n"]
    c1, c2 = _fraction(opts["c1"]), _fraction(opts["c2"])
    hbar, omega = _fraction(opts["hbar"]), _fraction(opts["omega"])
    records = []
    l1_max = min(opts["l_max"], 1) if n == 1 else opts["l_max"]
    l2_max = min(opts["l_max"], 1) if N - n == 1 else opts["l_max"]
    for l_n in range(l1_max + 1):
        for l_nn in range(l2_max + 1):
            ce = qalg.CentralEigs(N=N, n=n, l_n=l_n, l_Nn=l_nn, c1=c1, c2=c2,
                                  hbar=hbar, omega=omega)
            for p in range(opts["p_max"] + 1):
                for sol in qalg.solve_unirreps(p, ce):
                    records.append(sol.record(ce))
    return records, True


def _cmd_radial(opts: dict) -> tuple[list[dict], bool]:
    spec = radial.ComponentSpec(m=opts["m"], c=_fraction(opts["c"]), l=opts["l"],
                                hbar=_fraction(opts["hbar"]),
                                omega=_fraction(opts["omega"]))
    grid = radial.GridSpec(nodes=opts["grid_nodes"], r_max=opts["r_max"],
                           levels=opts["grid_levels"], scheme=opts["scheme"])
    count = opts["count"]
    fd = radial.fd_eigenvalues(spec, grid, count=count)
    records = []
    ok = True
    for idx in range(count):
        mode = radial.closed_form(spec, idx)
        fd_rec = fd.record()[idx]
        rel = abs(fd.energies[idx] - mode.energy) / abs(mode.energy)
        ok = ok and rel < 1e-6
        rec = mode.record()
        rec.update({"fd_energy": fd.energies[idx], "fd_rel_error": rel,
                    "fd_observed_order": fd_rec["observed_order"],
                    "fd_h": fd_rec["h"], "fd_raw": fd_rec["raw"],
                    "scheme": fd.scheme, "r_max": fd.r_max})
        records.append(rec)
    return records, ok


def _cmd_levels(opts: dict) -> tuple[list[dict], bool]:
    table = levels_mod.enumerate_levels(
        opts["N"], opts["n"], _fraction(opts["c1"]), _fraction(opts["c2"]),
        e_cut=float(_fraction(opts["e_cut"])), hbar=_fraction(opts["hbar"]),
        omega=_fraction(opts["omega"]))
    return table.records(), True


def _cmd_wavefunction(opts: dict) -> tuple[list[dict], bool]:
    spec = radial.ComponentSpec(m=opts["m"], c=_fraction(opts["c"]), l=opts["l"],
                                hbar=_fraction(opts["hbar"]),
                                omega=_fraction(opts["omega"]))
    mode = radial.closed_form(spec, opts["nr"])
    import math
    r_max = opts["r_max"] or 8.0 / math.sqrt(float(spec.omega_reduced))
    samples = opts["samples"] or 200
    records = []
    for i in range(1, samples + 1):
        r = r_max * i / samples
        records.append({"r": r, "psi": radial.wavefunction(mode, r),
                        "m": spec.m, "l": spec.l, "Nr": mode.Nr})
    return records, True


def _log(message: str) -> None:
    print(message, file=sys.stderr)


_HANDLERS = {
    "verify-algebra": _cmd_verify_algebra,
    "verify-poisson": _cmd_verify_poisson,
    "spectrum": _cmd_spectrum,
    "radial": _cmd_radial,
    "levels": _cmd_levels,
    "wavefunction": _cmd_wavefunction,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _read_config(args.config) if args.config else {}
        opts = _resolve(args, config)
        if "N" in opts and "n" in opts and not 1 <= opts["n"] <= opts["N"] - 1:
            raise ConfigError(f"invalid partition (N, n) = ({opts['N']}, {opts['n']})")
        records, ok = _HANDLERS[args.command](opts)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(records, opts["format"], opts["output"])
    if not ok:
        failing = [r.get("check") for r in records
                   if r.get("passed") is False or
                   (r.get("fd_rel_error") or 0) > 1e-6]
        print(f"FAILED: {', '.join(str(f) for f in failing if f)}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
