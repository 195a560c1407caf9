"""Command-line front end: one CSV per invocation with a ``#`` metadata header.

Subcommands: ``dynamics``, ``spectrum``, ``spectrum-resolved``,
``ellipticity``, ``g2`` and ``validate``.  Times are in units of ``1/Gamma``
unless ``--raw-units`` is given.  Output goes to ``--out`` (``-`` for
stdout); a relative path is resolved against ``$PHOTONIC_KONDO_OUT`` when
set.  Without ``--out`` the CSV is written to stdout, or to
``<subcommand>.csv`` inside ``$PHOTONIC_KONDO_OUT``.
"""
from __future__ import annotations

import argparse
import io
import os
import sys
from pathlib import Path

import numpy as np

from . import bloch, spectra, statistics, validation
from .errors import KondoError, ParseError
from .model import (
    E_X,
    JonesPolarization,
    KondoParams,
    as_unit_vector,
    build_driven_config,
    jones_from_amplitudes,
)

OUT_ENV = "PHOTONIC_KONDO_OUT"

# flag name -> (parser for the raw string, default)
_VECTOR = "vector"
_COMPLEX = "complex"
_FLAGS = {
    "J": (float, None),
    "f": (float, None),
    "delta": (float, 0.0),
    "omega0": (float, 1.0),
    "ncl": (_VECTOR, None),
    "alpha_plus": (_COMPLEX, None),
    "alpha_minus": (_COMPLEX, None),
    "length": (float, 1.0),
    "s0": (_VECTOR, (0.0, 0.0, 0.0)),
    "nd": (_VECTOR, None),
    "n": (_VECTOR, None),
    "m": (_VECTOR, None),
    "nu_min": (float, -6.0),
    "nu_max": (float, 6.0),
    "nu_steps": (int, 2401),
    "tau_max": (float, 10.0),
    "tau_steps": (int, 401),
    "ratio_min": (float, -10.0),
    "ratio_max": (float, 10.0),
    "ratio_steps": (int, 201),
}


_PHYSICS = ("J", "f", "delta", "omega0", "ncl", "alpha_plus", "alpha_minus", "length")
_RELEVANT = {
    "dynamics": _PHYSICS + ("s0", "tau_max", "tau_steps"),
    "spectrum": _PHYSICS + ("nu_min", "nu_max", "nu_steps"),
    "spectrum-resolved": _PHYSICS + ("nd", "nu_min", "nu_max", "nu_steps"),
    "ellipticity": _PHYSICS + ("ratio_min", "ratio_max", "ratio_steps"),
    "g2": _PHYSICS + ("n", "m", "tau_max", "tau_steps"),
}


def _floats(text: str, count: int, name: str) -> tuple:
    try:
        parts = tuple(float(p) for p in str(text).split(","))
    except ValueError as exc:
        raise ParseError(f"--{name}: cannot parse {text!r}") from exc
    if len(parts) != count:
        raise ParseError(f"--{name}: expected {count} comma-separated numbers, got {text!r}")
    return parts


def _convert(key: str, raw):
    kind, _ = _FLAGS[key]
    name = key.replace("_", "-")
    if kind == _VECTOR:
        return np.array(_floats(raw, 3, name))
    if kind == _COMPLEX:
        re, im = _floats(raw, 2, name)
        return complex(re, im)
    try:
        return kind(raw)
    except ValueError as exc:
        raise ParseError(f"--{name}: cannot parse {raw!r}") from exc


def read_config_file(path) -> dict:
    """``key = value`` lines with ``#`` comments; keys use flag names."""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read config file {path}: {exc}") from exc
    for number, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{path}:{number}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in _FLAGS:
            raise ParseError(f"{path}:{number}: unknown key {key!r}")
        values[key] = value
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="photonic-kondo", description="Photonic Kondo model: dynamics, spectra and photon statistics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, grids):
        p.add_argument("--config", help="key = value file; flags override it")
        p.add_argument("--out", help="output CSV path, '-' for stdout")
        p.add_argument("--raw-units", action="store_true", help="times in raw units instead of 1/Gamma")
        p.add_argument("--J", help="exchange coupling")
        p.add_argument("--f", help="photon density of the drive")
        p.add_argument("--delta", help="two-photon detuning")
        p.add_argument("--omega0", help="carrier frequency")
        p.add_argument("--ncl", help="drive polarization direction x,y,z")
        p.add_argument("--alpha-plus", help="drive amplitude re,im")
        p.add_argument("--alpha-minus", help="drive amplitude re,im")
        p.add_argument("--length", help="pulse length for the amplitudes")
        for g in grids:
            p.add_argument(f"--{g}")

    p = sub.add_parser("dynamics", help="Bloch vector and purity versus time")
    common(p, ["s0", "tau-max", "tau-steps"])
    p = sub.add_parser("spectrum", help="polarization-summed inelastic spectrum")
    common(p, ["nu-min", "nu-max", "nu-steps"])
    p = sub.add_parser("spectrum-resolved", help="spectrum behind a polarization detector")
    common(p, ["nd", "nu-min", "nu-max", "nu-steps"])
    p = sub.add_parser("ellipticity", help="outgoing ellipticity versus detuning")
    common(p, ["ratio-min", "ratio-max", "ratio-steps"])
    p = sub.add_parser("g2", help="polarization-resolved intensity correlation")
    common(p, ["n", "m", "tau-max", "tau-steps"])
    sub.add_parser("validate", help="run the oracle self-checks")
    return parser


def resolve_options(args: argparse.Namespace) -> dict:
    """Merge defaults, config file and flags (in increasing precedence) into typed values."""
    raw = {}
    if getattr(args, "config", None):
        raw.update(read_config_file(args.config))
    for key in _FLAGS:
        value = getattr(args, key, None)
        if value is not None:
            raw[key] = value
    opts = {key: (_convert(key, raw[key]) if key in raw else default) for key, (_, default) in _FLAGS.items()}
    opts["_given"] = set(raw)
    return opts


def _drive(opts: dict, command: str):
    """Return ``(n_cl, f)`` from exactly one polarization entry mode."""
    given = opts["_given"]
    amp_mode = bool({"alpha_plus", "alpha_minus"} & given)
    if amp_mode and "ncl" in given:
        raise ParseError("give either --ncl or --alpha-plus/--alpha-minus, not both")
    if amp_mode:
        pol = JonesPolarization(
            opts["alpha_plus"] or 0j, opts["alpha_minus"] or 0j, length=opts["length"]
        )
        jones = jones_from_amplitudes(pol)
        if opts["f"] is not None and not np.isclose(opts["f"], jones.f, rtol=1e-12, atol=0.0):
            raise ParseError(f"--f {opts['f']} disagrees with the amplitudes (f = {jones.f})")
        return np.array(jones.n_cl), jones.f
    if opts["f"] is None:
        raise ParseError("--f is required with --ncl")
    if "ncl" in given:
        return as_unit_vector(opts["ncl"], "n_cl"), opts["f"]
    if command == "ellipticity":
        return E_X.copy(), opts["f"]
    raise ParseError("a polarization is required: --ncl or --alpha-plus/--alpha-minus")


def _fmt(x) -> str:
    return repr(float(x))


def _vec(v) -> str:
    return ",".join(_fmt(c) for c in v)


def _header(command: str, opts: dict, config=None, extra=()) -> list[str]:
    lines = [f"# command = {command}"]
    for key in _RELEVANT[command]:
        value = opts[key]
        if value is None:
            continue
        if isinstance(value, (np.ndarray, tuple)):
            value = _vec(value)
        elif isinstance(value, complex):
            value = f"{_fmt(value.real)},{_fmt(value.imag)}"
        elif isinstance(value, float):
            value = _fmt(value)
        lines.append(f"# {key} = {value}")
    if config is not None:
        lines.append(f"# n_cl_unit = {_vec(config.n_cl)}")
        lines.append(f"# n_h = {_vec(config.n_h)}")
        for key, value in config.summary().items():
            if key in ("J", "f", "delta", "omega0"):
                key = f"{key}_effective"
            lines.append(f"# {key} = {_fmt(value)}")
        gamma_st = _fmt(bloch.stationary_purity(config)) if config.Gamma > 0 else "undefined"
        lines.append(f"# gamma_st = {gamma_st}")
    lines.append(f"# time_unit = {'raw' if opts.get('raw_units') else '1/Gamma'}")
    for key, value in extra:
        lines.append(f"# {key} = {value}")
    return lines


def _time_scale(config, raw_units: bool) -> float:
    """Raw time per unit on the wire."""
    if raw_units:
        return 1.0
    if not config.Gamma > 0:
        raise ParseError("time unit 1/Gamma undefined for Gamma = 0; use --raw-units")
    return 1.0 / config.Gamma


def _grid(lo, hi, steps, name):
    if steps < 2 or not hi > lo:
        raise ParseError(f"{name} grid needs max > min and at least 2 steps")
    return np.linspace(lo, hi, steps)


def _table(columns: list[str], rows) -> list[str]:
    out = [",".join(columns)]
    for row in rows:
        out.append(",".join(_fmt(x) for x in row))
    return out


def run_command(command: str, opts: dict, raw_units: bool = False) -> str:
    """Compute the dataset for ``command`` and return the CSV text."""
    opts = dict(opts, raw_units=raw_units)
    n_cl, f = _drive(opts, command)
    if opts["J"] is None:
        raise ParseError("--J is required")
    params = KondoParams(J=opts["J"], f=f, delta=opts["delta"], omega0=opts["omega0"])
    config = build_driven_config(params, n_cl)
    extra = []

    if command == "dynamics":
        scale = _time_scale(config, raw_units)
        t = _grid(0.0, opts["tau_max"], opts["tau_steps"], "time")
        traj = bloch.evolve_trajectory(config, opts["s0"], t[-1] * scale, t.size)
        rows = np.column_stack([t, traj.states, traj.purities])
        body = _table(["t", "Sx", "Sy", "Sz", "purity"], rows)
    elif command in ("spectrum", "spectrum-resolved"):
        nu = _grid(opts["nu_min"], opts["nu_max"], opts["nu_steps"], "nu")
        if command == "spectrum":
            spec = spectra.spectrum_unresolved(config, nu)
            extra.append(("elastic_weight", _fmt(spec.elastic_weight)))
            body = _table(["nu", "inelastic_density"], np.column_stack([nu, spec.inelastic]))
        else:
            n_d = opts["nd"] if opts["nd"] is not None else config.n_cl
            res = spectra.spectrum_resolved(config, n_d, nu)
            extra.append(("n_d", _vec(res.detector)))
            extra.append(("elastic_weight", _fmt(res.base.elastic_weight)))
            extra.append(("resolved_elastic_weight", _fmt(res.elastic_weight)))
            rows = np.column_stack([nu, res.base.inelastic, res.vector_part, res.g1])
            body = _table(["nu", "unresolved", "vector_part", "g1"], rows)
    elif command == "ellipticity":
        ratios = _grid(opts["ratio_min"], opts["ratio_max"], opts["ratio_steps"], "ratio")
        thetas = spectra.ellipticity_sweep(params.J, ratios, f=f, n_cl=n_cl)
        body = _table(["delta_over_omega0", "theta_deg"], np.column_stack([ratios, thetas]))
    elif command == "g2":
        scale = _time_scale(config, raw_units)
        n = opts["n"] if opts["n"] is not None else config.n_cl
        m = opts["m"] if opts["m"] is not None else config.n_cl
        taus = _grid(0.0, opts["tau_max"], opts["tau_steps"], "tau")
        values = statistics.g2(config, n, m, taus * scale)
        extra.append(("detector_n", _vec(n)))
        extra.append(("detector_m", _vec(m)))
        body = _table(["tau", "g2"], np.column_stack([taus, values]))
    else:
        raise ParseError(f"unknown command {command!r}")
    return "\n".join(_header(command, opts, config, extra) + body) + "\n"


def _destination(command: str, out: str | None):
    base = os.environ.get(OUT_ENV)
    if out == "-" or (out is None and not base):
        return None
    path = Path(out) if out else Path(f"{command}.csv")
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def run_validate(stream) -> int:
    results = validation.run_all()
    for r in results:
        print(r.line(), file=stream)
    ok = all(r.passed for r in results)
    print("validate: all checks passed" if ok else "validate: FAILED", file=stream)
    return 0 if ok else 1


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "validate":
            return run_validate(sys.stdout)
        opts = resolve_options(args)
        text = run_command(args.command, opts, raw_units=args.raw_units)
        path = _destination(args.command, args.out)
        if path is None:
            sys.stdout.write(text)
        else:
            path.parent.mkdir(parents=True, exist_ok=True)
            with io.open(path, "w", newline="\n") as fh:
                fh.write(text)
        return 0
    except KondoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
