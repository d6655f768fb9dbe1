"""Batch command-line front end.

Subcommands build named states, transform them between representations,
evolve states or distributions, run scenario verifications, and export
plot-ready files.  Exit codes: 0 success, 1 verification failure,
2 configuration error, 3 numeric or domain error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .dynamics import evolve_state, evolve_wigner, propagator_bundle
from .errors import (
    CapabilityError,
    ContractError,
    IllPosedDeconvolutionError,
    IllPosedOperatorError,
    NumericDomainError,
    ReconstructionError,
)
from .grids import Axis, Grid, SpinorField
from .io_tjson import export_csv, read_tjson, write_tjson
from .quasidist import PhaseField4, husimi_vector, wigner_vector
from .scenarios import (
    landau_entangled_initial,
    landau_state,
    oscillator_entangled_initial,
    run_scenario,
)
from .states import coherent_state, oscillator_eigenstate
from .tomography import (
    TomogramField4,
    default_angles,
    normalization_check,
    optical_tomogram_vector,
)

REPRESENTATIONS = ("optical", "symplectic", "wigner", "husimi")
FLOWS = ("free", "oscillator", "landau")

_DEFAULTS = {
    "rep": "optical",
    "flow": "free",
    "t": 0.0,
    "omega": -1.0,
    "omega0": 0.0,
    "kappa": 0.5,
    "format": "tjson",
}


def _parse_floats(text: str) -> list:
    try:
        return [float(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise ContractError(f"bad numeric list {text!r}") from exc


def _parse_grid(text: str, ndim: int) -> Grid:
    parts = text.split(",")
    if len(parts) != 3:
        raise ContractError("--grid expects min,max,count")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    if not hi > lo or count < 2:
        raise ContractError("--grid needs max > min and count >= 2")
    axis = Axis(lo, count, (hi - lo) / count)
    return Grid((axis,) * ndim)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pauli-tomograph",
        description="Spin-1/2 probability-representation toolkit",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p):
        p.add_argument("--config", help="JSON file with default flag values")
        p.add_argument("--out", help="output file path")
        p.add_argument("--grid", help="spatial grid as min,max,count",
                       default=argparse.SUPPRESS)

    p_state = sub.add_parser("state", help="build a named state")
    p_state.add_argument("spec", nargs="+",
                         help="fock N | coherent A | landau N M | "
                              "scenario {oscillator,landau}")
    add_common(p_state)

    p_tr = sub.add_parser("transform", help="state to representation")
    p_tr.add_argument("--in", dest="infile", default=argparse.SUPPRESS)
    p_tr.add_argument("--rep", default=argparse.SUPPRESS)
    p_tr.add_argument("--theta", default=argparse.SUPPRESS,
                      help="comma list of quadrature angles")
    add_common(p_tr)

    p_ev = sub.add_parser("evolve", help="evolve a state or distribution")
    p_ev.add_argument("--in", dest="infile", default=argparse.SUPPRESS)
    p_ev.add_argument("--flow", default=argparse.SUPPRESS,
                      help="free | oscillator | landau")
    p_ev.add_argument("--t", type=float, default=argparse.SUPPRESS)
    p_ev.add_argument("--omega", type=float, default=argparse.SUPPRESS)
    p_ev.add_argument("--omega0", type=float, default=argparse.SUPPRESS)
    p_ev.add_argument("--kappa", type=float, default=argparse.SUPPRESS)
    add_common(p_ev)

    p_vf = sub.add_parser("verify", help="run a verification scenario")
    p_vf.add_argument("--scenario", default=argparse.SUPPRESS)
    p_vf.add_argument("--times", default=argparse.SUPPRESS,
                      help="comma list of comparison times")
    p_vf.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                      help="max-abs error tolerance override")
    add_common(p_vf)

    p_ex = sub.add_parser("export", help="convert TJSON to plot formats")
    p_ex.add_argument("--in", dest="infile", default=argparse.SUPPRESS)
    p_ex.add_argument("--format", default=argparse.SUPPRESS,
                      help="tjson | csv")
    add_common(p_ex)
    return parser


def _effective_config(args: argparse.Namespace) -> dict:
    """Merge precedence: flags > --config JSON file > built-in defaults."""
    given = {k: v for k, v in vars(args).items()
             if k not in ("config",) and v is not None}
    file_values = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ContractError(f"cannot read config file: {exc}") from exc
        if not isinstance(file_values, dict):
            raise ContractError("config file must hold a JSON object")
    merged = dict(_DEFAULTS)
    merged.update(file_values)
    merged.update(given)
    return merged


def _report(payload: dict, config: dict) -> dict:
    echo = {k: v for k, v in sorted(config.items()) if k != "spec"}
    payload = dict(payload)
    payload["config"] = echo
    print(json.dumps(payload, sort_keys=True))
    return payload


def _require(config: dict, key: str, what: str):
    value = config.get(key)
    if value in (None, ""):
        raise ContractError(f"{what} required (--{key.replace('infile', 'in')})")
    return value


def _cmd_state(config: dict) -> int:
    spec = config["spec"]
    out = _require(config, "out", "output path")
    kind = spec[0]
    grid_text = config.get("grid")
    if kind == "fock":
        if len(spec) != 2:
            raise ContractError("state fock expects one level argument")
        grid = _parse_grid(grid_text, 1) if grid_text else Grid.default_1d()
        psi = oscillator_eigenstate(int(spec[1]), grid)
        state = SpinorField.spin_up(psi)
    elif kind == "coherent":
        if len(spec) != 2:
            raise ContractError("state coherent expects one amplitude argument")
        try:
            alpha = complex(spec[1])
        except ValueError as exc:
            raise ContractError(f"bad complex amplitude {spec[1]!r}") from exc
        grid = _parse_grid(grid_text, 1) if grid_text else Grid.default_1d()
        state = SpinorField.spin_up(coherent_state(alpha, grid))
    elif kind == "landau":
        if len(spec) != 3:
            raise ContractError("state landau expects two level arguments")
        grid = _parse_grid(grid_text, 2) if grid_text else Grid.default_2d()
        state = SpinorField.spin_up(landau_state(int(spec[1]), int(spec[2]),
                                                 grid).field)
    elif kind == "scenario":
        if len(spec) != 2 or spec[1] not in ("oscillator", "landau"):
            raise ContractError(
                "state scenario expects 'oscillator' or 'landau'"
            )
        if spec[1] == "oscillator":
            grid = _parse_grid(grid_text, 1) if grid_text else Grid.default_1d()
            state = oscillator_entangled_initial(grid)
        else:
            grid = _parse_grid(grid_text, 2) if grid_text else Grid.default_2d()
            state = landau_entangled_initial(grid)
    else:
        raise ContractError(f"unknown state kind {kind!r}")
    write_tjson(out, state)
    _report({"command": "state", "out": out,
             "norm_squared": state.norm_squared()}, config)
    return 0


def _cmd_transform(config: dict) -> int:
    infile = _require(config, "infile", "input path")
    out = _require(config, "out", "output path")
    rep = config["rep"]
    if rep not in REPRESENTATIONS:
        raise ContractError(f"unknown representation {rep!r}")
    state = read_tjson(infile)
    if not isinstance(state, SpinorField):
        raise ContractError("transform expects a spinor state input")

    if rep in ("optical", "symplectic"):
        theta_text = config.get("theta")
        thetas = np.asarray(_parse_floats(theta_text)) if theta_text \
            else default_angles()
        if state.grid.ndim == 2 and thetas.ndim == 1:
            thetas = np.stack([thetas] * 2, axis=1)
        tomogram = optical_tomogram_vector(state, thetas=thetas)
        write_tjson(out, tomogram)
        checks = normalization_check(tomogram)
        info = {"command": "transform", "rep": rep, "out": out,
                "max_trace_deviation": checks["max_trace_deviation"],
                "normalized": checks["ok"]}
        if rep == "symplectic":
            info["section"] = "mu=cos(theta), nu=sin(theta)"
        _report(info, config)
        return 0

    grid_text = config.get("grid")
    grid = _parse_grid(grid_text, 2) if grid_text else None
    field = wigner_vector(state, grid) if rep == "wigner" \
        else husimi_vector(state, grid)
    write_tjson(out, field)
    _report({"command": "transform", "rep": rep, "out": out,
             "mass": field.normalization_mass(),
             "min_value": float(field.values.min())}, config)
    return 0


def _cmd_evolve(config: dict) -> int:
    infile = _require(config, "infile", "input path")
    out = _require(config, "out", "output path")
    flow = config["flow"]
    if flow not in FLOWS:
        raise ContractError(f"unknown flow kind {flow!r}")
    t = float(config["t"])
    omega = float(config["omega"])
    omega0 = float(config["omega0"])
    obj = read_tjson(infile)

    if isinstance(obj, SpinorField):
        before = obj.norm_squared()
        evolved = obj if t == 0.0 else evolve_state(
            obj, flow, t, omega0=omega0, omega=omega)
        after = evolved.norm_squared()
        drift = abs(after - before)
    elif isinstance(obj, PhaseField4):
        if obj.kind != "wigner":
            raise ContractError("evolve supports Wigner fields, not husimi")
        before = obj.normalization_mass()
        if t == 0.0:
            evolved = obj
        else:
            dims = 2 if flow == "landau" else 1
            bundle = propagator_bundle(flow, t, omega0=omega0, omega=omega,
                                       dims=dims)
            evolved = evolve_wigner(obj, bundle)
        after = evolved.normalization_mass()
        drift = abs(after - before)
    else:
        raise ContractError("evolve expects a spinor state or Wigner field")
    write_tjson(out, evolved)
    _report({"command": "evolve", "flow": flow, "t": t, "out": out,
             "normalization_before": before, "normalization_after": after,
             "normalization_drift": drift}, config)
    return 0


def _cmd_verify(config: dict) -> int:
    scenario = _require(config, "scenario", "scenario id")
    times = _parse_floats(config["times"]) if config.get("times") else None
    tolerances = None
    if config.get("tol") is not None:
        tolerances = {"error": float(config["tol"])}
    report = run_scenario(scenario, times=times, tolerances=tolerances)
    payload = _report({"command": "verify", **report.to_dict()}, config)
    out = config.get("out")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)
            fh.write("\n")
    return 0 if report.passed else 1


def _cmd_export(config: dict) -> int:
    infile = _require(config, "infile", "input path")
    out = _require(config, "out", "output path")
    fmt = config["format"]
    obj = read_tjson(infile)
    if fmt == "csv":
        export_csv(out, obj)
    elif fmt == "tjson":
        write_tjson(out, obj)
    else:
        raise ContractError(f"unknown export format {fmt!r}")
    rows = int(np.asarray(getattr(obj, "thetas", [0])).shape[0])
    _report({"command": "export", "format": fmt, "out": out,
             "angle_count": rows}, config)
    return 0


_COMMANDS = {
    "state": _cmd_state,
    "transform": _cmd_transform,
    "evolve": _cmd_evolve,
    "verify": _cmd_verify,
    "export": _cmd_export,
}


_VALUE_FLAGS = ("--grid", "--t", "--times", "--theta", "--tol",
                "--omega", "--omega0", "--kappa")


def _preprocess_argv(argv) -> list:
    """Join value flags with arguments that start with a minus sign.

    argparse rejects "--grid -10,10,128" because the value looks like an
    option; rewriting it to "--grid=-10,10,128" keeps the documented
    flag spelling usable.
    """
    out = []
    skip = False
    for i, token in enumerate(argv):
        if skip:
            skip = False
            continue
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (token in _VALUE_FLAGS and nxt is not None
                and nxt.startswith("-") and not nxt.startswith("--")):
            out.append(f"{token}={nxt}")
            skip = True
        else:
            out.append(token)
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_preprocess_argv(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = _effective_config(args)
        return _COMMANDS[args.subcommand](config)
    except (NumericDomainError, IllPosedOperatorError,
            IllPosedDeconvolutionError, ReconstructionError) as exc:
        print(f"numeric domain error: {exc}", file=sys.stderr)
        return 3
    except (ContractError, CapabilityError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
