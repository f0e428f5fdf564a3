"""Command-line front end: ``simulate``, ``predict`` and ``check``.

Configuration comes from an optional JSON document whose keys mirror
:class:`RunConfig` (``state.kind``, ``model.m``, ...); command-line flags
override file values.  Exit codes: 0 success, 1 check failure,
2 configuration error, 3 numeric-budget violation.
"""
from __future__ import annotations

import argparse
import copy
import json
import math
import sys
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from . import states
from .dynamics import Approach, ModelConfig, evolve, evolve_eha
from .errors import ConfigError, JCMError, NumericBudgetError
from .observables import (
    OBSERVABLES,
    atomic_inversion,
    f_asymptotic,
    f_normal_exact,
    mean_photon_number,
    revival_time,
    sweep,
    trapping_defect,
)
from .oracle import build_generator, initial_state, integrate, max_deviation

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

STATE_KINDS = ("coherent", "kphoton", "orthogonal_even", "even", "odd")

DEFAULTS = {
    "state": {"kind": "coherent", "alpha": 5.0, "k": 3},
    "atom": {"theta": 0.0, "phi": 0.0},
    "model": {"m": 1, "approach": "eha", "beta1": 0.0, "beta2": 0.0, "lambda": 1.0},
    "grid": {"t_max": 60.0, "steps": 601},
    "truncation": {"n_max": "auto"},
    "observables": ["inversion"],
    "output": None,
}

# flag dest -> config key path
FLAG_KEYS = {
    "state": ("state", "kind"),
    "alpha": ("state", "alpha"),
    "k": ("state", "k"),
    "theta": ("atom", "theta"),
    "phi": ("atom", "phi"),
    "m": ("model", "m"),
    "approach": ("model", "approach"),
    "beta1": ("model", "beta1"),
    "beta2": ("model", "beta2"),
    "lam": ("model", "lambda"),
    "t_max": ("grid", "t_max"),
    "steps": ("grid", "steps"),
    "nmax": ("truncation", "n_max"),
    "observables": ("observables",),
    "out": ("output",),
}


@dataclass
class RunConfig:
    state: dict
    atom: dict
    model: dict
    grid: dict
    truncation: dict
    observables: list
    output: str | None = None
    n_max_resolved: int | None = field(default=None, compare=False)

    def field_state(self) -> states.FieldState:
        kind = self.state["kind"]
        alpha = self.state["alpha"]
        n_max = self.truncation["n_max"]
        n_max = None if n_max == "auto" else n_max
        m = self.model["m"]
        if kind == "coherent":
            fs = states.coherent_state(alpha, n_max, m=m)
        elif kind == "kphoton":
            fs = states.k_photon_coherent_state(alpha, self.state["k"], n_max, m=m)
        elif kind == "orthogonal_even":
            fs = states.orthogonal_even_coherent_state(alpha, n_max, m=m)
        else:
            fs = states.parity_coherent_state(alpha, kind, n_max, m=m)
        self.n_max_resolved = fs.n_max
        return fs

    def atom_state(self) -> states.AtomState:
        return states.AtomState(self.atom["theta"], self.atom["phi"])

    def model_config(self) -> ModelConfig:
        mdl = self.model
        return ModelConfig(
            m=mdl["m"],
            approach=mdl["approach"],
            beta1=mdl["beta1"],
            beta2=mdl["beta2"],
            lam=mdl["lambda"],
        )

    def echo(self) -> list[tuple[str, object]]:
        """Flattened ``key path -> value`` pairs, with auto truncation resolved."""
        rows = []
        for section in ("state", "atom", "model", "grid", "truncation"):
            for key, value in getattr(self, section).items():
                rows.append((f"{section}.{key}", value))
        rows.append(("truncation.n_max_resolved", self.n_max_resolved))
        rows.append(("observables", list(self.observables)))
        return rows


def _number(value, key: str, *, integer: bool = False, positive: bool = False, nonneg: bool = False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{key} must be finite, got {value!r}")
    if integer:
        if int(value) != value:
            raise ConfigError(f"{key} must be an integer, got {value!r}")
        value = int(value)
    else:
        value = float(value)
    if positive and not value > 0:
        raise ConfigError(f"{key} must be positive, got {value!r}")
    if nonneg and value < 0:
        raise ConfigError(f"{key} must be non-negative, got {value!r}")
    return value


def _merge(base: dict, override: dict, prefix: str = "") -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        path = f"{prefix}{key}"
        if key not in base:
            raise ConfigError(f"unknown configuration key {path!r}")
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"configuration key {path!r} must be a mapping")
            out[key] = _merge(base[key], value, path + ".")
        else:
            out[key] = value
    return out


def validate(raw: dict) -> RunConfig:
    """Check types and ranges of a merged configuration mapping."""
    st = dict(raw["state"])
    if st["kind"] not in STATE_KINDS:
        raise ConfigError(f"state.kind must be one of {', '.join(STATE_KINDS)}, got {st['kind']!r}")
    st["alpha"] = _number(st["alpha"], "state.alpha", nonneg=True)
    st["k"] = _number(st["k"], "state.k", integer=True, positive=True)

    atom = {k: _number(v, f"atom.{k}") for k, v in raw["atom"].items()}

    mdl = dict(raw["model"])
    mdl["m"] = _number(mdl["m"], "model.m", integer=True, positive=True)
    if str(mdl["approach"]).lower() not in ("eha", "meha"):
        raise ConfigError(f"model.approach must be 'eha' or 'meha', got {mdl['approach']!r}")
    mdl["approach"] = str(mdl["approach"]).lower()
    mdl["beta1"] = _number(mdl["beta1"], "model.beta1", nonneg=True)
    mdl["beta2"] = _number(mdl["beta2"], "model.beta2", nonneg=True)
    mdl["lambda"] = _number(mdl["lambda"], "model.lambda", positive=True)

    grid = {
        "t_max": _number(raw["grid"]["t_max"], "grid.t_max", positive=True),
        "steps": _number(raw["grid"]["steps"], "grid.steps", integer=True),
    }
    if grid["steps"] < 2:
        raise ConfigError(f"grid.steps must be >= 2, got {grid['steps']!r}")

    n_max = raw["truncation"]["n_max"]
    if n_max != "auto":
        n_max = _number(n_max, "truncation.n_max", integer=True, nonneg=True)

    names = raw["observables"]
    if isinstance(names, str):
        names = [s.strip() for s in names.split(",") if s.strip()]
    if not isinstance(names, list) or not names:
        raise ConfigError("observables must be a non-empty list of names")
    bad = [n for n in names if n not in OBSERVABLES]
    if bad:
        raise ConfigError(
            f"unknown observable {bad[0]!r} in 'observables'; choose from {', '.join(OBSERVABLES)}"
        )
    output = raw["output"]
    if output is not None and not isinstance(output, str):
        raise ConfigError("output must be a path string")
    return RunConfig(st, atom, mdl, grid, {"n_max": n_max}, list(names), output)


def load_config(args: argparse.Namespace) -> RunConfig:
    raw = copy.deepcopy(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise ConfigError("config file must hold a JSON object")
        raw = _merge(raw, doc)
    for dest, path in FLAG_KEYS.items():
        value = getattr(args, dest, None)
        if value is None:
            continue
        target = raw
        for key in path[:-1]:
            target = target[key]
        target[path[-1]] = value
    return validate(raw)


def _fmt(x: float) -> str:
    return repr(float(x))


def render_csv(series, cfg: RunConfig) -> str:
    lines = ["# multijcm simulate"]
    for key, value in cfg.echo():
        lines.append(f"# {key} = {json.dumps(value)}")
    names = list(series.columns)
    lines.append(",".join(["T", *names]))
    cols = [series.columns[n] for n in names]
    for i, t in enumerate(series.t_grid):
        lines.append(",".join([_fmt(t), *(_fmt(c[i]) for c in cols)]))
    return "\n".join(lines) + "\n"


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_simulate(args) -> int:
    cfg = load_config(args)
    fs = cfg.field_state()
    series = sweep(
        fs,
        cfg.atom_state(),
        cfg.model_config(),
        cfg.grid["t_max"],
        cfg.grid["steps"],
        cfg.observables,
    )
    _write(render_csv(series, cfg), cfg.output)
    return EXIT_OK


def support_spacing(fs: states.FieldState) -> int:
    """Greatest common divisor of the occupied Fock levels (1 for coherent)."""
    occupied = np.nonzero(fs.amplitudes)[0]
    step = reduce(math.gcd, (int(n) for n in occupied), 0)
    return step or 1


def predictions(cfg: RunConfig) -> list[tuple[str, object]]:
    fs = cfg.field_state()
    m = cfg.model["m"]
    n0 = states.mean_photon(fs)
    spacing = support_spacing(fs)
    rows: list[tuple[str, object]] = [
        ("state", fs.label),
        ("n_max", fs.n_max),
        ("m", m),
        ("mean_photon", n0),
        ("support_spacing", spacing),
        ("natural_phenomenon", states.natural_phenomenon_class(fs)),
    ]
    if n0 > 0:
        tr_c = revival_time(n0, 1)
        rows += [
            ("revival_time_coherent", tr_c),
            ("revival_time_coherent_asymptotic", 2 * math.pi * math.sqrt(n0)),
            ("revival_time_state", revival_time(n0, spacing)),
            ("revival_time_coherent_over_spacing", tr_c / spacing),
            ("f_normal_exact", f_normal_exact(int(round(n0)), m)),
            ("f_asymptotic_order1", f_asymptotic(n0, m, 1)),
            ("f_asymptotic_order2", f_asymptotic(n0, m, 2)),
        ]
    else:
        rows += [(name, float("nan")) for name in (
            "revival_time_coherent", "revival_time_coherent_asymptotic", "revival_time_state",
            "revival_time_coherent_over_spacing", "f_normal_exact", "f_asymptotic_order1",
            "f_asymptotic_order2")]
    rows.append(("trapping_defect", trapping_defect(fs, m)))
    return rows


def cmd_predict(args) -> int:
    cfg = load_config(args)
    lines = ["quantity,value"]
    for key, value in predictions(cfg):
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, float):
            text = _fmt(value)
        else:
            text = str(value)
        lines.append(f"{key},{text}")
    _write("\n".join(lines) + "\n", cfg.output)
    return EXIT_OK


ORACLE_TOL = 1e-6
REDUCTION_TOL = 1e-12
CONSERVATION_TOL = 1e-8


def check_grid(full: bool = False):
    """Oracle-comparison cases: (state factory, m list, approaches, times)."""
    if full:
        fields = [
            lambda m: states.coherent_state(1.0, m=m),
            lambda m: states.coherent_state(3.0, m=m),
            lambda m: states.coherent_state(5.0, m=m),
            lambda m: states.orthogonal_even_coherent_state(7.0, m=m),
            lambda m: states.k_photon_coherent_state(2.0, 3, m=m),
        ]
        ms, times = (1, 3, 4), (1.0, 5.0, 20.0)
    else:
        fields = [
            lambda m: states.coherent_state(1.0, m=m),
            lambda m: states.coherent_state(3.0, m=m),
            lambda m: states.k_photon_coherent_state(1.5, 3, m=m),
        ]
        ms, times = (1, 3), (1.0, 5.0)
    models = [lambda m: ModelConfig(m=m), lambda m: ModelConfig(m=m, approach="meha", beta1=0.5, beta2=0.5)]
    atoms = [states.AtomState(th, ph) for th in (0.0, math.pi / 4) for ph in (0.0, math.pi / 3)]
    for make_field in fields:
        for m in ms:
            fs = make_field(m)
            for make_model in models:
                for atom in atoms:
                    yield fs, atom, make_model(m), times


def run_check(cases, dt: float | None = None, out=None) -> bool:
    out = out or sys.stdout
    ok = True
    worst = {"oracle": 0.0, "reduction": 0.0, "conservation": 0.0}
    for fs, atom, cfg, times in cases:
        tag = f"{fs.label} m={cfg.m} {cfg.approach.value} theta={atom.theta:.4f} phi={atom.phi:.4f}"
        H = build_generator(cfg, fs.n_max + cfg.m)
        start = initial_state(fs, atom, cfg)
        n_start = mean_photon_number(start) + 0.5 * cfg.m * atomic_inversion(start)
        for T in times:
            try:
                ref = integrate(H, start, T, dt)
            except NumericBudgetError as exc:
                print(f"FAIL {tag} T={T:g}: {exc}", file=out)
                ok = False
                continue
            closed = evolve(fs, atom, cfg, T)
            dev = max_deviation(closed, ref)
            worst["oracle"] = max(worst["oracle"], dev)
            excitation = mean_photon_number(closed) + 0.5 * cfg.m * atomic_inversion(closed)
            drift = abs(excitation - n_start)
            worst["conservation"] = max(worst["conservation"], drift)
            if dev > ORACLE_TOL or drift > CONSERVATION_TOL:
                print(f"FAIL {tag} T={T:g}: deviation {dev:.3e}, excitation drift {drift:.3e}", file=out)
                ok = False
            if cfg.approach is Approach.MEHA and cfg.beta1 == 0.0 and cfg.beta2 == 0.0:
                red = max_deviation(closed, evolve_eha(fs, atom, ModelConfig(m=cfg.m), T))
                worst["reduction"] = max(worst["reduction"], red)
                if red > REDUCTION_TOL:
                    print(f"FAIL {tag} T={T:g}: MEHA(0,0) vs EHA {red:.3e}", file=out)
                    ok = False
    print(f"max oracle deviation: {worst['oracle']:.3e} (budget {ORACLE_TOL:g})", file=out)
    print(f"max excitation drift: {worst['conservation']:.3e} (budget {CONSERVATION_TOL:g})", file=out)
    if worst["reduction"]:
        print(f"max MEHA(0,0)-EHA deviation: {worst['reduction']:.3e} (budget {REDUCTION_TOL:g})", file=out)
    print("check passed" if ok else "check FAILED", file=out)
    return ok


def cmd_check(args) -> int:
    explicit = any(getattr(args, d, None) is not None for d in FLAG_KEYS) or args.config
    if explicit:
        cfg = load_config(args)
        fs = cfg.field_state()
        cases = [(fs, cfg.atom_state(), cfg.model_config(), (1.0, 5.0, 20.0))]
    else:
        cases = check_grid(full=args.full)
    if args.dt is not None and not args.dt > 0:
        raise ConfigError(f"--dt must be positive, got {args.dt!r}")
    return EXIT_OK if run_check(cases, args.dt) else EXIT_CHECK_FAILED


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON configuration file")
    p.add_argument("--state", choices=STATE_KINDS)
    p.add_argument("--alpha", type=float)
    p.add_argument("--k", type=int, help="photons per level step for --state kphoton")
    p.add_argument("--theta", type=float, help="radians")
    p.add_argument("--phi", type=float, help="radians")
    p.add_argument("--m", type=int, help="photons per atomic transition")
    p.add_argument("--approach", choices=("eha", "meha"))
    p.add_argument("--beta1", type=float)
    p.add_argument("--beta2", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--nmax", type=_nmax, help="Fock cutoff or 'auto'")
    p.add_argument("--out", help="output path (default: stdout)")


def _nmax(text: str):
    if text == "auto":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--nmax must be an integer or 'auto', got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multijcm", description="Multiphoton Jaynes-Cummings fluctuation factors."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="sweep observables over scaled time and write CSV")
    _add_common(sim)
    sim.add_argument("--t-max", dest="t_max", type=float)
    sim.add_argument("--steps", type=int)
    sim.add_argument("--observables", help="comma-separated names: " + ",".join(OBSERVABLES))
    sim.set_defaults(func=cmd_simulate)

    pred = sub.add_parser("predict", help="analytic revival times, f factors, trapping")
    _add_common(pred)
    pred.set_defaults(func=cmd_predict)

    chk = sub.add_parser("check", help="compare closed forms with the brute-force integrator")
    _add_common(chk)
    chk.add_argument("--dt", type=float, help="override the integrator step")
    chk.add_argument("--full", action="store_true", help="run the full acceptance grid")
    chk.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage, which matches EXIT_CONFIG
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NumericBudgetError as exc:
        print(f"multijcm: numeric budget violated: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, ZeroDivisionError) as exc:
        print(f"multijcm: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except JCMError as exc:
        print(f"multijcm: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
