"""Batch front-end: configuration, dispatch and report serialization.

A run is described by a YAML mapping, for example::

    command: verify
    family: harmonic(16)
    p: 2
    alpha: 1
    levels: 1..3
    process:
      kind: mean
      window: vp

Every command produces rows with a fixed column set (``COLUMNS``). Reports
are CSV (config echoed as ``# key: value`` lines above the header) or a JSON
array with the echo in a ``<out>.config.json`` sidecar.

Exit status: 0 when no row is flagged, 1 when some row is flagged or a
sharpness verdict fails, 2 on I/O failure, 3 on a configuration error.
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .best_approx import ConvexSolveSettings, best_trig, spline_from_truncated, unit_grid
from .errors import ConfigurationError, SmoothnessLabError, SolverError
from .families import Family, parse_family
from .harness import EXTRA_LEVELS, ProcessSpec, spline_verify, verify_two_sided
from .multipliers import apply_mean, parse_window
from .sharpness import SHARPNESS_KINDS, sharpness_experiment
from .signal import Grid, NormExponent, as_exponent, grid_for, norm, synthesize
from .smoothness import (ModulusSpec, PrecisionWarning, besov_seminorm, fractional_difference,
                         modulus_argmax, realization)

COMMANDS = ("modulus", "means", "best-approx", "realization", "besov", "verify", "sharpness",
            "spline-verify")
EXIT_OK, EXIT_FLAGGED, EXIT_IO, EXIT_CONFIG = 0, 1, 2, 3
DEFAULT_N = 256
DEFAULT_M = 64

_REPORT = ["n", "left", "middle", "right", "ratio_left_middle", "ratio_middle_right", "tau",
           "theta", "middle_kind", "process", "xi", "K_max", "tail_mode", "tail_left",
           "tail_right", "flags"]
COLUMNS = {
    "modulus": ["family", "alpha", "p", "delta", "value", "argmax_h", "M", "mode", "flags"],
    "means": ["family", "window", "p", "n", "order", "norm_f", "norm_mean", "error", "flags"],
    "best-approx": ["family", "p", "n", "degree", "error", "partial_sum_error", "iterations",
                    "grad_norm", "converged", "flags"],
    "realization": ["family", "alpha", "p", "n", "approx", "derivative", "total", "flags"],
    "besov": ["family", "s", "q", "p", "J", "source", "value", "flags"],
    "verify": ["family"] + _REPORT,
    "sharpness": ["kind", "params", "statistic", "expected", "tolerance", "passed", "flags"],
    "spline-verify": ["function", "r"] + _REPORT,
}


# configuration ---------------------------------------------------------------

def parse_levels(text) -> tuple:
    """``'a..b'`` (inclusive), a single integer or a list of integers."""
    if isinstance(text, int):
        return (text,)
    if isinstance(text, (list, tuple)):
        return tuple(int(v) for v in text)
    s = str(text).strip()
    try:
        if ".." in s:
            a, b = s.split("..", 1)
            a, b = int(a), int(b)
            if b < a:
                raise ValueError
            return tuple(range(a, b + 1))
        return (int(s),)
    except ValueError:
        raise ConfigurationError(f"expected 'a..b' with a <= b, got {text!r}", "levels") from None


def _parse_p(value, key="p") -> float:
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "∞"):
        return math.inf
    try:
        p = float(value)
        NormExponent(p)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad exponent {value!r}", key) from exc
    return p


@dataclass
class RunConfig:
    """Validated run description; every field has a concrete value after loading."""

    command: str
    family: object = None
    function: str = ""
    p: float = 2.0
    alpha: float = 1.0
    r: int = 2
    delta: float | None = None
    levels: tuple = (1, 2, 3, 4, 5, 6)
    N: int = DEFAULT_N
    M: int = DEFAULT_M
    mode: str = "symbol"
    nu_max: int = 200
    eps_binom: float = 1e-8
    window: str = "vp"
    process: dict = field(default_factory=lambda: {"kind": "mean", "window": "vp"})
    middle: str = "modulus"
    xi: str = "none"
    besov: dict = field(default_factory=lambda: {"s": 0.5, "q": 2.0, "J": 6, "source": "modulus"})
    sharpness: dict = field(default_factory=lambda: {"kind": "counterexample-endpoint"})
    solver: dict = field(default_factory=dict)
    seed: int = 0
    out: str = ""
    format: str = "csv"

    def family_obj(self) -> Family:
        return parse_family(self.family, "family")

    def settings(self) -> ConvexSolveSettings:
        try:
            return ConvexSolveSettings(**self.solver)
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(str(exc), "solver") from exc

    def process_spec(self) -> ProcessSpec:
        proc = dict(self.process)
        kind = proc.pop("kind", "mean")
        window = parse_window(proc.pop("window")) if "window" in proc else None
        pb = _parse_p(proc.pop("p"), "process") if "p" in proc else None
        if proc:
            raise ConfigurationError(f"unknown keys {sorted(proc)}", "process")
        try:
            return ProcessSpec(kind, pb, window, self.alpha, settings=self.settings())
        except ValueError as exc:
            raise ConfigurationError(str(exc), "process") from exc

    def echo(self) -> list:
        """``(key, value)`` pairs of every setting, in field order."""
        out = []
        for f in fields(self):
            if f.name in ("out",):
                continue
            v = getattr(self, f.name)
            if isinstance(v, tuple) and f.name == "levels":
                v = f"{v[0]}..{v[-1]}" if list(v) == list(range(v[0], v[-1] + 1)) else list(v)
            out.append((f.name, _echo_value(v)))
        return out


def _echo_value(v) -> str:
    if isinstance(v, float):
        return _fmt(v)
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, default=str)
    return "" if v is None else str(v)


_ALIASES = {"order": "alpha", "grid": "N", "window_kind": "window"}


def load_config(source, overrides: dict | None = None) -> RunConfig:
    """Parse and validate a configuration.

    Parameters
    ----------
    source : str, Path or dict
        A path to a YAML file, inline YAML text, or an already-parsed mapping.
    overrides : dict, optional
        Values from command-line flags; they replace file values.

    Raises
    ------
    ConfigurationError
        Schema or invariant violations; the message names the offending key.
    """
    if isinstance(source, dict):
        raw = dict(source)
    else:
        text = source
        if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source
                                        and ":" not in source):
            text = Path(source).read_text()
        try:
            raw = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigurationError(f"malformed YAML: {exc}", "config") from exc
        if not isinstance(raw, dict):
            raise ConfigurationError("top level must be a mapping", "config")
    raw = {_ALIASES.get(k, k): v for k, v in raw.items()}
    for k, v in (overrides or {}).items():
        if v is not None:
            raw[k] = v
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigurationError(f"unknown key (known: {', '.join(sorted(known))})", unknown[0])
    if raw.get("command") not in COMMANDS:
        raise ConfigurationError(f"expected one of {', '.join(COMMANDS)}, got "
                                 f"{raw.get('command')!r}", "command")
    cfg = RunConfig(raw.pop("command"))
    n_given = "N" in raw
    for k, v in raw.items():
        setattr(cfg, k, v)
    _validate(cfg, n_given)
    return cfg


def _validate(cfg: RunConfig, n_given: bool) -> None:
    cfg.p = _parse_p(cfg.p)
    try:
        cfg.alpha = float(cfg.alpha)
        if not cfg.alpha > 0:
            raise ValueError
    except (TypeError, ValueError):
        raise ConfigurationError("must be a positive number", "alpha") from None
    cfg.levels = parse_levels(cfg.levels)
    if min(cfg.levels) < 0:
        raise ConfigurationError("levels must be nonnegative", "levels")
    for key in ("M", "nu_max", "seed", "r"):
        try:
            setattr(cfg, key, int(getattr(cfg, key)))
        except (TypeError, ValueError):
            raise ConfigurationError("must be an integer", key) from None
    if cfg.M < 16:
        raise ConfigurationError("need M >= 16", "M")
    if cfg.r < 1:
        raise ConfigurationError("need r >= 1", "r")
    if cfg.format not in ("csv", "json"):
        raise ConfigurationError("expected csv or json", "format")
    if cfg.mode not in ("symbol", "binomial"):
        raise ConfigurationError("expected symbol or binomial", "mode")
    if cfg.middle not in ("modulus", "realization"):
        raise ConfigurationError("expected modulus or realization", "middle")
    if cfg.xi not in ("none", "log"):
        raise ConfigurationError("expected none or log", "xi")
    if cfg.delta is not None:
        try:
            cfg.delta = float(cfg.delta)
            if not cfg.delta > 0:
                raise ValueError
        except (TypeError, ValueError):
            raise ConfigurationError("must be a positive number", "delta") from None
    for key in ("process", "solver", "besov", "sharpness"):
        if not isinstance(getattr(cfg, key), dict):
            raise ConfigurationError("expected a mapping", key)
    parse_window(cfg.window)
    if isinstance(cfg.process.get("window"), str) or isinstance(cfg.process.get("window"), dict):
        try:
            parse_window(cfg.process["window"])
        except ConfigurationError as exc:
            raise ConfigurationError(str(exc).split(": ", 1)[-1], "window") from None
    cfg.settings()
    # the process is fully checked here, before any compute
    if cfg.command in ("verify",):
        cfg.process_spec()
    if cfg.command == "sharpness":
        if cfg.sharpness.get("kind") not in SHARPNESS_KINDS:
            raise ConfigurationError(f"expected one of {', '.join(SHARPNESS_KINDS)}", "sharpness")
        return
    if cfg.command == "spline-verify":
        _spline_function(cfg)
        if cfg.p in (1.0, math.inf):
            raise ConfigurationError("spline-verify needs 1 < p < inf", "p")
        need = 8 * 2 ** (max(cfg.levels) + EXTRA_LEVELS)
        if not n_given:
            cfg.N = max(DEFAULT_N, need)
        _check_grid(cfg.N)
        if cfg.N < need:
            raise ConfigurationError(f"spline-verify with these levels needs N >= {need}", "N")
        return
    if cfg.family is None:
        raise ConfigurationError("a test-function family is required", "family")
    fam = _seeded_family(cfg)
    top = fam.spectrum().support()
    need = grid_for(4 * top if cfg.process.get("kind") == "interp-vp" else top).N
    if cfg.command in ("means", "best-approx", "realization"):
        need = max(need, grid_for(2 ** max(cfg.levels)).N)
    if not n_given:
        cfg.N = max(DEFAULT_N, need)
    _check_grid(cfg.N)
    if cfg.N < need:
        raise ConfigurationError(f"N={cfg.N} too small for degree {top} and these levels; "
                                 f"need N >= {need}", "N")
    if cfg.command == "best-approx" and cfg.p in (1.0, math.inf):
        raise ConfigurationError("best-approx needs 1 < p < inf", "p")
    if cfg.command == "modulus" and cfg.delta is None and not cfg.levels:
        raise ConfigurationError("give delta or levels", "delta")


def _check_grid(N) -> None:
    try:
        Grid(int(N))
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(str(exc), "N") from None
    if int(N) != N:
        raise ConfigurationError("must be an integer power of two", "N")


def _seeded_family(cfg: RunConfig) -> Family:
    fam = cfg.family
    # random families without an explicit seed take the run seed
    if isinstance(fam, str) and fam.strip().startswith("random") and "seed" not in fam:
        fam = fam.rstrip().rstrip(")") + f", seed={cfg.seed})" if "(" in fam else \
            f"random(K=64, seed={cfg.seed})"
    elif isinstance(fam, dict) and fam.get("id") == "random" and "seed" not in fam:
        fam = dict(fam, seed=cfg.seed)
    return parse_family(fam, "family")


def _spline_function(cfg: RunConfig):
    """``abs(c)``, ``power(beta)``, ``sine(k)``, ``tanh(s, c)`` or ``random-spline(n)``."""
    text = str(cfg.function or "").strip()
    try:
        node = ast.parse(text, mode="eval").body
    except SyntaxError:
        raise ConfigurationError(f"cannot parse {text!r}", "function") from None
    if isinstance(node, ast.Name):
        name, args = node.id, []
    elif isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        name = node.func.id
        try:
            args = [ast.literal_eval(a) for a in node.args]
        except ValueError:
            raise ConfigurationError(f"bad arguments in {text!r}", "function") from None
    else:
        raise ConfigurationError(f"cannot parse {text!r}", "function")
    try:
        if name == "abs":
            c = float(args[0]) if args else 1.0 / 3.0
            return lambda x: np.abs(x - c)
        if name == "power":
            b = float(args[0]) if args else 1.5
            return lambda x: x**b
        if name == "sine":
            k = float(args[0]) if args else 1.0
            return lambda x: np.sin(2 * math.pi * k * x)
        if name == "tanh":
            s = float(args[0]) if args else 20.0
            c = float(args[1]) if len(args) > 1 else 0.5
            return lambda x: np.tanh(s * (x - c))
        if name == "random":
            n = int(args[0]) if args else 8
            rng = np.random.default_rng(cfg.seed)
            S = spline_from_truncated(rng.normal(size=cfg.r), rng.normal(size=n - 1), cfg.r, n)
            return S.evaluate_truncated
    except (TypeError, ValueError, IndexError):
        raise ConfigurationError(f"bad arguments in {text!r}", "function") from None
    raise ConfigurationError(f"unknown function {name!r}; known: abs, power, sine, tanh, random",
                             "function")


# commands --------------------------------------------------------------------

def _row(cols, **vals) -> dict:
    return {c: vals.get(c, "") for c in cols}


def _cmd_modulus(cfg: RunConfig) -> list:
    f = _seeded_family(cfg)
    spec, grid = f.spectrum(), Grid(cfg.N)
    deltas = [cfg.delta] if cfg.delta is not None else [2.0**-n for n in cfg.levels]
    rows = []
    for d in deltas:
        flags = []
        if cfg.mode == "binomial":
            # evaluate through the truncated binomial expansion at the maximizing shift
            val, h = modulus_argmax(spec, cfg.alpha, d, cfg.p, cfg.M, grid)
            with warnings.catch_warnings(record=True) as w:
                warnings.simplefilter("always", PrecisionWarning)
                diff = fractional_difference(spec, h, cfg.alpha, "binomial", cfg.nu_max,
                                             cfg.eps_binom)
            if w:
                flags.append("binomial-tail")
            val = norm(diff, cfg.p, grid)
        else:
            ModulusSpec(cfg.alpha, as_exponent(cfg.p), cfg.M)
            val, h = modulus_argmax(spec, cfg.alpha, d, cfg.p, cfg.M, grid)
        rows.append(_row(COLUMNS["modulus"], family=f.describe(), alpha=cfg.alpha, p=cfg.p,
                         delta=d, value=val, argmax_h=h, M=cfg.M, mode=cfg.mode,
                         flags=";".join(flags)))
    return rows


def _cmd_means(cfg: RunConfig) -> list:
    f = _seeded_family(cfg)
    spec, grid = f.spectrum(), Grid(cfg.N)
    w = parse_window(cfg.window)
    nf = norm(spec, cfg.p, grid)
    rows = []
    for n in cfg.levels:
        m = apply_mean(spec, w, 2**n)
        rows.append(_row(COLUMNS["means"], family=f.describe(), window=w.describe(), p=cfg.p,
                         n=n, order=2**n, norm_f=nf, norm_mean=norm(m, cfg.p, grid),
                         error=norm(spec - m, cfg.p, grid)))
    return rows


def _cmd_best(cfg: RunConfig) -> list:
    f = _seeded_family(cfg)
    grid = Grid(cfg.N)
    sig = synthesize(f.spectrum(), grid)
    st = cfg.settings()
    rows = []
    for n in cfg.levels:
        flags = ""
        try:
            fit = best_trig(sig, 2**n, cfg.p, st)
        except SolverError as exc:
            fit, flags = exc.best, "solver-error"
        rows.append(_row(COLUMNS["best-approx"], family=f.describe(), p=cfg.p, n=n, degree=2**n,
                         error=fit.error, partial_sum_error=fit.partial_sum_error,
                         iterations=fit.iterations, grad_norm=fit.grad_norm,
                         converged=fit.converged, flags=flags))
    return rows


def _cmd_realization(cfg: RunConfig) -> list:
    f = _seeded_family(cfg)
    spec, grid = f.spectrum(), Grid(cfg.N)
    rows = []
    for n in cfg.levels:
        res = realization(spec, cfg.alpha, n, cfg.p, grid=grid)
        flags = "endpoint-realization" if as_exponent(cfg.p).is_endpoint else ""
        rows.append(_row(COLUMNS["realization"], family=f.describe(), alpha=cfg.alpha, p=cfg.p,
                         n=n, approx=res.approx, derivative=res.derivative, total=res.total,
                         flags=flags))
    return rows


def _cmd_besov(cfg: RunConfig) -> list:
    f = _seeded_family(cfg)
    b = dict(cfg.besov)
    try:
        s, q, J = float(b.pop("s", 0.5)), _parse_p(b.pop("q", 2.0), "besov"), int(b.pop("J", 6))
        source = str(b.pop("source", "modulus"))
        window = parse_window(b.pop("window")) if "window" in b else None
        if b:
            raise ConfigurationError(f"unknown keys {sorted(b)}", "besov")
        kw = {"alpha": cfg.alpha, "grid": Grid(cfg.N), "settings": cfg.settings()}
        if window is not None:
            kw["window"] = window
        val = besov_seminorm(f.spectrum(), s, q, cfg.p, J, source, **kw)
    except ConfigurationError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(str(exc), "besov") from exc
    return [_row(COLUMNS["besov"], family=f.describe(), s=s, q=q, p=cfg.p, J=J, source=source,
                 value=val)]


def _cmd_verify(cfg: RunConfig) -> list:
    f = _seeded_family(cfg)
    reps = verify_two_sided(f.spectrum(), cfg.p, cfg.alpha, cfg.levels, cfg.process_spec(),
                            cfg.middle, cfg.xi, cfg.M, Grid(cfg.N))
    return [dict({"family": f.describe()}, **r.as_row()) for r in reps]


def _cmd_sharpness(cfg: RunConfig) -> list:
    params = dict(cfg.sharpness)
    kind = params.pop("kind")
    try:
        v = sharpness_experiment(kind, **params)
    except TypeError as exc:
        raise ConfigurationError(str(exc), "sharpness") from exc
    flags = list(v.flags) + ([] if v.passed else ["verdict-failed"])
    return [_row(COLUMNS["sharpness"], kind=kind,
                 params=json.dumps(v.params, sort_keys=True, default=str),
                 statistic=v.statistic, expected=v.expected, tolerance=v.tolerance,
                 passed=v.passed, flags=";".join(flags))]


def _cmd_spline(cfg: RunConfig) -> list:
    fn = _spline_function(cfg)
    values = fn(unit_grid(cfg.N))
    reps = spline_verify(values, cfg.r, cfg.p, cfg.levels, settings=cfg.settings(), M=cfg.M)
    return [dict({"function": str(cfg.function), "r": cfg.r}, **r.as_row()) for r in reps]


_DISPATCH = {
    "modulus": _cmd_modulus, "means": _cmd_means, "best-approx": _cmd_best,
    "realization": _cmd_realization, "besov": _cmd_besov, "verify": _cmd_verify,
    "sharpness": _cmd_sharpness, "spline-verify": _cmd_spline,
}


def run_command(cfg: RunConfig) -> tuple:
    """Run one command; returns ``(rows, exit_status)``.

    Library errors raised during compute become a single flagged row.
    """
    cols = COLUMNS[cfg.command]
    try:
        rows = _DISPATCH[cfg.command](cfg)
    except ConfigurationError:
        raise
    except SmoothnessLabError as exc:
        rows = [_row(cols, flags=f"error:{type(exc).__name__}:{exc}")]
    rows = [{c: r.get(c, "") for c in cols} for r in rows]
    flagged = any(r.get("flags") for r in rows)
    return rows, EXIT_FLAGGED if flagged else EXIT_OK


# serialization -----------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if v == 0.0:
            return "0"
        return f"{v:.12g}"
    return str(v)


def _json_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        s = _fmt(v)
        return json.dumps(s) if s in ("nan", "inf", "-inf") else s
    return json.dumps(str(v), ensure_ascii=False)


def render_report(rows: list, fmt: str, columns: list | None = None, echo: list | None = None
                  ) -> str:
    """Serialize rows to CSV or JSON text (deterministic)."""
    if columns is None:
        columns = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        for k, v in echo or []:
            buf.write(f"# {k}: {v}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(r.get(c, "")) for c in columns])
        return buf.getvalue()
    if fmt == "json":
        items = ["{" + ", ".join(f"{json.dumps(c)}: {_json_value(r.get(c, ''))}" for c in columns)
                 + "}" for r in rows]
        return "[\n" + ",\n".join("  " + it for it in items) + ("\n" if items else "") + "]\n"
    raise ConfigurationError(f"unknown format {fmt!r}", "format")


def write_report(rows: list, fmt: str, path, columns: list | None = None,
                 echo: list | None = None) -> None:
    """Write a report; JSON echoes the configuration to ``<path>.config.json``.

    Raises
    ------
    OSError
        On I/O failure (the CLI maps it to exit status 2).
    """
    text = render_report(rows, fmt, columns, echo)
    path = Path(path)
    path.write_text(text)
    if fmt == "json" and echo is not None:
        side = path.with_name(path.name + ".config.json")
        side.write_text(json.dumps(dict(echo), indent=2, sort_keys=False) + "\n")


# entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="smoothness-lab",
                                 description="Smoothness, approximation and two-sided "
                                             "inequality experiments on the torus.")
    ap.add_argument("--config", required=True, help="YAML run configuration")
    ap.add_argument("--out", help="output path (default: standard output)")
    ap.add_argument("--format", choices=("csv", "json"), help="report format (default csv)")
    ap.add_argument("--seed", type=int, help="seed for random families")
    ap.add_argument("--levels", help="level range a..b")
    ap.add_argument("--grid", type=int, help="grid size N (power of two)")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {"out": args.out, "format": args.format, "seed": args.seed,
                 "levels": args.levels, "N": args.grid}
    try:
        cfg = load_config(Path(args.config), overrides)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        rows, status = run_command(cfg)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    echo = cfg.echo()
    cols = COLUMNS[cfg.command]
    try:
        if cfg.out:
            write_report(rows, cfg.format, cfg.out, cols, echo)
        else:
            sys.stdout.write(render_report(rows, cfg.format, cols,
                                           echo if cfg.format == "csv" else None))
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_IO
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

__all__ = ["RunConfig", "load_config", "run_command", "write_report", "render_report", "main",
           "parse_levels", "COMMANDS", "COLUMNS"]
