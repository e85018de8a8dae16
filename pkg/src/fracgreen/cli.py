"""``fracgreen`` command line: ``solve``, ``validate`` and ``mlf``.

Exit codes: 0 success, 1 validation failure, 2 bad input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import platform
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import InputError, NumericalError
from .kernels import GROWTH_LIMIT, R_MAX, STOP_RUN
from .mlf import DEFAULT_TOL, MLArgs, mlf_eval
from . import mlf as _mlf
from . import spectral as _sp
from .spectral import Grid1D, InitialData, ProblemSpec, SourceTerm, solve
from .symbol import SpaceOperator

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


class ConfigError(InputError):
    """Malformed configuration file."""


# ---------------------------------------------------------------------------
# configuration parsing


def _profile(spec, x: np.ndarray, what: str) -> np.ndarray:
    """Spatial profile on the grid from a JSON description."""
    kind = spec.get("kind")
    if kind == "gaussian":
        a = float(spec.get("amplitude", 1.0))
        c = float(spec.get("center", 0.0))
        w = float(spec.get("width", 1.0))
        if w <= 0:
            raise ConfigError(f"{what}: gaussian width must be > 0")
        return a * np.exp(-(((x - c) / w) ** 2))
    if kind == "samples":
        vals = np.asarray(spec.get("values"), dtype=float)
        if vals.shape != x.shape:
            raise ConfigError(f"{what}: expected {x.size} samples, got {vals.size}")
        return vals
    raise ConfigError(f"{what}: unknown profile kind {kind!r}")


def _initial(spec, grid: Grid1D, what: str) -> InitialData:
    if spec is None:
        return InitialData.zero()
    kind = spec.get("kind", "zero")
    if kind == "zero":
        return InitialData.zero()
    if kind == "delta":
        return InitialData.delta()
    return InitialData.sampled(_profile(spec, grid.x, what))


def _time_profile(spec):
    kind = spec.get("kind", "constant")
    amp = float(spec.get("amplitude", 1.0))
    if kind == "constant":
        return lambda s: amp * np.ones_like(np.asarray(s, dtype=float))
    if kind == "exp":
        rate = float(spec.get("rate", 1.0))
        return lambda s: amp * np.exp(-rate * np.asarray(s, dtype=float))
    if kind == "power":
        p = float(spec.get("power", 1.0))
        if p < 0:
            raise ConfigError("source time profile: power must be >= 0")
        return lambda s: amp * np.asarray(s, dtype=float) ** p
    raise ConfigError(f"source time profile: unknown kind {kind!r}")


def _source(spec, grid: Grid1D) -> SourceTerm:
    if spec is None or spec.get("kind", "none") == "none":
        return SourceTerm.none()
    kind = spec["kind"]
    if kind == "separable":
        return SourceTerm.separable(_profile(spec.get("profile", {}), grid.x, "source profile"), _time_profile(spec.get("time", {})))
    if kind == "sampled":
        return SourceTerm.sampled(spec.get("values"), spec.get("times"))
    raise ConfigError(f"source: unknown kind {kind!r}")


def load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def build_problem(cfg: dict):
    """Turn a parsed config into ``(mode, spec, grid, times, tol)``."""
    for key in ("alpha", "terms", "grid", "times"):
        if key not in cfg:
            raise ConfigError(f"config is missing {key!r}")
    g = cfg["grid"]
    try:
        grid = Grid1D(float(g["x_min"]), float(g["x_max"]), int(g["n"]))
    except KeyError as exc:
        raise ConfigError(f"grid is missing {exc.args[0]!r}") from None
    times = [float(t) for t in cfg["times"]]
    if not times or any(not (math.isfinite(t) and t > 0) for t in times):
        raise ConfigError("times must be a non-empty list of positive numbers")
    lam = float(cfg.get("lambda", 0.0))
    beta = cfg.get("beta")
    mode = cfg.get("mode")
    alpha = float(cfg["alpha"])
    if mode is None:
        mode = "theorem2" if lam != 0.0 else ("corollary2" if alpha <= 1.0 else "theorem1")
    init = cfg.get("initial", {})
    spec = ProblemSpec(
        alpha=alpha,
        operator=SpaceOperator(cfg["terms"]),
        lam=lam,
        beta=None if beta is None else float(beta),
        init_f=_initial(init.get("f"), grid, "initial f"),
        init_g=_initial(init.get("g"), grid, "initial g"),
        init_f2=_initial(init.get("f2"), grid, "initial f2"),
        init_g2=_initial(init.get("g2"), grid, "initial g2"),
        source=_source(cfg.get("source"), grid),
    )
    tol = float(cfg.get("tol", DEFAULT_TOL))
    if not 0 < tol < 1:
        raise ConfigError(f"tol must lie in (0, 1), got {tol}")
    return mode, spec, grid, times, tol


def thread_count() -> int:
    raw = os.environ.get("FRACGREEN_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"FRACGREEN_THREADS must be an integer, got {raw!r}") from None
    return n if n > 0 else (os.cpu_count() or 1)


def _write_csv(path: Path, sol) -> None:
    imag = sol.imag if sol.imag is not None else np.zeros_like(sol.values)
    lines = ["x,N,imag_residual"]
    lines += [f"{x:.17g},{v:.17g},{r:.17g}" for x, v, r in zip(sol.x, sol.values, imag)]
    path.write_bytes(("\n".join(lines) + "\n").encode("ascii"))


def _knobs() -> dict:
    return {
        "edge_decay": _sp.EDGE_DECAY,
        "realness_tol": _sp.REALNESS_TOL,
        "gl_nodes": _sp.GL_NODES,
        "max_panels": _sp.MAX_PANELS,
        "r_max": R_MAX,
        "growth_limit": GROWTH_LIMIT,
        "stop_run": STOP_RUN,
        "mlf_series_radius": _mlf.SERIES_RADIUS,
        "mlf_term_cap": _mlf.TERM_CAP,
        "mlf_asymptotic_min_radius": _mlf.ASYMPTOTIC_MIN_RADIUS,
    }


def run_solve(config_path: str) -> int:
    cfg = load_config(config_path)
    mode, spec, grid, times, tol = build_problem(cfg)
    out = Path(cfg.get("output_path", "fracgreen_out"))
    threads = thread_count()

    def one(t):
        return solve(mode, spec, t, grid, tol)

    if threads > 1 and len(times) > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
            sols = list(pool.map(one, times))
    else:
        sols = [one(t) for t in times]

    out.mkdir(parents=True, exist_ok=True)
    files = []
    for i, (t, sol) in enumerate(zip(times, sols)):
        name = f"N_t{i:03d}.csv"
        _write_csv(out / name, sol)
        dx_sum, zero_mode = _sp.mass_identity(sol)
        files.append({"file": name, "t": t, "max_imag_residual": sol.max_imag_residual, "dx_sum_N": dx_sum, "sqrt2pi_Nstar0": zero_mode})
    manifest = {
        "fracgreen_version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "mode": mode,
        "config": cfg,
        "grid": {"x_min": grid.x_min, "x_max": grid.x_max, "n": grid.n, "dx": grid.dx, "dk": grid.dk},
        "tol": tol,
        "threads": threads,
        "knobs": _knobs(),
        "outputs": files,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    for f in files:
        print(f"t={f['t']:g}: {out / f['file']}  (max |Im N| = {f['max_imag_residual']:.3e})")
    return EXIT_OK


def run_validate(suite: str, output) -> int:
    from .validation import SUITES, run_suite, write_tables

    if suite not in SUITES:
        print(f"error: unknown suite {suite!r}; expected one of {', '.join(SUITES)}", file=sys.stderr)
        return EXIT_INPUT
    report = run_suite(suite)
    print(report.format())
    if output:
        for p in write_tables(report, output):
            print(f"wrote {p}")
    return EXIT_OK if report.passed else EXIT_FAIL


def run_mlf(alpha, beta, delta, re, im, tol) -> int:
    res = mlf_eval(MLArgs(alpha, beta, delta, complex(re, im)), tol)
    v = res.value
    print(f"E = {v.real:.17g} {'+' if v.imag >= 0 else '-'} {abs(v.imag):.17g}i")
    print(f"est_abs_error = {res.est_abs_error:.3e}")
    print(f"method = {res.method}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fracgreen", description="Green functions of space-time fractional diffusion-wave equations.")
    p.add_argument("--version", action="version", version=f"fracgreen {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve a problem described by a JSON config")
    s.add_argument("config")

    v = sub.add_parser("validate", help="run a validation suite")
    v.add_argument("suite", help="mlf, kernels, heat, wave, fd-cross or sumudu")
    v.add_argument("--output", help="directory for comparison CSVs")

    m = sub.add_parser("mlf", help="evaluate the three-parameter Mittag-Leffler function")
    m.add_argument("--alpha", type=float, required=True)
    m.add_argument("--beta", type=float, required=True)
    m.add_argument("--delta", type=float, default=1.0)
    m.add_argument("--re", type=float, required=True)
    m.add_argument("--im", type=float, default=0.0)
    m.add_argument("--tol", type=float, default=DEFAULT_TOL)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return run_solve(args.config)
        if args.command == "validate":
            return run_validate(args.suite, args.output)
        return run_mlf(args.alpha, args.beta, args.delta, args.re, args.im, args.tol)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (KeyError, TypeError, ValueError) as exc:
        # malformed config values that slipped past the explicit checks
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
