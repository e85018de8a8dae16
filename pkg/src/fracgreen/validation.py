"""Validation scenarios shared by the command line and the test-suite.

Each scenario returns a :class:`SuiteReport` holding one :class:`CaseResult`
per checked quantity. ``run_suite`` dispatches on the suite names accepted
by ``fracgreen validate``.
"""

from __future__ import annotations

import csv
import dataclasses
import math
import os
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .kernels import kernel_single, kernel_two_term
from .mlf import MLArgs, mlf_eval
from .oracle import FDConfig, dalembert, gl_fd_solver, heat_kernel, mlf_bigfloat, sumudu_numeric
from .spectral import (
    Grid1D,
    InitialData,
    ProblemSpec,
    SolutionField,
    SourceTerm,
    expected_mass,
    mass_identity,
    solve,
    solve_corollary1,
    solve_corollary2,
    solve_theorem1,
    solve_theorem2,
)
from .symbol import RieszFellerTerm, SpaceOperator

SUITES = ("mlf", "kernels", "heat", "wave", "fd-cross", "sumudu")


@dataclass
class CaseResult:
    name: str
    value: float
    threshold: float
    passed: bool
    detail: str = ""
    below: bool = True

    @property
    def usage(self) -> float:
        """How much of the allowed margin is used; 1 means at the threshold."""
        if self.below:
            return self.value / self.threshold
        return self.threshold / self.value if self.value > 0 else math.inf

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        rel = "<" if self.below else ">="
        return f"{tag}  {self.name}: {self.value:.3e} (need {rel} {self.threshold:.1e}){extra}"


@dataclass
class SuiteReport:
    suite: str
    cases: list = field(default_factory=list)
    elapsed: float = 0.0
    tables: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.cases) and all(c.passed for c in self.cases)

    def check(self, name: str, value: float, threshold: float, detail: str = "", below: bool = True) -> CaseResult:
        ok = bool(value < threshold) if below else bool(value >= threshold)
        c = CaseResult(name, float(value), float(threshold), ok, detail, below)
        self.cases.append(c)
        return c

    def format(self) -> str:
        lines = [c.line() for c in self.cases]
        status = "PASS" if self.passed else "FAIL"
        lines.append(f"{status}  suite {self.suite} ({len(self.cases)} checks, {self.elapsed:.1f} s)")
        return "\n".join(lines)

    def worst(self, prefix: str) -> float:
        vals = [c.value for c in self.cases if c.name.startswith(prefix)]
        return max(vals) if vals else math.nan


def _gauss(x, c=0.0, w=1.0):
    return np.exp(-(((x - c) / w) ** 2))


def _invariants(report: SuiteReport, tag: str, sol: SolutionField, spec: ProblemSpec) -> None:
    """Realness and zero-mode mass checks for one spectral run."""
    peak = float(np.max(np.abs(sol.values)))
    report.check(f"{tag} realness", sol.max_imag_residual / max(peak, 1e-300), 1e-6, "max|Im N| / max|N|")
    dx_sum, _ = mass_identity(sol)
    report.check(f"{tag} mass", abs(dx_sum - expected_mass(spec, sol.t, sol.grid)), 1e-6, "|dx sum N - closed form|")


def _doubling(report: SuiteReport, tag: str, mode: str, spec_on: Callable[[Grid1D], ProblemSpec], grid: Grid1D, t: float):
    base = solve(mode, spec_on(grid), t, grid)
    big_grid = grid.doubled()
    big = solve(mode, spec_on(big_grid), t, big_grid)
    off = grid.n // 2
    change = float(np.max(np.abs(big.values[off : off + grid.n] - base.values)))
    report.check(f"{tag} grid doubling", change, 1e-6, f"n {grid.n} -> {big_grid.n}")


def _field_table(x, computed, reference):
    return {
        "header": ["x", "computed", "reference", "difference"],
        "rows": np.column_stack([x, computed, reference, computed - reference]).tolist(),
    }


# ---------------------------------------------------------------------------
# field scenarios


def heat_scenario(grid: Optional[Grid1D] = None, doubling: bool = True) -> SuiteReport:
    """Sub-diffusive path at alpha = 1 with a second-order operator: the Gaussian heat kernel."""
    rep = SuiteReport("heat")
    grid = grid or Grid1D(-30.0, 30.0, 2048)
    op = SpaceOperator([RieszFellerTerm(1.0, 2.0, 0.0)])

    def spec_on(_g):
        return ProblemSpec(1.0, op, init_f=InitialData.delta())

    t0 = time.perf_counter()
    sol = solve_corollary2(spec_on(grid), 1.0, grid)
    runtime = time.perf_counter() - t0
    ref = heat_kernel(grid.x, 1.0)
    rep.check("heat max|N - heat kernel|", np.max(np.abs(sol.values - ref)), 1e-6)
    rep.check("heat runtime [s]", runtime, 5.0)
    _invariants(rep, "heat", sol, spec_on(grid))
    if doubling:
        _doubling(rep, "heat", "corollary2", spec_on, grid, 1.0)
    rep.tables["heat"] = _field_table(grid.x, sol.values, ref)
    rep.elapsed = time.perf_counter() - t0
    return rep


def wave_scenario(grid: Optional[Grid1D] = None, doubling: bool = True) -> SuiteReport:
    """alpha = 2 with a Gaussian velocity datum: d'Alembert translates."""
    rep = SuiteReport("wave")
    grid = grid or Grid1D(-20.0, 20.0, 1024)
    op = SpaceOperator([RieszFellerTerm(1.0, 2.0, 0.0)])

    def spec_on(g):
        return ProblemSpec(2.0, op, init_g=InitialData.from_function(_gauss, g))

    t0 = time.perf_counter()
    sol = solve_theorem1(spec_on(grid), 1.0, grid)
    runtime = time.perf_counter() - t0
    ref = dalembert(_gauss, grid.x, 1.0)
    rep.check("wave max|N - d'Alembert|", np.max(np.abs(sol.values - ref)), 1e-6)
    rep.check("wave runtime [s]", runtime, 5.0)
    _invariants(rep, "wave", sol, spec_on(grid))
    if doubling:
        _doubling(rep, "wave", "theorem1", spec_on, grid, 1.0)
    rep.tables["wave"] = _field_table(grid.x, sol.values, ref)
    rep.elapsed = time.perf_counter() - t0
    return rep


def cauchy_scenario(grid: Optional[Grid1D] = None, doubling: bool = True) -> SuiteReport:
    """alpha = 1, gamma = 1: the Cauchy density. Its algebraic tails need a wide periodic box."""
    rep = SuiteReport("cauchy")
    grid = grid or Grid1D(-1024.0, 1024.0, 32768)
    op = SpaceOperator([RieszFellerTerm(1.0, 1.0, 0.0)])

    def spec_on(_g):
        return ProblemSpec(1.0, op, init_f=InitialData.delta())

    t0 = time.perf_counter()
    sol = solve_corollary2(spec_on(grid), 1.0, grid)
    ref = 1.0 / (math.pi * (1.0 + grid.x**2))
    win = np.abs(grid.x) <= 15.0
    rep.check("cauchy max|N - 1/(pi(1+x^2))| on [-15,15]", np.max(np.abs(sol.values - ref)[win]), 1e-5)
    _invariants(rep, "cauchy", sol, spec_on(grid))
    if doubling:
        _doubling(rep, "cauchy", "corollary2", spec_on, grid, 1.0)
    rep.tables["cauchy"] = _field_table(grid.x[win], sol.values[win], ref[win])
    rep.elapsed = time.perf_counter() - t0
    return rep


def fd_cross_scenario(levels: tuple = (1, 2, 4)) -> SuiteReport:
    """Spectral solutions against the Grunwald-Letnikov marcher on the same grid.

    The gap is the time-discretization error of the marcher, so it should
    halve with dt.
    """
    rep = SuiteReport("fd-cross")
    t_end = 1.0
    grid = Grid1D(-20.0, 20.0, 128)
    op = SpaceOperator([RieszFellerTerm(1.0, 2.0, 0.0)])
    t_all = time.perf_counter()
    for alpha, mode in ((0.8, "corollary2"), (1.5, "theorem1")):
        for label, data in (("delta", InitialData.delta()), ("gaussian", InitialData.from_function(_gauss, grid))):
            t0 = time.perf_counter()
            spec = ProblemSpec(alpha, op, init_f=data)
            sol = solve(mode, spec, t_end, grid)
            tag = f"fd alpha={alpha} {label}"
            _invariants(rep, tag, sol, spec)
            cfg0 = FDConfig(grid.n, 1, 1.0, grid.x_min, grid.x_max, alpha, op)
            # twice the finest stable step count keeps the top modes well damped
            dt_max = (2.0**alpha / cfg0.sigma().max()) ** (1.0 / alpha)
            nt0 = max(200, 2 * math.ceil(t_end / dt_max))
            gaps = []
            for lv in levels:
                nt = nt0 * lv
                fd = gl_fd_solver(FDConfig(grid.n, nt, t_end / nt, grid.x_min, grid.x_max, alpha, op), (data, InitialData.zero()))
                gaps.append(float(np.max(np.abs(fd.values - sol.values))))
            runtime = time.perf_counter() - t0
            rep.check(f"{tag} gap at nt={nt0}", gaps[0], 2e-2)
            rep.check(f"{tag} gap decreasing", float(not all(a > b for a, b in zip(gaps, gaps[1:]))), 0.5,
                      " > ".join(f"{g:.3e}" for g in gaps))
            order = min(math.log2(a / b) / math.log2(lb / la) for a, b, la, lb in zip(gaps, gaps[1:], levels, levels[1:]))
            rep.check(f"{tag} observed order", order, 0.8, below=False)
            rep.check(f"{tag} runtime [s]", runtime, 60.0)
            rep.tables[f"fd_alpha{alpha}_{label}"] = _field_table(grid.x, fd.values, sol.values)
    rep.elapsed = time.perf_counter() - t_all
    return rep


# ---------------------------------------------------------------------------
# Mittag-Leffler


def envelope_points(n: int, seed: int = 0):
    """Random parameter points in the evaluator's operating envelope.

    ``alpha`` in (0.1, 2], ``delta = r + 1`` with ``r`` in 0..63, ``Re z <= 0``.
    ``|z|`` is log-uniform up to ``min(1e4, 150^alpha)`` so the extended
    precision series stays affordable.
    """
    rng = random.Random(seed)
    pts = []
    for _ in range(n):
        alpha = rng.uniform(0.1, 2.0)
        r = rng.choice([0, 0, 1, 2, rng.randint(0, 63)])
        beta = rng.uniform(-3.0, 4.0)
        rmax = min(1e4, 150.0**alpha)
        mod = 10.0 ** rng.uniform(-3.0, math.log10(rmax))
        phi = rng.choice([math.pi, rng.uniform(math.pi / 2, math.pi)]) * rng.choice([-1, 1])
        pts.append(MLArgs(alpha, beta, float(r + 1), complex(mod * math.cos(phi), mod * math.sin(phi))))
    return pts


def mlf_scenario(n_points: int = 500, seed: int = 0, tol: float = 1e-10) -> SuiteReport:
    rep = SuiteReport("mlf")
    t0 = time.perf_counter()
    worst, where, rows = 0.0, "", []
    for a in envelope_points(n_points, seed):
        got = mlf_eval(a, tol).value
        ref = mlf_bigfloat(a, 100)
        err = abs(got - ref) / max(1.0, abs(ref))
        rows.append([a.alpha, a.beta, a.delta, a.z.real, a.z.imag, got.real, got.imag, ref.real, ref.imag, err])
        if err > worst:
            worst, where = err, f"alpha={a.alpha:.4g} beta={a.beta:.4g} delta={a.delta:g} z={a.z:.4g}"
    rep.check(f"mlf {n_points} envelope points vs 100-digit series", worst, tol, where)
    rep.tables["mlf_envelope"] = {
        "header": ["alpha", "beta", "delta", "re_z", "im_z", "re_E", "im_E", "re_ref", "im_ref", "scaled_error"],
        "rows": rows,
    }

    rng = np.random.default_rng(seed + 1)
    zs = 20.0 * np.sqrt(rng.uniform(0, 1, 200)) * np.exp(2j * np.pi * rng.uniform(0, 1, 200))
    e_exp = max(abs(mlf_eval(MLArgs(1, 1, 1, z), tol).value - np.exp(z)) / max(1, abs(np.exp(z))) for z in zs)
    rep.check("identity E_{1,1}(z) = exp z, |z| <= 20", e_exp, tol)
    # -z^2 must keep Re <= 0 beyond |z|^2 > 50, so the trig identities use |arg z| <= pi/4
    zt = 20.0 * np.sqrt(rng.uniform(0, 1, 200)) * np.exp(1j * rng.uniform(-np.pi / 4, np.pi / 4, 200))
    zt = np.concatenate([zt, np.linspace(-20, 20, 81)])
    e_cos = max(abs(mlf_eval(MLArgs(2, 1, 1, -z * z), tol).value - np.cos(z)) / max(1, abs(np.cos(z))) for z in zt)
    rep.check("identity E_{2,1}(-z^2) = cos z, |z| <= 20", e_cos, tol)
    zs_nz = zt[np.abs(zt) > 0]
    e_sinc = max(abs(mlf_eval(MLArgs(2, 2, 1, -z * z), tol).value - np.sin(z) / z) / max(1, abs(np.sin(z) / z)) for z in zs_nz)
    rep.check("identity E_{2,2}(-z^2) = sin z / z, |z| <= 20", e_sinc, tol)
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# kernels and the Sumudu round trip


def _kernel_two_term_reference(alpha, beta, lam, rho, b, t, terms=200, digits=60):
    """Direct big-float summation of the two-term kernel series."""
    total = 0j
    for r in range(terms):
        expo = (alpha - beta) * r + alpha - rho
        e = mlf_bigfloat(MLArgs(alpha, expo + 1.0, r + 1.0, -b * t**alpha), digits)
        term = (-lam) ** r * t**expo * e
        total += term
        if r > 5 and abs(term) < 1e-18 * max(abs(total), 1e-300):
            break
    return total


def kernels_scenario(seed: int = 0) -> SuiteReport:
    rep = SuiteReport("kernels")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(100):
        alpha = rng.uniform(0.2, 2.0)
        beta = rng.uniform(1.01, 2.0)
        rho = rng.choice([1.0, 2.0])
        b = complex(rng.uniform(0, 5), rng.uniform(-2, 2))
        t = rng.uniform(0.1, 3.0)
        a = kernel_two_term(alpha, beta, 0.0, rho, b, t)
        s = kernel_single(alpha, rho, b, t)
        worst = max(worst, abs(a - s))
    rep.check("lambda = 0 reduction, 100 draws", worst, 1e-13)

    cases = [(2.0, 1.5, 0.1, 1.0, 1.0, 1.0), (1.5, 1.2, 0.05, 2.0, 0.0, 1.0), (1.8, 1.3, 0.3, 1.0, 4.0, 0.7)]
    for alpha, beta, lam, rho, b, t in cases:
        got = kernel_two_term(alpha, beta, lam, rho, b, t)
        ref = _kernel_two_term_reference(alpha, beta, lam, rho, b, t)
        rep.check(f"two-term kernel alpha={alpha} beta={beta} lam={lam} vs big-float", abs(got - ref), 1e-9)

    rep.check("kernel_single(1,1,1,2) = e^-2", abs(kernel_single(1, 1, 1, 2) - math.exp(-2)), 1e-12)
    rep.check("kernel_single(2,2,9,1) = cos 3", abs(kernel_single(2, 2, 9, 1) - math.cos(3)), 1e-12)

    # complete monotonicity regime: |t^(alpha-1) E_{alpha,alpha}(-b t^alpha)| <= t^(alpha-1)/Gamma(alpha)
    excess = 0.0
    for alpha in (0.3, 0.6, 0.9, 1.0):
        t = np.linspace(0.05, 5, 60)
        for b in (0.0, 0.5, 3.0):
            k = np.abs(kernel_single(alpha, 1.0, b, t))
            excess = max(excess, float(np.max(k - t ** (alpha - 1) / math.gamma(alpha))))
    rep.check("boundedness excess for 0 < alpha <= 1", max(excess, 0.0), 1e-12)
    rep.elapsed = time.perf_counter() - t0
    return rep


def sumudu_scenario(n_draws: int = 20, seed: int = 0) -> SuiteReport:
    """Numerical Sumudu transform of the single kernel against its rational image."""
    rep = SuiteReport("sumudu")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    worst, where, rows = 0.0, "", []
    for _ in range(n_draws):
        alpha = rng.uniform(1.0, 2.0)
        alpha = alpha if alpha > 1.0 else 2.0
        rho = rng.choice([1.0, 2.0])
        b = rng.uniform(0.0, 5.0) or 5.0
        for u in (0.2, 0.5, 1.0):
            g = sumudu_numeric(lambda s: np.real(kernel_single(alpha, rho, b, s)), u, endpoint_exponent=alpha - rho, tol=1e-9)
            image = u ** (alpha - rho) / (1.0 + b * u**alpha)
            dev = abs(g - image)
            rows.append([alpha, rho, b, u, g, image, dev])
            if dev > worst:
                worst, where = dev, f"alpha={alpha:.4g} rho={rho:g} b={b:.4g} u={u}"
    rep.check(f"Sumudu round trip, {n_draws} draws x 3 u", worst, 1e-6, where)
    rep.tables["sumudu"] = {"header": ["alpha", "rho", "b", "u", "numeric", "image", "deviation"], "rows": rows}
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# reductions between solution paths


def _random_operator(rng: random.Random, symmetric: bool) -> SpaceOperator:
    terms = []
    for _ in range(rng.randint(1, 3)):
        gamma = rng.uniform(0.5, 2.0)
        bound = min(gamma, 2.0 - gamma)
        theta = 0.0 if symmetric else rng.uniform(-bound, bound)
        terms.append(RieszFellerTerm(rng.uniform(0.2, 2.0), gamma, theta))
    return SpaceOperator(terms)


def reductions_scenario(n_specs: int = 10, seed: int = 0) -> SuiteReport:
    """Two-term path at lam = 0 and the symmetric path against the general single-order path."""
    rep = SuiteReport("reductions")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    grid = Grid1D(-20.0, 20.0, 256)
    worst_t2 = worst_c1 = 0.0
    for i in range(n_specs):
        alpha = rng.uniform(1.05, 2.0)
        c1, c2 = rng.uniform(-2, 2), rng.uniform(-2, 2)
        f = InitialData.from_function(lambda x: _gauss(x, c1, 1.3), grid)
        g = InitialData.from_function(lambda x: 0.5 * _gauss(x, c2, 0.9), grid)
        src = SourceTerm.separable(_gauss(grid.x, 0.0, 1.5), lambda s: np.exp(-s)) if i % 5 == 0 else SourceTerm.none()
        t = rng.uniform(0.3, 2.0)

        op = _random_operator(rng, symmetric=False)
        spec1 = ProblemSpec(alpha, op, init_f=f, init_g=g, source=src)
        spec2 = dataclasses.replace(spec1, lam=0.0, beta=rng.uniform(1.05, 2.0), init_f2=g, init_g2=f)
        s1 = solve_theorem1(spec1, t, grid)
        s2 = solve_theorem2(spec2, t, grid)
        worst_t2 = max(worst_t2, float(np.max(np.abs(s1.values - s2.values))))
        _invariants(rep, f"reductions spec {i}", s1, spec1)

        sym = _random_operator(rng, symmetric=True)
        spec3 = dataclasses.replace(spec1, operator=sym)
        s3 = solve_theorem1(spec3, t, grid)
        s4 = solve_corollary1(spec3, t, grid)
        worst_c1 = max(worst_c1, float(np.max(np.abs(s3.values - s4.values))))
    rep.check(f"two-term path at lam=0 vs single-order path, {n_specs} specs", worst_t2, 1e-12)
    rep.check(f"symmetric path vs single-order path, {n_specs} specs", worst_c1, 1e-12)
    rep.elapsed = time.perf_counter() - t0
    return rep


_RUNNERS = {
    "mlf": mlf_scenario,
    "kernels": kernels_scenario,
    "heat": heat_scenario,
    "wave": wave_scenario,
    "fd-cross": fd_cross_scenario,
    "sumudu": sumudu_scenario,
}


def run_suite(name: str) -> SuiteReport:
    if name not in _RUNNERS:
        raise KeyError(name)
    return _RUNNERS[name]()


def write_tables(report: SuiteReport, directory: str) -> list:
    """Write each comparison table of a report as CSV; returns the paths."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for key, table in report.tables.items():
        path = os.path.join(directory, f"{report.suite}_{key}.csv")
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(table["header"])
            for row in table["rows"]:
                w.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in row])
        paths.append(path)
    return paths
