"""Green's-function spectral solver.

Solutions are assembled in wavenumber space, ``N*(k, t) = K_1(k, t) f*(k) +
K_2(k, t) g*(k) + (source convolution)``, and synthesized on a periodic grid
with

    N(x) = (1/sqrt(2 pi)) sum_k exp(-i k x) N*(k) dk.

The forward transform uses the matching sign, ``f*(k) = (1/sqrt(2 pi))
int exp(+i k x) f(x) dx``, so a Riesz-Feller term acts as ``-Psi(k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import (
    DomainError,
    EdgeDecayViolation,
    QuadratureFailure,
    RealnessViolation,
    SeriesDivergence,
    ThetaNotZero,
)
from .kernels import R_MAX, kernel_single, kernel_two_term
from .mlf import DEFAULT_TOL, mittag_leffler, reciprocal_gamma
from .symbol import SpaceOperator, b_of_k, sigma_of_k

__all__ = [
    "Grid1D",
    "InitialData",
    "SourceTerm",
    "ProblemSpec",
    "SpectralField",
    "SolutionField",
    "forward_transform",
    "synthesize",
    "solve_theorem1",
    "solve_corollary1",
    "solve_corollary2",
    "solve_theorem2",
    "solve",
    "source_convolution",
    "check_problem",
    "mass_identity",
    "expected_mass",
    "MODES",
]

SQRT_2PI = math.sqrt(2.0 * math.pi)
EDGE_DECAY = 1e-8
REALNESS_TOL = 1e-6
GL_NODES = 64
MAX_PANELS = 1024
MODES = ("theorem1", "corollary1", "corollary2", "theorem2")


# ---------------------------------------------------------------------------
# grid and data


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    n: int

    def __post_init__(self) -> None:
        n = int(self.n)
        if n < 8 or n & (n - 1):
            raise DomainError(f"grid size must be a power of two >= 8, got {self.n}")
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max) and self.x_max > self.x_min):
            raise DomainError(f"need x_max > x_min, got [{self.x_min}, {self.x_max}]")
        object.__setattr__(self, "n", n)

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @property
    def dx(self) -> float:
        return self.length / self.n

    @property
    def dk(self) -> float:
        return 2.0 * math.pi / self.length

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n)

    @property
    def k(self) -> np.ndarray:
        return self.dk * np.arange(-self.n // 2, self.n // 2)

    def doubled(self) -> "Grid1D":
        """Twice the width and twice the points, same spacing and same centre."""
        c, h = 0.5 * (self.x_min + self.x_max), self.length
        return Grid1D(c - h, c + h, 2 * self.n)


@dataclass(frozen=True)
class InitialData:
    kind: str = "zero"
    samples: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if self.kind not in ("sampled", "delta", "zero"):
            raise DomainError(f"unknown initial data kind {self.kind!r}")
        if self.kind == "sampled":
            if self.samples is None:
                raise DomainError("sampled initial data need samples")
            arr = np.asarray(self.samples, dtype=float)
            if arr.ndim != 1 or not np.all(np.isfinite(arr)):
                raise DomainError("initial data samples must be a finite 1-D sequence")
            object.__setattr__(self, "samples", arr)

    @classmethod
    def zero(cls) -> "InitialData":
        return cls("zero")

    @classmethod
    def delta(cls) -> "InitialData":
        return cls("delta")

    @classmethod
    def sampled(cls, samples) -> "InitialData":
        return cls("sampled", np.asarray(samples, dtype=float))

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray], np.ndarray], grid: Grid1D) -> "InitialData":
        return cls.sampled(fn(grid.x))

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero" or (self.kind == "sampled" and not np.any(self.samples))


def _check_edges(samples: np.ndarray, what: str) -> None:
    peak = np.max(np.abs(samples))
    if peak == 0:
        return
    edge = max(abs(samples[0]), abs(samples[-1]))
    if edge >= EDGE_DECAY * peak:
        raise EdgeDecayViolation(
            f"{what} does not decay at the grid edges: |edge| = {edge:.3g}, max = {peak:.3g} "
            f"(need ratio < {EDGE_DECAY:g})"
        )


def _dft(samples: np.ndarray, grid: Grid1D, k=None) -> np.ndarray:
    """``(dx/sqrt(2 pi)) sum_j exp(i k x_j) f_j``; FFT on the grid wavenumbers."""
    if k is None:
        spec = grid.n * np.fft.ifft(samples, axis=-1)
        spec = np.fft.fftshift(spec, axes=-1)
        return grid.dx / SQRT_2PI * np.exp(1j * grid.k * grid.x_min) * spec
    k = np.asarray(k, dtype=float)
    phase = np.exp(1j * np.multiply.outer(k, grid.x))
    return grid.dx / SQRT_2PI * (phase @ np.asarray(samples).T).T


@dataclass(frozen=True)
class SpectralField:
    k: np.ndarray
    values: np.ndarray


def forward_transform(data: InitialData, grid: Grid1D) -> SpectralField:
    """Continuum-scaled Fourier transform of initial data on ``grid.k``."""
    k = grid.k
    if data.kind == "zero":
        return SpectralField(k, np.zeros(grid.n, dtype=complex))
    if data.kind == "delta":
        return SpectralField(k, np.full(grid.n, 1.0 / SQRT_2PI, dtype=complex))
    if data.samples.shape != (grid.n,):
        raise DomainError(f"initial data has {data.samples.size} samples, grid has {grid.n}")
    _check_edges(data.samples, "initial data")
    return SpectralField(k, _dft(data.samples, grid))


def synthesize(n_star: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Inverse of :func:`forward_transform`: complex samples on ``grid.x``."""
    c = np.exp(-1j * grid.k * grid.x_min) * n_star
    return grid.dk / SQRT_2PI * np.fft.fft(np.fft.ifftshift(c))


# ---------------------------------------------------------------------------
# sources


@dataclass(frozen=True)
class SourceTerm:
    """Forcing ``phi(x, t)``.

    ``separable``: ``profile(x) * time(t)``; ``profile`` is either samples on
    the solve grid or a callable giving its transform ``phi*(k)`` directly.
    ``sampled``: ``values[i]`` on the grid at ``times[i]``, linear in time.
    """

    kind: str = "none"
    profile: object = None
    time: Optional[Callable] = None
    values: Optional[np.ndarray] = None
    times: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if self.kind not in ("none", "separable", "sampled"):
            raise DomainError(f"unknown source kind {self.kind!r}")
        if self.kind == "separable":
            if self.profile is None or self.time is None:
                raise DomainError("separable source needs a spatial profile and a time profile")
            if not callable(self.profile):
                object.__setattr__(self, "profile", np.asarray(self.profile, dtype=float))
        if self.kind == "sampled":
            vals = np.asarray(self.values, dtype=float)
            ts = np.asarray(self.times, dtype=float)
            if vals.ndim != 2 or ts.ndim != 1 or vals.shape[0] != ts.size or ts.size < 2:
                raise DomainError("sampled source needs values of shape (len(times), n) with >= 2 times")
            if np.any(np.diff(ts) <= 0):
                raise DomainError("sampled source times must increase")
            object.__setattr__(self, "values", vals)
            object.__setattr__(self, "times", ts)

    @classmethod
    def none(cls) -> "SourceTerm":
        return cls("none")

    @classmethod
    def separable(cls, profile, time: Callable) -> "SourceTerm":
        return cls("separable", profile=profile, time=time)

    @classmethod
    def sampled(cls, values, times) -> "SourceTerm":
        return cls("sampled", values=values, times=times)

    def spectral(self, k, grid: Optional[Grid1D]) -> Callable[[np.ndarray], np.ndarray]:
        """Return ``tau -> phi*(k, tau)`` with shape ``(len(k), len(tau))``."""
        k = np.atleast_1d(np.asarray(k, dtype=float))
        on_grid = grid is not None and k.shape == (grid.n,) and np.array_equal(k, grid.k)

        def transform(samples):
            if grid is None:
                raise DomainError("a sampled source profile needs the solve grid")
            if samples.shape[-1] != grid.n:
                raise DomainError(f"source has {samples.shape[-1]} samples, grid has {grid.n}")
            return _dft(samples, grid, None if on_grid else k)

        if self.kind == "separable":
            if callable(self.profile):
                prof = np.asarray(self.profile(k), dtype=complex) * np.ones(k.shape)
            else:
                _check_edges(self.profile, "source profile")
                prof = transform(self.profile)
            time = self.time
            return lambda tau: prof[:, None] * np.asarray(time(tau), dtype=float)[None, :]

        if self.kind == "sampled":
            for row in self.values:
                _check_edges(row, "source")
            table = transform(self.values)  # (n_times, len(k))
            ts = self.times

            def phi(tau):
                tau = np.asarray(tau, dtype=float)
                if tau.min() < ts[0] - 1e-12 or tau.max() > ts[-1] + 1e-12:
                    raise DomainError(f"source sampled on [{ts[0]}, {ts[-1]}] queried outside it")
                i = np.clip(np.searchsorted(ts, tau) - 1, 0, ts.size - 2)
                w = (tau - ts[i]) / (ts[i + 1] - ts[i])
                return (table[i] * (1 - w)[:, None] + table[i + 1] * w[:, None]).T

            return phi

        return lambda tau: np.zeros((k.size, np.size(tau)), dtype=complex)


# ---------------------------------------------------------------------------
# problem


@dataclass(frozen=True)
class ProblemSpec:
    """A full instance of the space-time fractional equation.

    ``init_f``/``init_g`` are the R-L data of order ``alpha-1``/``alpha-2``;
    on the two-term path they play the role of ``f1``/``g1`` and
    ``init_f2``/``init_g2`` hold the data attached to ``beta``.
    """

    alpha: float
    operator: SpaceOperator
    lam: float = 0.0
    beta: Optional[float] = None
    init_f: InitialData = field(default_factory=InitialData.zero)
    init_g: InitialData = field(default_factory=InitialData.zero)
    init_f2: InitialData = field(default_factory=InitialData.zero)
    init_g2: InitialData = field(default_factory=InitialData.zero)
    source: SourceTerm = field(default_factory=SourceTerm.none)

    @property
    def init_f1(self) -> InitialData:
        return self.init_f

    @property
    def init_g1(self) -> InitialData:
        return self.init_g


def check_problem(spec: ProblemSpec, mode: str) -> None:
    """Validate the parameter constraints of a solution path."""
    a = spec.alpha
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    if not math.isfinite(a):
        raise DomainError("alpha must be finite")
    if mode in ("theorem1", "corollary1"):
        if not 1.0 < a <= 2.0:
            raise DomainError(f"{mode}: 1 < alpha <= 2 required, got alpha={a}")
        if spec.lam != 0.0:
            raise DomainError(f"{mode}: lambda must be 0 (use theorem2), got {spec.lam}")
    if mode == "corollary1" and not spec.operator.symmetric:
        raise ThetaNotZero("corollary1: theta = 0 required in every operator term")
    if mode == "corollary2":
        if not 0.0 < a <= 1.0:
            raise DomainError(f"corollary2: 0 < alpha <= 1 required, got alpha={a}")
        if spec.lam != 0.0:
            raise DomainError(f"corollary2: lambda must be 0, got {spec.lam}")
        if not spec.init_g.is_zero:
            raise DomainError("corollary2: the order alpha-2 datum g must be zero")
    if mode == "theorem2":
        b = spec.beta
        if b is None or not 1.0 < b <= 2.0:
            raise DomainError(f"theorem2: 1 < beta <= 2 required, got beta={b}")
        if not 1.0 < a <= 2.0:
            raise DomainError(f"theorem2: 1 < alpha <= 2 required, got alpha={a}")
        if not math.isfinite(spec.lam):
            raise DomainError("theorem2: lambda must be finite")
    if mode != "theorem2" and not (spec.init_f2.is_zero and spec.init_g2.is_zero):
        raise DomainError(f"{mode}: beta-order data f2, g2 apply to theorem2 only")


@dataclass
class SolutionField:
    grid: Grid1D
    t: float
    values: np.ndarray
    max_imag_residual: float
    imag: Optional[np.ndarray] = None
    spectrum: Optional[np.ndarray] = None

    @property
    def x(self) -> np.ndarray:
        return self.grid.x


# ---------------------------------------------------------------------------
# source convolution


def _gl_panel_rule(panels: int):
    """Composite Gauss-Legendre nodes/weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(GL_NODES)
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _convolve_term(phi, b, t, alpha, a, m, tol):
    """``int_0^t phi(t - xi) xi^(a-1) E^m_{alpha,a}(-b xi^alpha) dxi``.

    The substitution ``xi = t s^(1/a)``, ``s = u^3`` turns the endpoint power
    into a smooth integrand; composite Gauss-Legendre in ``u`` with panel
    doubling.
    """
    b = np.asarray(b, dtype=complex)
    scale = t**a / a
    result = np.zeros(b.shape, dtype=complex)
    prev = None
    todo = np.ones(b.shape, dtype=bool)
    panels = 1
    while True:
        u, w = _gl_panel_rule(panels)
        s = u**3
        ws = 3.0 * u**2 * w
        tau = t - t * s ** (1.0 / a)
        tau = np.clip(tau, 0.0, t)
        vals = phi(tau)  # (len(b), len(u))
        idx = np.flatnonzero(todo)
        z = -np.multiply.outer(b[idx], t**alpha * s ** (alpha / a))
        e = np.asarray(mittag_leffler(alpha, a, float(m), z.ravel(), max(1e-3 * tol, 1e-12))).reshape(z.shape)
        cur = scale * np.sum(vals[idx] * e * ws[None, :], axis=1)
        if prev is not None:
            ok = np.abs(cur - prev[idx]) <= tol * np.maximum(1.0, np.abs(cur))
            result[idx[ok]] = cur[ok]
            todo[idx[ok]] = False
        if not todo.any():
            return result
        prev = np.zeros(b.shape, dtype=complex) if prev is None else prev
        prev[idx] = cur
        panels *= 2
        if panels > MAX_PANELS:
            raise QuadratureFailure(
                f"source convolution did not reach tol={tol:g} with {MAX_PANELS} panels of {GL_NODES} nodes"
            )


def _source_integral(spec: ProblemSpec, b, k, t, tol, grid, r_max):
    phi_all = spec.source.spectral(k, grid)
    alpha = spec.alpha
    if spec.lam == 0.0:
        return _convolve_term(lambda tau: phi_all(tau), b, t, alpha, alpha, 1, tol)
    # two-term kernel: one convolution per r, each with its own endpoint power
    total = np.zeros(np.shape(b), dtype=complex)
    prev = None
    small_run = grow_run = 0
    for r in range(r_max):
        a = (alpha - spec.beta) * r + alpha
        if a <= 0:
            raise SeriesDivergence(
                f"source convolution: kernel power xi^{a - 1:.3g} is not integrable at r={r}"
            )
        term = (-spec.lam) ** r * _convolve_term(phi_all, b, t, alpha, a, r + 1, tol)
        total += term
        mag = float(np.max(np.abs(term)))
        small_run = small_run + 1 if mag < tol * max(float(np.max(np.abs(total))), 1e-300) else 0
        grow_run = grow_run + 1 if prev is not None and mag > prev else 0
        prev = mag
        if small_run >= 3 or mag == 0.0:
            return total
        if grow_run >= 5:
            raise SeriesDivergence("source convolution summands grew for 5 consecutive r")
    raise SeriesDivergence(f"source convolution series not converged after r_max={r_max} terms")


def source_convolution(
    spec: ProblemSpec,
    k,
    t: float,
    tol: float = DEFAULT_TOL,
    grid: Optional[Grid1D] = None,
    r_max: int = R_MAX,
):
    """Time convolution of the source with the order-one kernel at wavenumber(s) ``k``.

    Vectorized over ``k``. ``grid`` is needed when the source is sampled in x.
    """
    if not t > 0:
        raise DomainError(f"t must be > 0, got {t}")
    scalar = np.ndim(k) == 0
    kk = np.atleast_1d(np.asarray(k, dtype=float))
    if spec.source.kind == "none":
        out = np.zeros(kk.shape, dtype=complex)
    else:
        b = np.atleast_1d(b_of_k(spec.operator, kk))
        out = _source_integral(spec, b, kk, t, tol, grid, r_max)
    return complex(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# solvers


def _finish(n_star: np.ndarray, grid: Grid1D, t: float, check_real: bool = True) -> SolutionField:
    field_c = synthesize(n_star, grid)
    values = field_c.real.copy()
    imag = field_c.imag.copy()
    resid = float(np.max(np.abs(imag)))
    peak = float(np.max(np.abs(values)))
    if check_real and resid > REALNESS_TOL * peak and resid > 1e-300:
        raise RealnessViolation(
            f"imaginary residual {resid:.3g} exceeds {REALNESS_TOL:g} * max|N| = {REALNESS_TOL * peak:.3g}"
        )
    return SolutionField(grid, t, values, resid, imag, n_star)


def _assemble(spec: ProblemSpec, t: float, grid: Grid1D, tol: float, b) -> np.ndarray:
    a = spec.alpha
    n_star = np.zeros(grid.n, dtype=complex)
    f = forward_transform(spec.init_f, grid).values
    g = forward_transform(spec.init_g, grid).values
    if not spec.init_f.is_zero:
        n_star += kernel_single(a, 1.0, b, t, tol) * f
    if not spec.init_g.is_zero:
        n_star += kernel_single(a, 2.0, b, t, tol) * g
    if spec.source.kind != "none":
        n_star += _source_integral(spec, b, grid.k, t, tol, grid, R_MAX)
    return n_star


def _check_t(t: float) -> None:
    if not (math.isfinite(t) and t > 0):
        raise DomainError(f"solutions are defined for t > 0 only, got t={t}")


def solve_theorem1(spec: ProblemSpec, t: float, grid: Grid1D, tol: float = DEFAULT_TOL) -> SolutionField:
    """Single-order solution for ``1 < alpha <= 2`` with general Riesz-Feller terms."""
    check_problem(spec, "theorem1")
    _check_t(t)
    b = b_of_k(spec.operator, grid.k)
    return _finish(_assemble(spec, t, grid, tol, b), grid, t)


def solve_corollary1(spec: ProblemSpec, t: float, grid: Grid1D, tol: float = DEFAULT_TOL) -> SolutionField:
    """Symmetric-operator case: ``b(k)`` replaced by the real ``sigma(k)``."""
    check_problem(spec, "corollary1")
    _check_t(t)
    sigma = sigma_of_k(spec.operator, grid.k)
    return _finish(_assemble(spec, t, grid, tol, sigma.astype(complex)), grid, t)


def solve_corollary2(spec: ProblemSpec, t: float, grid: Grid1D, tol: float = DEFAULT_TOL) -> SolutionField:
    """Sub-diffusive case ``0 < alpha <= 1``; the classical datum is a delta.

    Sampled ``f`` is accepted as well and enters through the same kernel.
    """
    check_problem(spec, "corollary2")
    _check_t(t)
    b = b_of_k(spec.operator, grid.k)
    return _finish(_assemble(spec, t, grid, tol, b), grid, t)


def solve_theorem2(
    spec: ProblemSpec, t: float, grid: Grid1D, tol: float = DEFAULT_TOL, r_max: int = R_MAX
) -> SolutionField:
    """Two-order equation ``D^alpha N + lam D^beta N = sum mu_j D_j N + phi``."""
    check_problem(spec, "theorem2")
    _check_t(t)
    a, be, lam = spec.alpha, spec.beta, spec.lam
    k = grid.k
    b = b_of_k(spec.operator, k)
    n_star = np.zeros(grid.n, dtype=complex)
    f = forward_transform(spec.init_f, grid).values + lam * forward_transform(spec.init_f2, grid).values
    g = forward_transform(spec.init_g, grid).values + lam * forward_transform(spec.init_g2, grid).values
    try:
        if np.any(f):
            n_star += kernel_two_term(a, be, lam, 1.0, b, t, tol, r_max) * f
        if np.any(g):
            n_star += kernel_two_term(a, be, lam, 2.0, b, t, tol, r_max) * g
        if spec.source.kind != "none":
            n_star += _source_integral(spec, b, k, t, tol, grid, r_max)
    except SeriesDivergence as exc:
        kk = float(k[exc.index]) if exc.index is not None else None
        where = f" at k={kk:.6g}" if kk is not None else ""
        raise SeriesDivergence(f"{exc}{where}", k=kk, index=exc.index) from exc
    return _finish(n_star, grid, t)


_SOLVERS = {
    "theorem1": solve_theorem1,
    "corollary1": solve_corollary1,
    "corollary2": solve_corollary2,
    "theorem2": solve_theorem2,
}


def solve(mode: str, spec: ProblemSpec, t: float, grid: Grid1D, tol: float = DEFAULT_TOL) -> SolutionField:
    if mode not in _SOLVERS:
        raise DomainError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    return _SOLVERS[mode](spec, t, grid, tol)


# ---------------------------------------------------------------------------
# invariants


def mass_identity(sol: SolutionField) -> tuple[float, float]:
    """``(dx * sum N, sqrt(2 pi) Re N*(0))``; equal up to rounding."""
    if sol.spectrum is None:
        raise DomainError("solution carries no spectrum")
    i0 = sol.grid.n // 2
    return sol.grid.dx * float(np.sum(sol.values)), SQRT_2PI * float(sol.spectrum[i0].real)


def expected_mass(spec: ProblemSpec, t: float, grid: Grid1D) -> float:
    """Closed-form ``int N dx`` from the zero mode, evaluated independently of the kernels."""
    from scipy.integrate import quad

    a, lam = spec.alpha, spec.lam
    be = spec.beta if spec.beta is not None else a

    def f0(data):
        return float(forward_transform(data, grid).values[grid.n // 2].real)

    def weight(rho_shift, x):
        # zero-mode kernel: sum_r (-lam)^r x^((a-be) r + a - rho) / Gamma((a-be) r + a - rho + 1)
        if lam == 0.0:
            return x ** (a - rho_shift) * reciprocal_gamma(a - rho_shift + 1.0)
        total = 0.0
        for r in range(200):
            e = (a - be) * r + a - rho_shift
            term = (-lam) ** r * x**e * reciprocal_gamma(e + 1.0)
            total += term
            if r > 3 and abs(term) < 1e-17 * max(abs(total), 1e-300):
                break
        return total

    mass = weight(1.0, t) * (f0(spec.init_f) + lam * f0(spec.init_f2))
    mass += weight(2.0, t) * (f0(spec.init_g) + lam * f0(spec.init_g2))
    if spec.source.kind != "none":
        phi0 = spec.source.spectral(np.array([0.0]), grid)
        val, _ = quad(
            lambda xi: float(phi0(np.array([t - xi]))[0, 0].real) * weight(1.0, xi),
            0.0, t, limit=200, epsabs=1e-13, epsrel=1e-12,
        )
        mass += val
    return SQRT_2PI * mass
