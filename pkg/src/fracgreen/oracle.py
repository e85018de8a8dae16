"""Independent reference implementations used to check the solver.

Nothing here shares numerical code with the evaluator or the spectral
solver: the Mittag-Leffler reference sums the series in mpmath, the Sumudu
transform is a plain Gauss-Laguerre rule, and the finite-difference solver
marches the equation in time with Grunwald-Letnikov weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Optional

import mpmath as mp
import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import DomainError, NonConvergence, QuadratureFailure, StabilityViolation, ThetaNotZero
from .mlf import MLArgs
from .spectral import Grid1D, InitialData, SolutionField, SourceTerm
from .symbol import SpaceOperator

__all__ = [
    "mlf_bigfloat",
    "sumudu_numeric",
    "heat_kernel",
    "dalembert",
    "FDConfig",
    "gl_weights",
    "gl_fd_solver",
]

BIGFLOAT_TERM_CAP = 200_000
BIGFLOAT_MAX_RADIUS = 1e4


# ---------------------------------------------------------------------------
# big-float Mittag-Leffler series


def _log10_term(alpha: float, beta: float, delta: float, logr: float, n: int) -> float:
    """log10 of |(delta)_n z^n / (n! Gamma(n alpha + beta))|, ignoring Gamma poles."""
    arg = n * alpha + beta
    lg = math.lgamma(arg) if not (arg <= 0 and arg == int(arg)) else math.inf
    val = math.lgamma(delta + n) - math.lgamma(delta) - math.lgamma(n + 1) + n * logr - lg
    return val / math.log(10.0)


def mlf_bigfloat(args: MLArgs, digits: int = 100) -> complex:
    """Prabhakar function by direct series summation in extended precision.

    The working precision is ``digits`` plus the decimal size of the largest
    term, so cancellation between terms cannot eat into the target.
    """
    if digits < 50:
        raise DomainError(f"digits must be >= 50, got {digits}")
    r = abs(args.z)
    if r > BIGFLOAT_MAX_RADIUS:
        raise DomainError(f"|z| <= {BIGFLOAT_MAX_RADIUS:g} required, got {r:.6g}")
    a, b, d = float(args.alpha), float(args.beta), float(args.delta)
    if r == 0:
        with mp.workdps(digits):
            return complex(mp.rgamma(b))
    logr = math.log(r)
    level = 0.0  # log10 of the expected result size; refined after a first pass
    for _ in range(4):
        # locate the peak term and the index where terms drop below the target
        peak, n, last = -math.inf, 0, None
        while n < BIGFLOAT_TERM_CAP:
            lt = _log10_term(a, b, d, logr, n)
            peak = max(peak, lt)
            if n > 10 and lt < peak - digits - 10 and lt < level - digits - 10:
                last = n
                break
            n += 1
        if last is None:
            raise NonConvergence(f"big-float series needs more than {BIGFLOAT_TERM_CAP} terms at |z|={r:.6g}")
        work = digits + max(0, int(math.ceil(peak - level))) + 10
        with mp.workdps(work):
            am, bm, zm = mp.mpf(a), mp.mpf(b), mp.mpc(args.z)
            coef = mp.mpc(1)
            total = mp.mpc(0)
            for k in range(last + 1):
                total += coef * mp.rgamma(k * am + bm)
                coef = coef * zm * (d + k) / (k + 1)
            size = float(mp.log10(abs(total))) if total != 0 else -math.inf
        if size >= level - 1 or size == -math.inf:
            return complex(total)
        # the sum is much smaller than assumed: redo with the digits it costs
        level = max(size, -5000.0)
    return complex(total)


# ---------------------------------------------------------------------------
# Sumudu transform


def _gauss_laguerre(n: int, a: float):
    """Nodes and weights for ``int_0^inf x^a exp(-x) h(x) dx`` (Golub-Welsch).

    The tridiagonal eigenproblem stays well conditioned for the node counts
    the adaptive loop reaches, where the recurrence-based routines overflow.
    """
    i = np.arange(n, dtype=float)
    diag = 2.0 * i + a + 1.0
    off = np.sqrt((i[1:]) * (i[1:] + a))
    x, v = eigh_tridiagonal(diag, off)
    w = math.gamma(a + 1.0) * v[0] ** 2
    return x, w


def _settle(rule, start: int, limit: int, tol: float, what: str):
    prev = rule(start)
    n = start
    while n < limit:
        n *= 2
        cur = rule(n)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise QuadratureFailure(f"{what} did not settle to {tol:g} at {limit} nodes")


def sumudu_numeric(
    f: Callable[[np.ndarray], np.ndarray],
    u: float,
    nodes: int = 128,
    tol: float = 1e-10,
    endpoint_exponent: float = 0.0,
    max_nodes: int = 4096,
    split: float = 1.0,
):
    """``G(u) = int_0^inf f(u t) exp(-t) dt``.

    ``f`` is called with arrays of sample points. The tail ``t > split`` is
    a Gauss-Laguerre rule in the shifted variable; the head ``[0, split]``
    uses the substitution ``t = split v^q`` and Gauss-Legendre panels so an
    endpoint power ``f(s) ~ s^a`` (``a = endpoint_exponent``) and fractional
    powers of ``s`` in the regular part stop limiting convergence. Node
    counts double until successive rules agree to ``tol * max(1, |G|)``.
    """
    if not u > 0:
        raise DomainError(f"u must be > 0, got {u}")
    a = float(endpoint_exponent)
    if not a > -1:
        raise DomainError(f"endpoint exponent must exceed -1, got {a}")
    T = float(split)
    q = max(6, math.ceil(4.0 / (a + 1.0)))
    x0, w0 = np.polynomial.legendre.leggauss(64)

    def head(panels):
        edges = np.linspace(0.0, 1.0, panels + 1)
        half = 0.5 * np.diff(edges)
        v = ((edges[:-1] + half)[:, None] + half[:, None] * x0[None, :]).ravel()
        w = (half[:, None] * w0[None, :]).ravel()
        t = T * v**q
        jac = T * q * v ** (q - 1)
        return np.sum(w * jac * np.asarray(f(u * t)) * np.exp(-t))

    def tail(n):
        x, w = _gauss_laguerre(n, 0.0)
        return math.exp(-T) * np.sum(w * np.asarray(f(u * (T + x))))

    g = _settle(head, 1, max(1, max_nodes // 64), 0.5 * tol, "Sumudu head quadrature")
    g += _settle(tail, nodes, max_nodes, 0.5 * tol, "Gauss-Laguerre tail")
    return complex(g) if np.iscomplexobj(g) else float(g)


# ---------------------------------------------------------------------------
# closed forms


def heat_kernel(x, t: float, D: float = 1.0):
    """Gaussian ``exp(-x^2/(4 D t)) / sqrt(4 pi D t)``."""
    if not (t > 0 and D > 0):
        raise DomainError("heat kernel needs t > 0 and D > 0")
    x = np.asarray(x, dtype=float)
    out = np.exp(-(x**2) / (4.0 * D * t)) / math.sqrt(4.0 * math.pi * D * t)
    return float(out) if out.ndim == 0 else out


def dalembert(g: Callable, x, t: float, c: float = 1.0):
    """``(g(x - c t) + g(x + c t)) / 2``."""
    if t < 0:
        raise DomainError("t must be >= 0")
    x = np.asarray(x, dtype=float)
    out = 0.5 * (np.asarray(g(x - c * t)) + np.asarray(g(x + c * t)))
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# Grunwald-Letnikov finite differences


@dataclass(frozen=True)
class FDConfig:
    """Explicit Grunwald-Letnikov scheme on a periodic grid.

    The time derivative(s) use GL convolution weights with zero prehistory;
    the space operator is applied as the multiplier ``-sigma(k)`` on the
    previous level. The scheme is stable when every mode satisfies
    ``sigma(k) <= 2^alpha dt^-alpha + lam 2^beta dt^-beta``, the value of the
    time symbol at the highest discrete frequency.
    """

    nx: int
    nt: int
    dt: float
    x_min: float
    x_max: float
    alpha: float
    operator: SpaceOperator
    beta: Optional[float] = None
    lam: float = 0.0

    @property
    def grid(self) -> Grid1D:
        return Grid1D(self.x_min, self.x_max, self.nx)

    @property
    def t_final(self) -> float:
        return self.nt * self.dt

    def sigma(self) -> np.ndarray:
        g = self.grid
        k = g.dk * np.arange(g.n // 2 + 1)
        out = np.zeros(k.shape)
        for term in self.operator.terms:
            out += term.mu * k**term.gamma
        return out

    def stability_bound(self) -> float:
        bound = 2.0**self.alpha * self.dt ** (-self.alpha)
        if self.lam:
            bound += self.lam * 2.0**self.beta * self.dt ** (-self.beta)
        return bound


def gl_weights(order: float, n: int) -> np.ndarray:
    """``(-1)^j binom(order, j)`` for ``j = 0..n-1``."""
    w = np.empty(n)
    w[0] = 1.0
    for j in range(1, n):
        w[j] = w[j - 1] * (1.0 - (order + 1.0) / j)
    return w


def _samples(data: Optional[InitialData], grid: Grid1D) -> np.ndarray:
    if data is None or data.kind == "zero":
        return np.zeros(grid.n)
    if data.kind == "delta":
        x = grid.x
        j = int(np.argmin(np.abs(x)))
        if abs(x[j]) > 1e-9 * grid.dx:
            raise DomainError("a delta needs x = 0 on the grid")
        out = np.zeros(grid.n)
        out[j] = 1.0 / grid.dx
        return out
    if data.samples.shape != (grid.n,):
        raise DomainError(f"initial data has {data.samples.size} samples, grid has {grid.n}")
    return data.samples.copy()


def _source_fn(source, grid: Grid1D):
    if source is None:
        return None
    if callable(source) and not isinstance(source, SourceTerm):
        return lambda tau: np.asarray(source(grid.x, tau), dtype=float)
    if source.kind == "none":
        return None
    if source.kind == "separable":
        if callable(source.profile):
            raise DomainError("the finite-difference oracle needs the source profile sampled in x")
        return lambda tau: source.profile * float(source.time(np.array([tau]))[0])
    ts, vals = source.times, source.values

    def phi(tau):
        i = min(max(int(np.searchsorted(ts, tau)) - 1, 0), ts.size - 2)
        w = (tau - ts[i]) / (ts[i + 1] - ts[i])
        return vals[i] * (1 - w) + vals[i + 1] * w

    return phi


def gl_fd_solver(
    config: FDConfig,
    init: Mapping[str, InitialData] | tuple,
    source=None,
) -> SolutionField:
    """March ``D^alpha N + lam D^beta N = -sigma N + phi`` to ``t = nt dt``.

    ``init`` maps ``f``, ``g`` (and ``f2``, ``g2`` for the two-order equation)
    to initial data; a tuple ``(f, g)`` is accepted too. The R-L initial
    data enter as impulses at the first steps. The error is first order in
    ``dt``.
    """
    cfg = config
    if not cfg.operator.symmetric:
        raise ThetaNotZero("the finite-difference oracle supports theta = 0 only")
    if cfg.nt < 1 or not cfg.dt > 0:
        raise DomainError("need nt >= 1 and dt > 0")
    if cfg.lam and cfg.beta is None:
        raise DomainError("lam != 0 needs beta")
    grid = cfg.grid
    sigma = cfg.sigma()
    bound = cfg.stability_bound()
    if sigma.max() > bound:
        raise StabilityViolation(
            f"max sigma(k) = {sigma.max():.6g} exceeds the stability bound {bound:.6g}; "
            "reduce dt or coarsen the grid"
        )
    if isinstance(init, tuple):
        init = {"f": init[0], "g": init[1]}
    f = _samples(init.get("f"), grid)
    g = _samples(init.get("g"), grid)
    if cfg.lam:
        f = f + cfg.lam * _samples(init.get("f2"), grid)
        g = g + cfg.lam * _samples(init.get("g2"), grid)
    phi = _source_fn(source, grid)

    nt, dt = cfg.nt, cfg.dt
    # combined time-operator weights c_j so that sum_j c_j N_{n-j} ~ D^alpha N + lam D^beta N
    c = dt ** (-cfg.alpha) * gl_weights(cfg.alpha, nt + 1)
    if cfg.lam:
        c = c + cfg.lam * dt ** (-cfg.beta) * gl_weights(cfg.beta, nt + 1)
    hist = np.zeros((nt + 1, grid.n))
    for n in range(nt + 1):
        rhs = np.zeros(grid.n)
        if n == 0:
            rhs += f / dt + g / dt**2
        elif n == 1:
            rhs -= g / dt**2
        if n > 0:
            rhs -= np.fft.irfft(sigma * np.fft.rfft(hist[n - 1]), n=grid.n)
            rhs -= c[1 : n + 1] @ hist[n - 1 :: -1][:n]
        if phi is not None:
            rhs += phi(n * dt)
        hist[n] = rhs / c[0]
        if not np.all(np.isfinite(hist[n])):
            raise NonConvergence(f"non-finite values at step {n}")
    return SolutionField(grid, nt * dt, hist[nt].copy(), 0.0)
