"""Time-domain Green kernels.

``kernel_single`` is the inverse Sumudu image of ``u^-rho / (u^-alpha + b)``
and ``kernel_two_term`` that of ``u^-rho / (u^-alpha + lam u^-beta + b)``,
written as a series of Prabhakar functions in ``r``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, SeriesDivergence
from .mlf import DEFAULT_TOL, mittag_leffler

__all__ = ["kernel_single", "kernel_two_term", "R_MAX", "GROWTH_LIMIT", "STOP_RUN"]

R_MAX = 64
GROWTH_LIMIT = 5  # consecutive growing summands before giving up
STOP_RUN = 3  # consecutive negligible summands that end the sum


def _prepare(b, t):
    tarr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(tarr) & (tarr > 0)):
        raise DomainError(f"kernels are defined for t > 0 only, got t={t}")
    barr = np.asarray(b, dtype=complex)
    if np.any(barr.real < -1e-12 * np.maximum(1.0, np.abs(barr))):
        raise DomainError("kernels need Re(b) >= 0")
    return np.broadcast_arrays(barr, tarr)


def kernel_single(alpha: float, rho: float, b, t, tol: float = DEFAULT_TOL):
    """``t^(alpha-rho) E_{alpha, alpha-rho+1}(-b t^alpha)``.

    ``b`` and ``t`` broadcast against each other.
    """
    barr, tarr = _prepare(b, t)
    z = -barr * tarr**alpha
    pre = tarr ** (alpha - rho)
    # mlf tolerance is relative to max(1, |E|); scale so the product meets tol
    mtol = max(tol / max(float(np.max(pre, initial=1.0)), 1.0), 1e-12)
    out = pre * np.asarray(mittag_leffler(alpha, alpha - rho + 1.0, 1.0, z, mtol))
    return complex(out) if out.ndim == 0 else out


def kernel_two_term(
    alpha: float,
    beta: float,
    lam: float,
    rho: float,
    b,
    t,
    tol: float = DEFAULT_TOL,
    r_max: int = R_MAX,
):
    """Sum over ``r`` of ``(-lam)^r t^((alpha-beta) r + alpha - rho) E^{r+1}_{alpha, alpha+(alpha-beta) r-rho+1}(-b t^alpha)``.

    With ``lam == 0`` only ``r = 0`` survives and the result is exactly
    :func:`kernel_single`.

    Raises
    ------
    SeriesDivergence
        If the summands grow for five consecutive ``r`` or ``r_max`` terms
        are used without three consecutive negligible summands. ``index``
        on the exception points at the offending entry of ``b``.
    """
    if r_max < 1:
        raise DomainError(f"r_max must be >= 1, got {r_max}")
    if lam == 0.0:
        return kernel_single(alpha, rho, b, t, tol)
    barr, tarr = _prepare(b, t)
    flat = barr.ravel()
    tt = tarr.ravel()
    z = -flat * tt**alpha
    total = np.zeros(flat.shape, dtype=complex)
    small_run = np.zeros(flat.shape, dtype=int)
    grow_run = np.zeros(flat.shape, dtype=int)
    prev = np.full(flat.shape, np.inf)
    active = np.ones(flat.shape, dtype=bool)
    for r in range(r_max):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        expo = (alpha - beta) * r + alpha - rho
        coef = (-lam) ** r * tt[idx] ** expo
        mtol = max(tol / max(float(np.max(np.abs(coef))), 1.0), 1e-12)
        e = np.asarray(mittag_leffler(alpha, expo + 1.0, r + 1.0, z[idx], mtol))
        term = coef * e
        total[idx] += term
        mag = np.abs(term)
        small = mag < tol * np.abs(total[idx])
        small_run[idx] = np.where(small, small_run[idx] + 1, 0)
        grow_run[idx] = np.where(mag > prev[idx], grow_run[idx] + 1, 0)
        prev[idx] = mag
        bad = grow_run[idx] >= GROWTH_LIMIT
        if bad.any():
            i = int(idx[np.argmax(bad)])
            raise SeriesDivergence(
                f"two-term kernel summands grew for {GROWTH_LIMIT} consecutive r "
                f"(|lam| t^(alpha-beta) = {abs(lam) * tt[i] ** (alpha - beta):.6g})",
                index=i,
            )
        active[idx[small_run[idx] >= STOP_RUN]] = False
    if active.any():
        i = int(np.flatnonzero(active)[0])
        raise SeriesDivergence(
            f"two-term kernel series not converged after r_max={r_max} terms "
            f"(|lam| t^(alpha-beta) = {abs(lam) * tt[i] ** (alpha - beta):.6g})",
            index=i,
        )
    out = total.reshape(barr.shape)
    return complex(out) if out.ndim == 0 else out
