"""Three-parameter Mittag-Leffler (Prabhakar) function.

.. math::

    E^{\\delta}_{\\alpha,\\beta}(z) = \\sum_{n\\ge 0}
        \\frac{(\\delta)_n z^n}{\\Gamma(n\\alpha + \\beta)\\, n!}

Three evaluation routes are combined by :func:`mittag_leffler`:

* the power series, used only where its rounding error estimate is below the
  requested tolerance (``|z| <= 50``);
* the large-``|z|`` expansion: algebraic powers of ``(-z)^{-delta-n}`` plus
  the residues of the poles of the Laplace-domain representation;
* numerical inversion of the Laplace transform
  ``s^{alpha*delta-beta} / (s^alpha - z)^delta`` on an optimal parabolic
  contour (Garrappa's OPC algorithm), again with pole residues added.

The second parameter ``beta`` may be any real number; gamma-function poles are
handled through :func:`reciprocal_gamma`, which is entire.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, gammasgn

from .errors import DomainError, NonConvergence

EPS = float(np.finfo(float).eps)
DEFAULT_TOL = 1e-10
SERIES_RADIUS = 50.0
TERM_CAP = 10_000
MIN_TERMS = 3
MAX_DELTA = 64
# below this |z| the large-argument expansion is not attempted
ASYMPTOTIC_MIN_RADIUS = 10.0
ASYMPTOTIC_TERM_CAP = 400

_LOG_EPS = math.log(EPS)


@dataclass(frozen=True)
class MLArgs:
    """Parameters and argument of ``E^delta_{alpha,beta}(z)``."""

    alpha: float
    beta: float
    delta: float
    z: complex

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            raise DomainError(f"alpha must be > 0, got {self.alpha}")
        if not self.delta > 0:
            raise DomainError(f"delta must be > 0, got {self.delta}")
        if not (math.isfinite(self.beta) and np.isfinite(self.z)):
            raise DomainError("beta and z must be finite")


@dataclass(frozen=True)
class MLResult:
    value: complex
    est_abs_error: float
    terms_used: int
    method: str = "series"


def reciprocal_gamma(x: float) -> float:
    """Return ``1/Gamma(x)``; exactly zero at the poles ``x = 0, -1, -2, ...``.

    Results below the smallest normal double underflow gradually to zero and
    results beyond the largest double are returned as signed infinity.
    """
    x = float(x)
    if math.isnan(x):
        return math.nan
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    if x > 171.0:
        return math.exp(-math.lgamma(x))
    try:
        g = math.gamma(x)
    except OverflowError:  # |x| tiny, next to the pole at 0
        return x * reciprocal_gamma(x + 1.0)
    if g != 0.0:
        return 1.0 / g
    # Gamma underflowed (x < -170): reflect, 1/Gamma(x) = Gamma(1-x) sin(pi x)/pi
    r = x - round(x)
    s = math.sin(math.pi * r) * (-1.0 if int(round(x)) % 2 else 1.0)
    log_mag = math.lgamma(1.0 - x) + math.log(abs(s)) - math.log(math.pi)
    if log_mag > 709.0:
        return math.copysign(math.inf, s)
    return math.copysign(math.exp(log_mag), s)


def _is_integer(v: float) -> bool:
    return float(v) == math.floor(v)


def _log_rgamma(arg: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``log|1/Gamma(arg)|`` and the sign of ``1/Gamma(arg)`` (0 at poles)."""
    arg = np.asarray(arg, dtype=float)
    pole = (arg <= 0) & (arg == np.floor(arg))
    with np.errstate(all="ignore"):
        log_mag = -gammaln(np.where(pole, 0.5, arg))
        sign = gammasgn(np.where(pole, 0.5, arg))
    log_mag = np.where(pole, -np.inf, log_mag)
    sign = np.where(pole, 0.0, sign)
    return log_mag, sign


def _series_coefficients(alpha: float, beta: float, delta: float, n: np.ndarray):
    """Log-magnitude, sign and rounding weight of ``(delta)_n/(n! Gamma(n alpha + beta))``."""
    n = np.asarray(n, dtype=float)
    log_poch = gammaln(delta + n) - gammaln(delta)
    log_fact = gammaln(n + 1.0)
    log_rg, sign = _log_rgamma(n * alpha + beta)
    logc = log_poch - log_fact + log_rg
    # absolute error of logc is about eps times the magnitude of its parts
    weight = np.abs(log_poch) + log_fact + np.where(np.isfinite(log_rg), np.abs(log_rg), 0.0)
    return logc, sign, weight


# ---------------------------------------------------------------------------
# power series


def mlf_series(args: MLArgs, tol: float = DEFAULT_TOL) -> MLResult:
    """Direct summation of the defining series with Neumaier compensation.

    Stops once three consecutive terms fall below ``tol * |partial sum|``.
    The error estimate combines a geometric tail bound with the accumulated
    rounding error of the individual terms.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    alpha, beta, delta, z = args.alpha, args.beta, args.delta, complex(args.z)
    if abs(z) > SERIES_RADIUS:
        raise DomainError(f"|z| = {abs(z):.6g} exceeds the series radius {SERIES_RADIUS}")
    if z == 0:
        return MLResult(complex(reciprocal_gamma(beta)), 0.0, 1, "series")

    log_r = math.log(abs(z))
    phase = z / abs(z)
    s_re = s_im = c_re = c_im = 0.0
    abs_sum = 0.0
    round_err = 0.0
    small = 0
    prev_mag = math.inf
    unit = 1.0 + 0.0j
    log_poch = 0.0
    for n in range(TERM_CAP):
        arg = n * alpha + beta
        if arg <= 0 and _is_integer(arg):  # 1/Gamma vanishes at the poles
            mag = 0.0
            term = 0.0j
            weight = 0.0
        else:
            log_fact = math.lgamma(n + 1.0)
            lrg = -math.lgamma(n * alpha + beta)
            logc = log_poch - log_fact + lrg + n * log_r
            mag = math.exp(logc) if logc < 709.0 else math.inf
            sign = 1.0 if arg > 0 else float(gammasgn(arg))
            term = sign * mag * unit
            weight = abs(log_poch) + log_fact + abs(lrg) + abs(n * log_r)
        if not math.isfinite(mag):
            raise NonConvergence(f"series term overflow at n={n} for |z|={abs(z):.6g}")
        for part, idx in ((term.real, 0), (term.imag, 1)):
            s, c = (s_re, c_re) if idx == 0 else (s_im, c_im)
            t = s + part
            if abs(s) >= abs(part):
                c += (s - t) + part
            else:
                c += (part - t) + s
            if idx == 0:
                s_re, c_re = t, c
            else:
                s_im, c_im = t, c
        abs_sum += mag
        round_err += mag * (weight + 4.0 + n) * EPS
        partial = abs(complex(s_re + c_re, s_im + c_im))
        if n >= MIN_TERMS and mag < tol * partial:
            small += 1
        elif n >= MIN_TERMS and mag == 0.0 and partial == 0.0:
            small += 1
        else:
            small = 0
        if small >= 3 and mag <= prev_mag:
            ratio = mag / prev_mag if prev_mag > 0 else 0.0
            tail = mag * ratio / (1.0 - ratio) if ratio < 1.0 else mag
            value = complex(s_re + c_re, s_im + c_im)
            return MLResult(value, tail + round_err + EPS * abs_sum, n + 1, "series")
        if mag > 0.0:
            prev_mag = mag
        unit *= phase
        log_poch += math.log(delta + n)
    raise NonConvergence(f"series did not converge within {TERM_CAP} terms")


def _series_many(alpha, beta, delta, z: np.ndarray):
    """Vectorized series; returns values, error estimates and term counts."""
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    out = np.zeros(z.shape, dtype=complex)
    err = np.zeros(z.shape)
    nterms = np.zeros(z.shape, dtype=int)
    nz = r > 0
    out[~nz] = reciprocal_gamma(beta)
    nterms[~nz] = 1
    if not nz.any():
        return out, err, nterms
    zz = z[nz]
    log_r = np.log(r[nz])
    theta = np.angle(zz)
    acc = np.zeros(zz.shape, dtype=complex)
    abs_sum = np.zeros(zz.shape)
    rerr = np.zeros(zz.shape)
    small = np.zeros(zz.shape, dtype=int)
    done = np.zeros(zz.shape, dtype=bool)
    tail = np.zeros(zz.shape)
    count = np.zeros(zz.shape, dtype=int)
    prev = np.full(zz.shape, np.inf)
    chunk = 64
    n0 = 0
    while n0 < TERM_CAP and not done.all():
        n = np.arange(n0, n0 + chunk)
        logc, sign, weight = _series_coefficients(alpha, beta, delta, n)
        for i in range(chunk):
            if done.all():
                break
            act = ~done
            if sign[i] == 0.0:
                mag = np.zeros(act.sum())
            else:
                lm = logc[i] + n[i] * log_r[act]
                with np.errstate(over="ignore"):
                    mag = np.exp(lm)
                term = sign[i] * mag * np.exp(1j * n[i] * theta[act])
                acc[act] += term
                rerr[act] += mag * (weight[i] + np.abs(n[i] * log_r[act]) + 4.0 + n[i]) * EPS
            abs_sum[act] += mag
            count[act] = n[i] + 1
            partial = np.abs(acc[act])
            is_small = (n[i] >= MIN_TERMS) & (mag <= 1e-18 * partial + 1e-300)
            sm = np.where(is_small, small[act] + 1, 0)
            small[act] = sm
            pv = prev[act]
            finish = (sm >= 3) & (mag <= pv)
            if finish.any():
                idx = np.flatnonzero(act)[finish]
                ratio = np.where(pv[finish] > 0, mag[finish] / pv[finish], 0.0)
                tail[idx] = np.where(ratio < 1.0, mag[finish] * ratio / (1.0 - np.minimum(ratio, 0.999)), mag[finish])
                done[idx] = True
            upd = mag > 0
            pv = np.where(upd, mag, pv)
            prev[act] = pv
            bad = ~np.isfinite(mag)
            if bad.any():
                idx = np.flatnonzero(act)[bad]
                tail[idx] = np.inf
                done[idx] = True
        n0 += chunk
    tail[~done] = np.inf
    out[nz] = acc
    err[nz] = tail + rerr + EPS * abs_sum
    nterms[nz] = count
    return out, err, nterms


# ---------------------------------------------------------------------------
# pole residues of the Laplace-domain representation


@functools.lru_cache(maxsize=256)
def _residue_coefficients(alpha: float, beta: float, m: int) -> np.ndarray:
    """Taylor coefficients ``q_0..q_{m-1}`` of ``(1+e)^(alpha m - beta) G(e)^(-m)``.

    ``G(e) = ((1+e)^alpha - 1)/(alpha e)``; the residue of
    ``e^s s^(alpha m - beta) (s^alpha - z)^(-m)`` at a pole ``s*`` is
    ``s*^(1-beta) e^(s*) alpha^(-m) sum_k q_k s*^(m-1-k)/(m-1-k)!``.

    The power recurrence for ``G^(-m)`` is unstable in double precision for
    high orders, so the coefficients are built in extended precision and
    rounded once.
    """
    q = _residue_coefficients_mp(alpha, beta, m, 40 + m)
    return np.array([float(v) for v in q])


@functools.lru_cache(maxsize=256)
def _residue_coefficients_mp(alpha: float, beta: float, m: int, digits: int) -> list:
    import mpmath as mp

    with mp.workdps(digits):
        a, b = mp.mpf(alpha), mp.mpf(beta)
        c = a * m - b
        binom_c, g = [], []
        bc, ga = mp.mpf(1), mp.mpf(1)
        for k in range(m):
            binom_c.append(bc)
            bc *= (c - k) / (k + 1)
            ga *= (a - k) / (k + 1)  # binom(alpha, k+1)
            g.append(ga / a)
        pw = [mp.mpf(1)] + [mp.mpf(0)] * (m - 1)
        for k in range(1, m):
            pw[k] = mp.fsum(((1 - m) * j - k) * g[j] * pw[k - j] for j in range(1, k + 1)) / k
        return [mp.fsum(binom_c[j] * pw[k - j] for j in range(k + 1)) for k in range(m)]


def _residues(alpha: float, beta: float, m: int, s: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Residues at the poles ``s`` (vectorized).

    The Laurent sum cancels when ``|s| < m``; entries whose rounding estimate
    exceeds ``1e-3 tol max(1, |res|)`` are recomputed in extended
    precision.
    """
    s = np.asarray(s, dtype=complex)
    q = _residue_coefficients(alpha, beta, m)
    i = np.arange(m)
    d = q[m - 1 - i] / np.exp(gammaln(i + 1.0))  # d_i multiplies s^i
    out = np.zeros(s.shape, dtype=complex)
    absum = np.zeros(s.shape)
    big = np.abs(s) > 1.0
    with np.errstate(all="ignore"):
        if big.any():
            sb = s[big]
            inv = 1.0 / sb
            poly = np.zeros(sb.shape, dtype=complex)
            apoly = np.zeros(sb.shape)
            for di in d:  # sum_i d_i s^(i-(m-1))
                poly = poly * inv + di
                apoly = apoly * np.abs(inv) + abs(di)
            pre = np.exp(sb + (m - beta) * np.log(sb) - m * math.log(alpha))
            out[big] = pre * poly
            absum[big] = np.abs(pre) * apoly
        sm = ~big
        if sm.any():
            ss = s[sm]
            poly = np.zeros(ss.shape, dtype=complex)
            apoly = np.zeros(ss.shape)
            for di in d[::-1]:
                poly = poly * ss + di
                apoly = apoly * np.abs(ss) + abs(di)
            pre = ss ** (1.0 - beta) * np.exp(ss) / alpha**m
            out[sm] = pre * poly
            absum[sm] = np.abs(pre) * apoly
    if not np.all(np.isfinite(absum)):
        raise NonConvergence("E^delta_{alpha,beta}(z) overflows double precision at this z")
    rounding = EPS * (4.0 * m + 8.0) * absum
    redo = np.flatnonzero(~(rounding <= 1e-3 * tol * np.maximum(1.0, np.abs(out))) & (absum > 0))
    for k in redo:
        cancel = absum[k] / max(abs(out[k]), 1e-300)
        digits = 20 + int(math.log10(max(cancel, 1.0)))
        out[k] = _residue_mp(alpha, beta, m, complex(s[k]), digits)
    return out


def _residue_mp(alpha: float, beta: float, m: int, s: complex, digits: int) -> complex:
    import mpmath as mp

    q = _residue_coefficients_mp(alpha, beta, m, 16 * ((digits + m) // 16 + 1))
    with mp.workdps(digits):
        sj = mp.mpc(s)
        total = mp.fsum(q[k] * sj ** (m - 1 - k) / mp.factorial(m - 1 - k) for k in range(m))
        return complex(sj ** (1 - mp.mpf(beta)) * mp.exp(sj) * total / mp.mpf(alpha) ** m)


def _pole_branches(alpha: float, theta: float) -> list[int]:
    """Integers j with ``-alpha pi < theta + 2 pi j <= alpha pi``."""
    lo = math.ceil((-alpha * math.pi - theta) / (2 * math.pi))
    hi = math.floor((alpha * math.pi - theta) / (2 * math.pi))
    return [j for j in range(lo, hi + 1) if -alpha * math.pi < theta + 2 * math.pi * j <= alpha * math.pi]


def _poles(alpha: float, z: complex) -> np.ndarray:
    r = abs(z)
    theta = math.atan2(z.imag, z.real)
    js = _pole_branches(alpha, theta)
    return np.array([r ** (1.0 / alpha) * np.exp(1j * (theta + 2 * math.pi * j) / alpha) for j in js], dtype=complex)


# ---------------------------------------------------------------------------
# large-|z| expansion


def _asymptotic_many(alpha: float, beta: float, m: int, z: np.ndarray, tol: float = DEFAULT_TOL):
    z = np.asarray(z, dtype=complex)
    w = -z
    log_r = np.log(np.abs(w))
    arg_w = np.angle(w)
    n = np.arange(ASYMPTOTIC_TERM_CAP, dtype=float)
    log_poch = gammaln(m + n) - gammaln(float(m)) - gammaln(n + 1.0)
    log_rg, sign = _log_rgamma(beta - alpha * (m + n))
    sign = sign * np.where(n % 2 == 0, 1.0, -1.0)
    acc = np.zeros(z.shape, dtype=complex)
    err = np.full(z.shape, np.inf)
    active = np.ones(z.shape, dtype=bool)
    prev = np.full(z.shape, np.inf)
    if not np.any(sign != 0):
        err[:] = 0.0
        active[:] = False
    for i in range(ASYMPTOTIC_TERM_CAP):
        if not active.any():
            break
        if sign[i] == 0.0:
            continue
        lm = log_poch[i] + log_rg[i] - (m + n[i]) * log_r[active]
        mag = np.exp(np.minimum(lm, 700.0))
        pv = prev[active]
        growing = mag > pv
        negligible = mag < 1e-20
        stop = growing | negligible
        idx = np.flatnonzero(active)
        err[idx[stop]] = mag[stop]
        keep = ~stop
        term = sign[i] * mag[keep] * np.exp(-1j * (m + n[i]) * arg_w[active][keep])
        acc[idx[keep]] += term
        prev[idx[keep]] = mag[keep]
        active[idx[stop]] = False
    if active.any():
        # ran out of terms: the next term bounds the error
        err[active] = prev[active]
    res = np.zeros(z.shape, dtype=complex)
    r = np.abs(z)
    theta = np.angle(z)
    for j in range(-2, 3):
        ang = theta + 2.0 * math.pi * j
        sel = (-alpha * math.pi < ang) & (ang <= alpha * math.pi)
        if sel.any():
            poles = r[sel] ** (1.0 / alpha) * np.exp(1j * ang[sel] / alpha)
            res[sel] += _residues(alpha, beta, m, poles, tol)
    return acc + res, err


# ---------------------------------------------------------------------------
# optimal parabolic contour


def _opt_param_rb(phi_j, phi_j1, pj, qj, log_epsilon):
    fac = 1.01
    f_max = math.exp(log_epsilon - _LOG_EPS)
    sq_phi_j = math.sqrt(phi_j)
    threshold = 2.0 * math.sqrt(log_epsilon - _LOG_EPS)
    sq_phi_j1 = min(math.sqrt(phi_j1), threshold - sq_phi_j)
    adm = False
    f_bar = 1.0
    if pj < 1e-14 and qj < 1e-14:
        sq_bar_j, sq_bar_j1 = sq_phi_j, sq_phi_j1
        adm = True
    elif pj < 1e-14:
        sq_bar_j = sq_phi_j
        f_min = fac * (sq_phi_j / (sq_phi_j1 - sq_phi_j)) ** qj if sq_phi_j > 0 else fac
        if f_min < f_max:
            f_bar = f_min + f_min / f_max * (f_max - f_min)
            fq = f_bar ** (-1.0 / qj)
            sq_bar_j1 = (2.0 * sq_phi_j1 - fq * sq_phi_j) / (2.0 + fq)
            adm = True
    elif qj < 1e-14:
        sq_bar_j1 = sq_phi_j1
        f_min = fac * (sq_phi_j1 / (sq_phi_j1 - sq_phi_j)) ** pj
        if f_min < f_max:
            f_bar = f_min + f_min / f_max * (f_max - f_min)
            fp = f_bar ** (-1.0 / pj)
            sq_bar_j = (2.0 * sq_phi_j + fp * sq_phi_j1) / (2.0 - fp)
            adm = True
    else:
        f_min = fac * (sq_phi_j + sq_phi_j1) / (sq_phi_j1 - sq_phi_j) ** max(pj, qj)
        if f_min < f_max:
            f_min = max(f_min, 1.5)
            f_bar = f_min + f_min / f_max * (f_max - f_min)
            fp = f_bar ** (-1.0 / pj)
            fq = f_bar ** (-1.0 / qj)
            w = -phi_j1 / log_epsilon
            den = 2.0 + w - (1.0 + w) * fp + fq
            sq_bar_j = ((2.0 + w + fq) * sq_phi_j + fp * sq_phi_j1) / den
            sq_bar_j1 = (-(1.0 + w) * fq * sq_phi_j + (2.0 + w - (1.0 + w) * fp) * sq_phi_j1) / den
            adm = True
    if not adm:
        return 0.0, 0.0, math.inf
    log_epsilon = log_epsilon - math.log(f_bar)
    w = -sq_bar_j1**2 / log_epsilon
    mu = (((1.0 + w) * sq_bar_j + sq_bar_j1) / (2.0 + w)) ** 2
    h = -2.0 * math.pi / log_epsilon * (sq_bar_j1 - sq_bar_j) / ((1.0 + w) * sq_bar_j + sq_bar_j1)
    if not (mu > 0 and h > 0):
        return 0.0, 0.0, math.inf
    n = math.ceil(math.sqrt(1.0 - log_epsilon / mu) / h)
    return mu, h, n


def _opt_param_ru(phi_j, pj, log_epsilon):
    sq_phi_j = math.sqrt(phi_j)
    phibar = phi_j * 1.01 if phi_j > 0 else 0.01
    sq_phibar = math.sqrt(phibar)
    f_min, f_max, f_tar = 1.0, 10.0, 5.0
    for _ in range(200):
        log_eps_phi = log_epsilon / phibar
        n = math.ceil(phibar / math.pi * (1.0 - 1.5 * log_eps_phi + math.sqrt(1.0 - 2.0 * log_eps_phi)))
        a = math.pi * n / phibar
        sq_mu = sq_phibar * abs(4.0 - a) / abs(7.0 - math.sqrt(1.0 + 12.0 * a))
        fbar = ((sq_phibar - sq_phi_j) / sq_mu) ** (-pj)
        if pj < 1e-14 or f_min < fbar < f_max:
            break
        sq_phibar = f_tar ** (-1.0 / pj) * sq_mu + sq_phi_j
        phibar = sq_phibar**2
    mu = sq_mu**2
    h = (-3.0 * a - 2.0 + 2.0 * math.sqrt(1.0 + 12.0 * a)) / (4.0 - a) / n
    threshold = log_epsilon - _LOG_EPS
    if mu > threshold:
        q = 0.0 if abs(pj) < 1e-14 else f_tar ** (-1.0 / pj) * math.sqrt(mu)
        phibar = (q + sq_phi_j) ** 2
        if phibar < threshold:
            w = math.sqrt(_LOG_EPS / (_LOG_EPS - log_epsilon))
            u = math.sqrt(-phibar / _LOG_EPS)
            mu = threshold
            n = math.ceil(w * log_epsilon / 2.0 / math.pi / (u * w - 1.0))
            h = math.sqrt(_LOG_EPS / (_LOG_EPS - log_epsilon)) / n
        else:
            return 0.0, 0.0, math.inf
    return mu, h, n


def _opc(alpha: float, beta: float, m: int, z: complex, tol: float = DEFAULT_TOL, log_epsilon: float = math.log(1e-15)):
    """Inverse Laplace transform of ``s^(alpha m - beta)/(s^alpha - z)^m`` at t = 1.

    Returns the value and an a-posteriori error estimate built from a step
    halving and the rounding level of the trapezoid sum.
    """
    poles = _poles(alpha, z)
    phi = (poles.real + np.abs(poles)) / 2.0
    order = np.argsort(phi)
    poles, phi = poles[order], phi[order]
    keep = phi > 1e-15
    on_axis = not keep.all()
    poles, phi = poles[keep], phi[keep]
    s_star = np.concatenate([[0.0], poles])
    phi_star = np.concatenate([[0.0], phi, [np.inf]])
    n_sing = len(s_star)
    p0 = max(0.0, -2.0 * (alpha * m - beta + 1.0))
    if on_axis:
        # a pole on the negative axis sits at the same contour distance as the origin
        p0 = max(p0, float(m))
    p = [p0] + [float(m)] * (n_sing - 1)
    q = [float(m)] * (n_sing - 1) + [math.inf]

    for _ in range(30):
        regions = [
            j for j in range(n_sing)
            if phi_star[j] < log_epsilon - _LOG_EPS and phi_star[j] < phi_star[j + 1]
        ]
        best = (math.inf, 0.0, 0.0, -1)
        for j in regions:
            if j < n_sing - 1:
                mu, h, n = _opt_param_rb(phi_star[j], phi_star[j + 1], p[j], q[j], log_epsilon)
            else:
                mu, h, n = _opt_param_ru(phi_star[j], p[j], log_epsilon)
            if n < best[0]:
                best = (n, mu, h, j)
        if best[0] <= 200:
            break
        log_epsilon += math.log(10.0)
    n, mu, h, j = best
    if not math.isfinite(n):
        raise NonConvergence(f"no admissible contour for z={z}")

    def integrand(u):
        s = mu * (1j * u + 1.0) ** 2
        ds = -2.0 * mu * u + 2.0j * mu
        with np.errstate(all="ignore"):
            f = np.exp(s) * s ** (alpha * m - beta) / (s**alpha - z) ** m * ds
        return np.where(np.isfinite(f), f, 0.0)

    # lengthen the contour until the end nodes are negligible; large
    # positive powers of s push the mass of the integrand outwards
    n = int(n)
    f = integrand(h * np.arange(-n, n + 1))
    while n < 20000 and abs(f[0]) + abs(f[-1]) > EPS * np.sum(np.abs(f)):
        extra = integrand(h * np.arange(n + 1, 2 * n + 1))
        f = np.concatenate([integrand(-h * np.arange(2 * n, n, -1)), f, extra])
        n *= 2
    mid = integrand(h * (np.arange(-n, n) + 0.5))
    coarse = h * np.sum(f) / (2.0j * math.pi)
    fine = 0.5 * (coarse + h * np.sum(mid) / (2.0j * math.pi))
    rounding = 8.0 * EPS * h * (np.sum(np.abs(f)) + np.sum(np.abs(mid))) / (4.0 * math.pi)
    value = complex(fine)
    outside = s_star[j + 1:]
    if outside.size:
        value += complex(np.sum(_residues(alpha, beta, m, outside, tol)))
    err = abs(fine - coarse) + rounding + EPS * abs(value)
    return value, err


def _series_mp(alpha: float, beta: float, delta: float, z: complex, tol: float):
    """Series in extended precision for points the double routes cannot certify."""
    import mpmath as mp

    r = abs(z)
    n = np.arange(0, TERM_CAP, dtype=float)
    logc, sign, _ = _series_coefficients(alpha, beta, delta, n)
    logt = np.where(sign != 0, logc + n * math.log(r), -np.inf)
    peak = float(np.max(logt)) / math.log(10.0)
    digits = int(max(peak, 0.0) - math.log10(tol)) + 15
    if digits > 3000:
        raise NonConvergence(f"extended-precision series would need {digits} digits at |z|={r:.6g}")
    # last index after the peak where terms fall below the target
    small = np.flatnonzero((logt < (math.log(tol) - 12 * math.log(10.0))) & (n > np.argmax(logt)))
    if small.size == 0:
        raise NonConvergence(f"series did not converge within {TERM_CAP} terms at |z|={r:.6g}")
    stop = int(small[0]) + MIN_TERMS
    with mp.workdps(digits):
        a, b, zz = mp.mpf(alpha), mp.mpf(beta), mp.mpc(z)
        coef = mp.mpf(1)
        pw = mp.mpc(1)
        terms = []
        for k in range(stop + 1):
            terms.append(coef * pw * mp.rgamma(k * a + b))
            coef *= (delta + k) / mp.mpf(k + 1)
            pw *= zz
        value = complex(mp.fsum(terms))
    return value, 10.0 * EPS * max(1.0, abs(value))


# ---------------------------------------------------------------------------
# dispatch


def _check_params(alpha: float, delta: float, tol: float) -> None:
    if not 0.0 < alpha <= 2.0:
        raise DomainError(f"alpha must lie in (0, 2], got {alpha}")
    if not delta > 0:
        raise DomainError(f"delta must be > 0, got {delta}")
    if delta > MAX_DELTA:
        raise DomainError(f"delta must be <= {MAX_DELTA}, got {delta}")
    if not tol >= 1e-12:
        raise DomainError(f"tol must be >= 1e-12, got {tol}")


def _safe_series_radius(alpha: float, beta: float, delta: float, tol: float, slack: float = 0.0) -> float:
    """Largest radius whose peak series term stays below ``e^slack * tol/eps``."""
    limit = math.log(tol / (EPS * 256.0)) + slack
    n = np.arange(0, 4000, dtype=float)
    logc, sign, _ = _series_coefficients(alpha, beta, delta, n)
    logc = np.where(sign != 0, logc, -np.inf)

    def peak(rad: float) -> float:
        return float(np.max(logc + n * math.log(rad)))

    lo, hi = 1e-3, SERIES_RADIUS
    if peak(hi) <= limit:
        return hi
    if peak(lo) > limit:
        return 0.0
    for _ in range(40):
        mid = math.sqrt(lo * hi)
        if peak(mid) <= limit:
            lo = mid
        else:
            hi = mid
    return lo


def _evaluate(alpha: float, beta: float, delta: float, z: np.ndarray, tol: float):
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    values = np.empty(flat.shape, dtype=complex)
    errors = np.full(flat.shape, np.inf)
    method = np.zeros(flat.shape, dtype="<U10")
    todo = np.ones(flat.shape, dtype=bool)

    r = np.abs(flat)
    zero = r == 0
    values[zero] = reciprocal_gamma(beta)
    errors[zero] = 0.0
    method[zero] = "series"
    todo &= ~zero

    if todo.any():
        # the acceptance test below is relative, so large values may still pass
        rad = _safe_series_radius(alpha, beta, delta, tol, slack=25.0)
        # in the growth sector the value is as large as the terms; past ~e^600 doubles overflow
        grow = _safe_series_radius(alpha, beta, delta, tol, slack=600.0)
        cand = todo & ((r <= rad) | ((flat.real > 0) & (r <= min(grow, SERIES_RADIUS))))
        if cand.any():
            v, e, _ = _series_many(alpha, beta, delta, flat[cand])
            ok = e <= tol * np.maximum(1.0, np.abs(v))
            idx = np.flatnonzero(cand)[ok]
            values[idx], errors[idx], method[idx] = v[ok], e[ok], "series"
            todo[idx] = False

    integer_delta = _is_integer(delta)
    if todo.any() and not integer_delta:
        raise DomainError(
            "non-integer delta is supported only inside the series domain; "
            f"got delta={delta}, |z|={r[todo].max():.6g}"
        )
    if todo.any() and (flat.real[todo] > 0).any() and (r[todo & (flat.real > 0)] > SERIES_RADIUS).any():
        raise DomainError("Re(z) > 0 is supported only for |z| <= 50")

    m = int(delta)
    if todo.any():
        cand = todo & (r >= ASYMPTOTIC_MIN_RADIUS) & (flat.real <= 0)
        if cand.any():
            v, e = _asymptotic_many(alpha, beta, m, flat[cand], tol)
            ok = e <= 0.01 * tol * np.maximum(1.0, np.abs(v))
            idx = np.flatnonzero(cand)[ok]
            values[idx], errors[idx], method[idx] = v[ok], e[ok], "asymptotic"
            todo[idx] = False

    for i in np.flatnonzero(todo):
        zi = complex(flat[i])
        v, e = _opc(alpha, beta, m, zi, tol)
        method[i] = "contour"
        if not e <= 0.1 * tol * max(1.0, abs(v)):
            # high-order poles near the contour: fall back to extended precision
            v, e = _series_mp(alpha, beta, delta, zi, tol)
            method[i] = "series-mp"
        values[i], errors[i] = v, e
    return values.reshape(z.shape), errors.reshape(z.shape), method.reshape(z.shape)


def mittag_leffler(alpha: float, beta: float, delta: float, z, tol: float = DEFAULT_TOL):
    """Vectorized ``E^delta_{alpha,beta}(z)``.

    ``z`` may be a scalar or any array; the result has the same shape (a
    Python complex for scalar input).
    """
    _check_params(alpha, delta, tol)
    scalar = np.ndim(z) == 0
    values, _, _ = _evaluate(alpha, beta, delta, np.atleast_1d(z), tol)
    return complex(values[0]) if scalar else values


def mlf_eval(args: MLArgs, tol: float = DEFAULT_TOL) -> MLResult:
    """Evaluate ``E^delta_{alpha,beta}(z)`` to ``tol * max(1, |E|)``.

    Raises
    ------
    DomainError
        If ``alpha`` is outside (0, 2], ``delta`` exceeds 64, ``tol < 1e-12``,
        or ``z`` lies outside the supported region.
    """
    _check_params(args.alpha, args.delta, tol)
    values, errors, method = _evaluate(args.alpha, args.beta, args.delta, np.array([args.z]), tol)
    if method[0] == "series":
        res = mlf_series(args, tol) if abs(args.z) > 0 else None
        if res is not None and res.est_abs_error <= tol * max(1.0, abs(res.value)):
            return res
    return MLResult(complex(values[0]), float(errors[0]), 0, str(method[0]))
