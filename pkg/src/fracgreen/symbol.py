"""Multi-term Riesz-Feller space operator and its Fourier symbol.

Each term contributes ``mu |k|^gamma exp(i sign(k) theta pi/2)``; the
operator symbol ``b(k)`` is the sum over terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ThetaNotZero

__all__ = [
    "RieszFellerTerm",
    "SpaceOperator",
    "riesz_feller_symbol",
    "b_of_k",
    "sigma_of_k",
]


@dataclass(frozen=True)
class RieszFellerTerm:
    mu: float
    gamma: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        mu, gamma, theta = float(self.mu), float(self.gamma), float(self.theta)
        if not (math.isfinite(mu) and mu > 0):
            raise DomainError(f"mu must be > 0, got {self.mu}")
        if not (0.0 < gamma <= 2.0):
            raise DomainError(f"gamma must lie in (0, 2], got {self.gamma}")
        bound = min(gamma, 2.0 - gamma)
        if not (math.isfinite(theta) and abs(theta) <= bound + 1e-15):
            raise DomainError(
                f"|theta| <= min(gamma, 2-gamma) = {bound:g} violated: theta={self.theta}, gamma={self.gamma}"
            )
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "theta", theta)


@dataclass(frozen=True)
class SpaceOperator:
    terms: tuple[RieszFellerTerm, ...]

    def __init__(self, terms: Iterable[RieszFellerTerm | Sequence[float] | dict]):
        built = []
        for t in terms:
            if isinstance(t, RieszFellerTerm):
                built.append(t)
            elif isinstance(t, dict):
                built.append(RieszFellerTerm(t["mu"], t["gamma"], t.get("theta", 0.0)))
            else:
                built.append(RieszFellerTerm(*t))
        if not built:
            raise DomainError("a space operator needs at least one term")
        object.__setattr__(self, "terms", tuple(built))

    @property
    def symmetric(self) -> bool:
        """True when every term has ``theta == 0``."""
        return all(t.theta == 0.0 for t in self.terms)

    def __len__(self) -> int:
        return len(self.terms)


def riesz_feller_symbol(term: RieszFellerTerm, k):
    """``|k|^gamma exp(i sign(k) theta pi / 2)``, with ``sign(0) = 0``.

    Accepts scalar or array ``k``; a scalar input returns a Python complex.
    """
    ka = np.asarray(k, dtype=float)
    mag = np.abs(ka) ** term.gamma
    if term.theta == 0.0:
        out = mag.astype(complex)
    else:
        out = mag * np.exp(1j * np.sign(ka) * term.theta * math.pi / 2.0)
    return complex(out) if out.ndim == 0 else out


def b_of_k(op: SpaceOperator, k):
    """Operator symbol ``sum_j mu_j Psi_j(k)``; ``Re b >= 0`` for valid terms."""
    ka = np.asarray(k, dtype=float)
    out = np.zeros(ka.shape, dtype=complex)
    for term in op.terms:
        out = out + term.mu * np.asarray(riesz_feller_symbol(term, ka))
    return complex(out) if out.ndim == 0 else out


def sigma_of_k(op: SpaceOperator, k):
    """Real symbol ``sum_j mu_j |k|^gamma_j`` for symmetric operators."""
    bad = [t for t in op.terms if t.theta != 0.0]
    if bad:
        raise ThetaNotZero(f"sigma(k) needs theta = 0 in every term, got theta={bad[0].theta}")
    ka = np.abs(np.asarray(k, dtype=float))
    out = np.zeros(ka.shape)
    for term in op.terms:
        out = out + term.mu * ka**term.gamma
    return float(out) if out.ndim == 0 else out
