import math

import numpy as np
import pytest

from fracgreen import DomainError, SeriesDivergence, kernel_single, kernel_two_term, mlf_bigfloat, MLArgs


def test_relaxation_and_oscillation():
    assert kernel_single(1, 1, 1, 2) == pytest.approx(math.exp(-2), rel=1e-12)
    assert kernel_single(2, 2, 9, 1) == pytest.approx(math.cos(3), rel=1e-12)
    # rho = 2 at alpha = 2 integrates cos: sin(omega t)/omega
    assert kernel_single(2, 1, 4, 0.7) == pytest.approx(math.sin(1.4) / 2, rel=1e-12)


def test_broadcasting():
    b = np.array([0.0, 1.0, 10.0])[:, None]
    t = np.array([0.5, 1.0, 2.0])[None, :]
    out = kernel_single(1.5, 1.0, b, t)
    assert out.shape == (3, 3)
    assert out[1, 2] == pytest.approx(kernel_single(1.5, 1.0, 1.0, 2.0), rel=1e-14)


def test_lambda_zero_is_exact():
    b = np.linspace(0, 30, 41) + 0.5j
    a = kernel_two_term(1.7, 1.3, 0.0, 1.0, b, 1.2)
    assert np.array_equal(a, kernel_single(1.7, 1.0, b, 1.2))


def test_two_term_against_bigfloat():
    alpha, beta, lam, rho, b, t = 1.6, 1.2, 0.4, 2.0, 2.5, 1.3
    ref = 0j
    for r in range(120):
        e = (alpha - beta) * r + alpha - rho
        ref += (-lam) ** r * t**e * mlf_bigfloat(MLArgs(alpha, e + 1, r + 1, -b * t**alpha), 60)
    assert abs(kernel_two_term(alpha, beta, lam, rho, b, t) - ref) < 1e-10


def test_divergence_reports_index():
    # alpha < beta: the summands grow like (lam t^(alpha-beta))^r at small b t^alpha
    b = np.array([0.0, 0.0, 1e6])
    with pytest.raises(SeriesDivergence) as info:
        kernel_two_term(1.2, 1.9, 50.0, 1.0, b, 0.01)
    assert info.value.index in (0, 1, 2)


def test_bad_time_and_symbol():
    with pytest.raises(DomainError):
        kernel_single(1.0, 1.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        kernel_single(1.0, 1.0, -1.0, 1.0)
    with pytest.raises(DomainError):
        kernel_two_term(1.5, 1.2, 0.1, 1.0, 1.0, 1.0, r_max=0)
