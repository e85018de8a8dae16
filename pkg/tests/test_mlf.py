import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracgreen import DomainError, MLArgs, mittag_leffler, mlf_bigfloat, mlf_eval, mlf_series, reciprocal_gamma


def close(a, b, tol=1e-10):
    return abs(a - b) <= tol * max(1.0, abs(b))


@pytest.mark.parametrize("z", [0.0, 1.0, -3.5, 2 + 2j, -40.0, -400.0 + 30j, -1e4, 1e-8j])
def test_exp_identity(z):
    if abs(z) > 50 and z.real > 0:
        pytest.skip("outside the envelope")
    assert close(mlf_eval(MLArgs(1, 1, 1, z)).value, cmath.exp(z))


@pytest.mark.parametrize("x", [0.0, 0.3, 2.0, 7.5, 20.0, 95.0, 1000.0])
def test_cos_and_sinc(x):
    z = -x * x
    assert close(mlf_eval(MLArgs(2, 1, 1, z)).value, math.cos(x))
    if x:
        assert close(mlf_eval(MLArgs(2, 2, 1, z)).value, math.sin(x) / x)


def test_erfc_identity():
    # E_{1/2,1}(-x) = exp(x^2) erfc(x)
    for x in (0.1, 1.0, 4.0, 30.0, 300.0):
        ref = complex(mp.exp(x * x) * mp.erfc(x))
        assert close(mlf_eval(MLArgs(0.5, 1, 1, -x)).value, ref)


def test_first_derivative_identity():
    # E^2_{1,1}(z) = (1 + z) e^z is the Prabhakar case delta = 2
    for z in (-0.5, -12.0, 3.0, -60 + 5j):
        assert close(mlf_eval(MLArgs(1, 1, 2, z)).value, (1 + z) * cmath.exp(z))


@settings(max_examples=60, deadline=None)
@given(
    alpha=st.floats(0.2, 2.0),
    beta=st.floats(0.1, 3.0),
    r=st.floats(0.0, 60.0),
    phi=st.floats(math.pi / 2, math.pi),
)
def test_recurrence(alpha, beta, r, phi):
    # E_{a,b}(z) = z E_{a,a+b}(z) + 1/Gamma(b)
    z = complex(-abs(r * math.cos(phi)), r * math.sin(phi))
    lhs = mlf_eval(MLArgs(alpha, beta, 1, z)).value
    rhs = z * mlf_eval(MLArgs(alpha, alpha + beta, 1, z)).value + reciprocal_gamma(beta)
    scale = max(1.0, abs(lhs), abs(z) * abs(rhs - reciprocal_gamma(beta)))
    assert abs(lhs - rhs) <= 1e-9 * scale


@settings(max_examples=40, deadline=None)
@given(alpha=st.floats(0.3, 2.0), beta=st.floats(-2.0, 3.0), m=st.integers(1, 8), r=st.floats(0.0, 30.0))
def test_against_bigfloat(alpha, beta, m, r):
    # keep the extended-precision reference cheap: |z|^(1/alpha) <= 100
    r = min(r, 100.0**alpha)
    z = complex(-r, 0.1 * r)
    ref = mlf_bigfloat(MLArgs(alpha, beta, m, z), 60)
    assert close(mittag_leffler(alpha, beta, m, z), ref)


def test_conjugate_symmetry():
    z = np.array([-3 + 4j, -100 - 20j, -0.2 + 1e-3j])
    a = mittag_leffler(0.8, 1.3, 2, z)
    b = mittag_leffler(0.8, 1.3, 2, z.conj())
    assert np.allclose(a, b.conj(), rtol=1e-12, atol=1e-14)


def test_vectorized_matches_scalar():
    z = np.linspace(-80, 0, 17) + 3j
    vec = mittag_leffler(1.4, 0.7, 3, z)
    assert np.allclose(vec, [mittag_leffler(1.4, 0.7, 3, w) for w in z], rtol=0, atol=1e-13)


def test_series_result_fields():
    res = mlf_series(MLArgs(1, 1, 1, 0.5))
    assert res.method == "series" and res.terms_used > 3
    assert res.est_abs_error < 1e-10


def test_reciprocal_gamma_poles():
    for n in range(0, 6):
        assert reciprocal_gamma(-n) == 0.0
    assert reciprocal_gamma(5.0) == pytest.approx(1 / 24, rel=1e-15)
    assert reciprocal_gamma(-0.5) == pytest.approx(1 / math.gamma(-0.5), rel=1e-14)


@pytest.mark.parametrize(
    "args",
    [
        dict(alpha=0.0, beta=1, delta=1, z=1.0),
        dict(alpha=2.5, beta=1, delta=1, z=1.0),
        dict(alpha=1.0, beta=1, delta=0.0, z=1.0),
        dict(alpha=1.0, beta=1, delta=1, z=100.0),
        dict(alpha=1.0, beta=1, delta=1.5, z=-2000.0),
    ],
)
def test_domain_errors(args):
    with pytest.raises(DomainError):
        mlf_eval(MLArgs(**args))
