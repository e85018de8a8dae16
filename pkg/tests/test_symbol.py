import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracgreen import DomainError, RieszFellerTerm, SpaceOperator, ThetaNotZero, b_of_k, riesz_feller_symbol, sigma_of_k


@st.composite
def terms(draw):
    gamma = draw(st.floats(0.05, 2.0))
    bound = min(gamma, 2.0 - gamma)
    theta = draw(st.floats(-bound, bound))
    return RieszFellerTerm(draw(st.floats(0.01, 10.0)), gamma, theta)


operators = st.lists(terms(), min_size=1, max_size=4).map(SpaceOperator)
ks = st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=20).map(np.array)


@settings(max_examples=80)
@given(op=operators, k=ks)
def test_hermitian(op, k):
    assert np.allclose(b_of_k(op, -k), np.conj(b_of_k(op, k)), rtol=1e-14, atol=0)


@settings(max_examples=80)
@given(op=operators, k=ks)
def test_nonnegative_real_part(op, k):
    assert np.all(np.real(b_of_k(op, k)) >= -1e-12 * np.abs(b_of_k(op, k)))


@settings(max_examples=80)
@given(term=terms(), k=st.floats(-100, 100), c=st.floats(0.01, 50))
def test_homogeneity(term, k, c):
    lhs = riesz_feller_symbol(term, c * k)
    rhs = c**term.gamma * riesz_feller_symbol(term, k)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def test_known_values():
    t = RieszFellerTerm(2.0, 1.0, 0.5)
    want = 3.0 * complex(math.cos(math.pi / 4), math.sin(math.pi / 4))
    assert riesz_feller_symbol(t, 3.0) == pytest.approx(want)
    assert riesz_feller_symbol(t, 0.0) == 0
    op = SpaceOperator([(1.0, 2.0), (0.5, 1.0, 0.0)])
    assert sigma_of_k(op, -2.0) == pytest.approx(5.0)
    assert np.allclose(b_of_k(op, [1.0, -2.0]), [1.5, 5.0])


@pytest.mark.parametrize("mu, gamma, theta", [(0.0, 1, 0), (1, 0.0, 0), (1, 2.5, 0), (1, 1.5, 0.6), (1, 0.3, -0.31)])
def test_invalid_terms(mu, gamma, theta):
    with pytest.raises(DomainError):
        RieszFellerTerm(mu, gamma, theta)


def test_theta_bound_message():
    with pytest.raises(DomainError, match=r"min\(gamma, 2-gamma\)"):
        RieszFellerTerm(1.0, 1.8, 0.5)


def test_sigma_needs_symmetric_operator():
    op = SpaceOperator([RieszFellerTerm(1.0, 1.0, 0.2)])
    assert not op.symmetric
    with pytest.raises(ThetaNotZero):
        sigma_of_k(op, 1.0)


def test_operator_from_dicts():
    op = SpaceOperator([{"mu": 1, "gamma": 2}, {"mu": 0.2, "gamma": 0.7, "theta": 0.1}])
    assert len(op) == 2 and op.terms[1].theta == pytest.approx(0.1)
    with pytest.raises(DomainError):
        SpaceOperator([])
