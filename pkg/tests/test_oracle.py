import math

import numpy as np
import pytest

from conftest import gaussian
from fracgreen import (
    DomainError,
    FDConfig,
    Grid1D,
    InitialData,
    MLArgs,
    ProblemSpec,
    RieszFellerTerm,
    SourceTerm,
    SpaceOperator,
    StabilityViolation,
    ThetaNotZero,
    gl_fd_solver,
    kernel_single,
    mlf_bigfloat,
    solve,
    sumudu_numeric,
)
from fracgreen.oracle import dalembert, gl_weights, heat_kernel


def test_bigfloat_closed_forms():
    assert mlf_bigfloat(MLArgs(1, 1, 1, -300.0)) == pytest.approx(math.exp(-300), rel=1e-14)
    assert mlf_bigfloat(MLArgs(2, 1, 1, -400.0)) == pytest.approx(math.cos(20), rel=1e-13)
    assert mlf_bigfloat(MLArgs(1, 1, 3, 2.0)) == pytest.approx(math.exp(2) * (1 + 2 * 2 + 2**2 / 2), rel=1e-14)


def test_bigfloat_limits():
    with pytest.raises(DomainError):
        mlf_bigfloat(MLArgs(1, 1, 1, 1.0), digits=30)
    with pytest.raises(DomainError):
        mlf_bigfloat(MLArgs(1, 1, 1, -2e4))


@pytest.mark.parametrize(
    "f, u, want",
    [
        (lambda s: np.ones_like(s), 0.7, 1.0),
        (lambda s: s, 0.5, 0.5),
        (lambda s: np.exp(-s), 1.0, 0.5),
        (lambda s: np.sin(s), 0.3, 0.3 / 1.09),
    ],
)
def test_sumudu_elementary(f, u, want):
    assert sumudu_numeric(f, u) == pytest.approx(want, abs=1e-10)


def test_sumudu_fractional_power():
    # S[t^a / Gamma(a+1)](u) = u^a
    a = -0.4
    got = sumudu_numeric(lambda s: s**a / math.gamma(a + 1), 0.8, endpoint_exponent=a)
    assert got == pytest.approx(0.8**a, abs=1e-9)


@pytest.mark.parametrize("alpha", [0.6, 1.0, 1.5])
@pytest.mark.parametrize("gamma", [1.2, 2.0])
def test_sumudu_of_kernel(alpha, gamma):
    b = 1.3**gamma
    for rho in (1.0, 2.0):
        if alpha - rho <= -1:  # t^(alpha-rho) not integrable at 0
            continue
        g = sumudu_numeric(lambda s: np.real(kernel_single(alpha, rho, b, s)), 0.5, endpoint_exponent=alpha - rho, tol=1e-9)
        assert g == pytest.approx(0.5 ** (alpha - rho) / (1 + b * 0.5**alpha), abs=1e-7)


def test_gl_weights():
    assert np.allclose(gl_weights(1.0, 4), [1, -1, 0, 0])
    assert np.allclose(gl_weights(2.0, 4), [1, -2, 1, 0])
    assert np.allclose(gl_weights(0.5, 3), [1, -0.5, -0.125])


def test_closed_forms():
    assert heat_kernel(0.0, 1.0) == pytest.approx(1 / math.sqrt(4 * math.pi))
    assert dalembert(np.cos, 0.0, math.pi) == pytest.approx(-1.0)


def test_fd_heat_equation():
    op = SpaceOperator([RieszFellerTerm(1.0, 2.0)])
    cfg = FDConfig(128, 4000, 1e-3 * 1.0, -20.0, 20.0, 1.0, op)
    fd = gl_fd_solver(cfg, {"f": InitialData.delta()})
    # first order in dt; dt = 1e-3 leaves a gap of order 1e-4
    assert np.max(np.abs(fd.values - heat_kernel(fd.x, cfg.t_final))) < 2e-4


def test_fd_matches_spectral_two_term():
    g = Grid1D(-20.0, 20.0, 128)
    op = SpaceOperator([RieszFellerTerm(1.0, 2.0)])
    data = InitialData.from_function(gaussian, g)
    spec = ProblemSpec(2.0, op, lam=0.1, beta=1.5, init_f=data)
    ref = solve("theorem2", spec, 1.0, g)
    gaps = []
    for nt in (200, 400):
        cfg = FDConfig(128, nt, 1.0 / nt, -20.0, 20.0, 2.0, op, beta=1.5, lam=0.1)
        gaps.append(np.max(np.abs(gl_fd_solver(cfg, {"f": data}).values - ref.values)))
    assert gaps[0] < 5e-3 and gaps[1] < 0.6 * gaps[0]


def test_fd_with_source():
    g = Grid1D(-20.0, 20.0, 128)
    op = SpaceOperator([RieszFellerTerm(1.0, 2.0)])
    src = SourceTerm.separable(gaussian(g.x), lambda s: np.exp(-s))
    ref = solve("corollary2", ProblemSpec(0.8, op, source=src), 1.0, g)
    fd = gl_fd_solver(FDConfig(128, 1600, 1 / 1600, -20.0, 20.0, 0.8, op), {}, source=src)
    assert np.max(np.abs(fd.values - ref.values)) < 5e-3


def test_fd_zero_data():
    op = SpaceOperator([RieszFellerTerm(1.0, 2.0)])
    fd = gl_fd_solver(FDConfig(64, 50, 0.01, -10.0, 10.0, 1.5, op), (InitialData.zero(), InitialData.zero()))
    assert not np.any(fd.values)


def test_fd_stability_guard():
    op = SpaceOperator([RieszFellerTerm(1.0, 2.0)])
    with pytest.raises(StabilityViolation, match="stability bound"):
        gl_fd_solver(FDConfig(512, 10, 0.1, -10.0, 10.0, 1.5, op), {"f": InitialData.delta()})


def test_fd_needs_symmetric_operator():
    op = SpaceOperator([RieszFellerTerm(1.0, 1.5, 0.2)])
    with pytest.raises(ThetaNotZero):
        gl_fd_solver(FDConfig(64, 10, 0.01, -10.0, 10.0, 1.5, op), {"f": InitialData.delta()})
