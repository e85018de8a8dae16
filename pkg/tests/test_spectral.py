import math

import numpy as np
import pytest

from conftest import gaussian
from fracgreen import (
    DomainError,
    Grid1D,
    InitialData,
    ProblemSpec,
    RieszFellerTerm,
    SeriesDivergence,
    SourceTerm,
    SpaceOperator,
    ThetaNotZero,
    forward_transform,
    solve,
    solve_corollary2,
    solve_theorem1,
    solve_theorem2,
    source_convolution,
    synthesize,
)
from fracgreen.errors import EdgeDecayViolation
from fracgreen.spectral import expected_mass, mass_identity


def test_grid_geometry():
    g = Grid1D(-10.0, 10.0, 64)
    assert g.dx == pytest.approx(20 / 64)
    assert g.x[0] == -10.0 and g.x[-1] == pytest.approx(10 - g.dx)
    assert g.k[32] == 0.0
    d = g.doubled()
    assert d.n == 128 and d.dx == g.dx and np.allclose(d.x[32:96], g.x)


def test_gaussian_transform():
    # e^{-x^2} -> e^{-k^2/4} / sqrt(2) in the symmetric convention
    g = Grid1D(-20.0, 20.0, 512)
    ft = forward_transform(InitialData.from_function(gaussian, g), g)
    assert np.max(np.abs(ft.values - np.exp(-g.k**2 / 4) / math.sqrt(2))) < 1e-14


def test_unit_variance_gaussian_transform():
    g = Grid1D(-20.0, 20.0, 1024)
    ft = forward_transform(InitialData.from_function(lambda x: np.exp(-(x**2) / 2), g), g)
    assert np.max(np.abs(ft.values - np.exp(-g.k**2 / 2))) < 1e-10


def test_shifted_transform_phase():
    g = Grid1D(-20.0, 20.0, 512)
    ft = forward_transform(InitialData.from_function(lambda x: gaussian(x, 2.0), g), g)
    want = np.exp(2j * g.k) * np.exp(-g.k**2 / 4) / math.sqrt(2)
    assert np.max(np.abs(ft.values - want)) < 1e-14


def test_round_trip():
    g = Grid1D(-15.0, 25.0, 256)
    f = gaussian(g.x, 3.0, 1.7) - 0.5 * gaussian(g.x, -1.0, 0.8)
    back = synthesize(forward_transform(InitialData.sampled(f), g).values, g)
    assert np.max(np.abs(back - f)) < 1e-14


def test_delta_transform_and_mass():
    g = Grid1D(-5.0, 5.0, 128)
    ft = forward_transform(InitialData.delta(), g)
    assert np.allclose(ft.values, 1 / math.sqrt(2 * math.pi))
    assert g.dx * np.sum(synthesize(ft.values, g).real) == pytest.approx(1.0, abs=1e-13)


def test_edge_decay_rejected(small_grid, laplacian):
    slow = InitialData.from_function(lambda x: 1.0 / (1.0 + x**2), small_grid)
    with pytest.raises(EdgeDecayViolation, match="decay"):
        solve_corollary2(ProblemSpec(0.5, laplacian, init_f=slow), 1.0, small_grid)


@pytest.mark.parametrize(
    "mode, kwargs",
    [
        ("theorem1", dict(alpha=0.9)),
        ("corollary2", dict(alpha=1.5)),
        ("theorem1", dict(alpha=1.5, lam=0.1)),
        ("theorem2", dict(alpha=1.5, lam=0.1, beta=2.5)),
        ("theorem2", dict(alpha=0.8, lam=0.1, beta=1.5)),
        ("bogus", dict(alpha=1.5)),
    ],
)
def test_mode_constraints(mode, kwargs, small_grid, laplacian):
    spec = ProblemSpec(operator=laplacian, init_f=InitialData.delta(), **kwargs)
    with pytest.raises(DomainError):
        solve(mode, spec, 1.0, small_grid)


def test_corollary2_needs_zero_g(small_grid, laplacian):
    spec = ProblemSpec(0.7, laplacian, init_f=InitialData.delta(), init_g=InitialData.delta())
    with pytest.raises(DomainError, match="must be zero"):
        solve_corollary2(spec, 1.0, small_grid)


def test_symmetric_path_rejects_theta(small_grid):
    op = SpaceOperator([RieszFellerTerm(1.0, 1.5, 0.3)])
    with pytest.raises(ThetaNotZero):
        solve("corollary1", ProblemSpec(1.5, op, init_f=InitialData.delta()), 1.0, small_grid)


def test_nonpositive_time(small_grid, laplacian):
    with pytest.raises(DomainError):
        solve_theorem1(ProblemSpec(1.5, laplacian, init_f=InitialData.delta()), 0.0, small_grid)


def test_zero_data_gives_zero(small_grid, laplacian):
    sol = solve_theorem1(ProblemSpec(1.5, laplacian), 1.0, small_grid)
    assert not np.any(sol.values)


def test_skewed_operator_moves_mass(small_grid):
    # a nonzero skewness makes the density asymmetric but keeps it real
    op = SpaceOperator([RieszFellerTerm(1.0, 1.5, 0.4)])
    g = Grid1D(-40.0, 40.0, 2048)
    sol = solve_corollary2(ProblemSpec(1.0, op, init_f=InitialData.from_function(gaussian, g)), 1.0, g)
    mirror = sol.values[1:][::-1]
    assert np.max(np.abs(sol.values[1:] - mirror)) > 1e-3
    dx_sum, zero_mode = mass_identity(sol)
    assert dx_sum == pytest.approx(math.sqrt(math.pi), abs=1e-10)
    assert dx_sum == pytest.approx(zero_mode, abs=1e-12)


def test_source_constant_in_time():
    # alpha = 1: int_0^t exp(-b (t - s)) ds = (1 - e^{-b t}) / b, times phi*(k)
    op = SpaceOperator([RieszFellerTerm(1.0, 2.0)])
    prof = lambda k: np.exp(-np.asarray(k) ** 2 / 4) / math.sqrt(2)
    spec = ProblemSpec(1.0, op, source=SourceTerm.separable(prof, lambda s: np.ones_like(s)))
    k = np.array([0.0, 0.5, 1.0, 3.0])
    got = source_convolution(spec, k, 2.0)
    b = k**2
    with np.errstate(divide="ignore", invalid="ignore"):
        factor = np.where(b > 0, -np.expm1(-2.0 * b) / b, 2.0)
    assert np.max(np.abs(got - factor * prof(k))) < 1e-10


def test_source_wave_equation():
    # alpha = 2, b = w^2, phi(t) = 1: int_0^t sin(w s)/w ds = (1 - cos w t) / w^2
    op = SpaceOperator([RieszFellerTerm(1.0, 2.0)])
    spec = ProblemSpec(2.0, op, source=SourceTerm.separable(lambda k: np.ones_like(k), lambda s: np.ones_like(s)))
    k = np.array([0.3, 1.0, 4.0])
    got = source_convolution(spec, k, 1.5)
    assert np.max(np.abs(got - (1 - np.cos(1.5 * k)) / k**2)) < 1e-10


def test_sampled_source_matches_separable():
    g = Grid1D(-20.0, 20.0, 128)
    op = SpaceOperator([RieszFellerTerm(1.0, 2.0)])
    prof = gaussian(g.x)
    times = np.linspace(0.0, 1.0, 3)
    sep = ProblemSpec(0.7, op, source=SourceTerm.separable(prof, lambda s: 1.0 + s))
    samp = ProblemSpec(0.7, op, source=SourceTerm.sampled(np.outer(1.0 + times, prof), times))
    a = solve_corollary2(sep, 1.0, g)
    b = solve_corollary2(samp, 1.0, g)
    assert np.max(np.abs(a.values - b.values)) < 1e-9


def test_source_mass_closed_form():
    g = Grid1D(-20.0, 20.0, 256)
    op = SpaceOperator([RieszFellerTerm(0.5, 1.2)])
    spec = ProblemSpec(1.6, op, init_f=InitialData.delta(), source=SourceTerm.separable(gaussian(g.x), lambda s: np.exp(-s)))
    sol = solve_theorem1(spec, 0.8, g)
    dx_sum, _ = mass_identity(sol)
    assert abs(dx_sum - expected_mass(spec, 0.8, g)) < 1e-8


def test_two_term_mass_and_fd_agreement():
    g = Grid1D(-20.0, 20.0, 256)
    op = SpaceOperator([RieszFellerTerm(1.0, 2.0)])
    spec = ProblemSpec(2.0, op, lam=0.1, beta=1.5, init_f=InitialData.from_function(gaussian, g))
    sol = solve_theorem2(spec, 1.0, g)
    dx_sum, _ = mass_identity(sol)
    assert abs(dx_sum - expected_mass(spec, 1.0, g)) < 1e-8


def test_two_term_divergence_names_k():
    # alpha < beta: the r-series grows at high |k| and the solver must say where
    g = Grid1D(-20.0, 20.0, 512)
    op = SpaceOperator([RieszFellerTerm(1.0, 2.0)])
    spec = ProblemSpec(1.2, op, lam=2.0, beta=1.9, init_f=InitialData.from_function(gaussian, g))
    with pytest.raises(SeriesDivergence) as info:
        solve_theorem2(spec, 1.0, g)
    assert info.value.k is not None and "k=" in str(info.value)
