"""
Two time orders, checked by brute force
=======================================

Adding lam D^beta to D^alpha gives a damped wave. The spectral solution is a
series over Prabhakar functions; an explicit Grunwald-Letnikov march on the
same grid converges to it at first order in dt.
"""

import numpy as np

from fracgreen import FDConfig, Grid1D, InitialData, ProblemSpec, RieszFellerTerm, SpaceOperator, gl_fd_solver, solve

grid = Grid1D(-20.0, 20.0, 128)
op = SpaceOperator([RieszFellerTerm(1.0, 2.0)])
bump = InitialData.from_function(lambda x: np.exp(-x**2), grid)

for lam in (0.0, 0.1, 0.5):
    spec = ProblemSpec(2.0, op, lam=lam, beta=1.5, init_f=bump)
    sol = solve("theorem2", spec, 1.0, grid)
    print(f"lam={lam}: N(0, 1) = {np.interp(0.0, grid.x, sol.values):.6f}")

spec = ProblemSpec(2.0, op, lam=0.1, beta=1.5, init_f=bump)
ref = solve("theorem2", spec, 1.0, grid)
print("\n   nt      gap    ratio")
prev = None
for nt in (100, 200, 400, 800):
    cfg = FDConfig(grid.n, nt, 1.0 / nt, grid.x_min, grid.x_max, 2.0, op, beta=1.5, lam=0.1)
    gap = np.max(np.abs(gl_fd_solver(cfg, {"f": bump}).values - ref.values))
    print(f"{nt:5d} {gap:9.2e} {'' if prev is None else f'{prev / gap:6.2f}'}")
    prev = gap

# A ratio near 2 per halving is the first-order signature of the GL scheme.
