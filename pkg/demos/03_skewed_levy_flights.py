"""
Skewed Levy flights
===================

With gamma < 2 the space operator produces heavy-tailed jumps; the skewness
theta tilts them to one side. At alpha = 1 the Green function is a stable
density, so its mass stays one while its shape leans.
"""

import numpy as np

from fracgreen import Grid1D, InitialData, ProblemSpec, RieszFellerTerm, SpaceOperator, solve_corollary2

grid = Grid1D(-200.0, 200.0, 8192)
source = InitialData.from_function(lambda x: np.exp(-x**2) / np.sqrt(np.pi), grid)

print(" theta   mode x    N(-5)     N(+5)     mass")
for theta in (-0.4, -0.2, 0.0, 0.2, 0.4):
    op = SpaceOperator([RieszFellerTerm(mu=1.0, gamma=1.5, theta=theta)])
    sol = solve_corollary2(ProblemSpec(1.0, op, init_f=source), 1.0, grid)
    at = lambda x0: np.interp(x0, grid.x, sol.values)
    mode = grid.x[np.argmax(sol.values)]
    print(f"{theta:6.2f} {mode:8.3f} {at(-5.0):9.5f} {at(5.0):9.5f} {grid.dx * sol.values.sum():8.5f}")

# Flipping the sign of theta mirrors the density about the origin: the two
# tail columns swap places.

# A sub-diffusive clock (alpha < 1) changes the total mass to
# t^(alpha-1)/Gamma(alpha). Normalised by it, the profile at t = 1 moves
# weight from the centre into the far tails as alpha drops.
op = SpaceOperator([RieszFellerTerm(1.0, 1.5, 0.2)])
for alpha in (1.0, 0.7, 0.4):
    sol = solve_corollary2(ProblemSpec(alpha, op, init_f=source), 1.0, grid)
    mass = grid.dx * sol.values.sum()
    near, far = (np.interp(x0, grid.x, sol.values) / mass for x0 in (0.0, 20.0))
    print(f"alpha={alpha}: N(0)/mass = {near:.4f}   N(20)/mass = {far:.2e}")
