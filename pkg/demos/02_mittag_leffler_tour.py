"""
A tour of the three-parameter Mittag-Leffler function
=====================================================

Every kernel in the library is built from E^delta_{alpha,beta}(z). The
evaluator picks a method per point: the power series near the origin, the
large-|z| expansion far away, and a parabolic contour integral in between.
"""

import cmath
import math

from fracgreen import MLArgs, mlf_bigfloat, mlf_eval

points = [
    MLArgs(1.0, 1.0, 1.0, -2.0),  # exp(-2)
    MLArgs(2.0, 1.0, 1.0, -100.0),  # cos(10)
    MLArgs(0.5, 1.0, 1.0, -1e4),  # exp(z^2) erfc(-z) territory
    MLArgs(0.8, 1.3, 4.0, -35.0 + 12.0j),
    MLArgs(1.7, 0.6, 9.0, -80.0),
]

for a in points:
    res = mlf_eval(a)
    line = f"alpha={a.alpha:<4} beta={a.beta:<4} delta={a.delta:<4} z={a.z!s:<14} -> {res.value:.12g}  [{res.method}]"
    print(line)

# Cross-check against the extended-precision series for the cheap points.
for a in points[:2] + points[3:]:
    ref = mlf_bigfloat(a)
    err = abs(mlf_eval(a).value - ref) / max(1.0, abs(ref))
    print(f"scaled error vs 100-digit series: {err:.2e}")

# The classical identities hold far out on the negative axis too.
x = 300.0
print("cos identity at x=300:", abs(mlf_eval(MLArgs(2, 1, 1, -x * x)).value - math.cos(x)))
print("sinc identity at x=300:", abs(mlf_eval(MLArgs(2, 2, 1, -x * x)).value - math.sin(x) / x))
print("exp identity at z=-40+40i:", abs(mlf_eval(MLArgs(1, 1, 1, -40 + 40j)).value - cmath.exp(-40 + 40j)))
