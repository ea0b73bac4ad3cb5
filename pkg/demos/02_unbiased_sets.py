"""
Two families of mutually unbiased bases
=======================================

Both families are labeled by an angle theta in [0, pi) and a real y.  For
different angles every overlap has the same modulus, 1 / (2 pi |sin(dtheta)|).
"""
import math

import numpy as np

from rotormub import mub_fock as mf
from rotormub import mub_stereographic as ms

rng = np.random.default_rng(1)

###############################################################################
# The stereographic family: overlaps by quadrature along the steepest-descent line.

print("stereographic family")
for _ in range(4):
    t1, t2 = sorted(rng.uniform(0.1, math.pi - 0.1, 2))
    a = ms.StereoMubLabel(t1, rng.uniform(-2, 2))
    b = ms.StereoMubLabel(t2, rng.uniform(-2, 2))
    val = abs(ms.overlap_stereo(a, b)) ** 2
    print(f"  dtheta = {t2 - t1:.3f}: |<a|b>|^2 = {val:.12f}, target {ms.unbiased_value(t1, t2):.12f}")

###############################################################################
# The Fock-built family: the closed form is the Mehler kernel on the unit circle,
# and the Fock sum itself converges only in the Abel sense.

a, b = mf.FockMubLabel(0.3, 0.4), mf.FockMubLabel(1.5, -0.6)
exact = mf.overlap_fock(a, b)
print("\nFock-built family, dtheta = 1.2")
print("  Mehler closed form:", exact)
params = mf.AbelParams(radii=(0.99, 0.998, 0.999))
for r, v in zip(params.radii, mf.overlap_series(a, b, params, extrapolated=False)):
    print(f"  damped sum at r = {r}: rel. err {abs(v - exact) / abs(exact):.2e}")
print(f"  extrapolated to r = 1: rel. err {abs(mf.overlap_series(a, b, params) - exact) / abs(exact):.2e}")
