"""
Angle wave functions of the Fock-built basis
============================================

psi_y(phi) blows up at phi = pi.  Splitting it into even and odd Fock parts and
stripping a chirp leaves two factors that stay bounded up to the pole window.
"""
import math

import numpy as np

from rotormub import mub_fock as mf

###############################################################################
# The five datasets on a 2048-point grid with |phi - pi| < 0.05 excluded.

for which in sorted(mf.FIGURES):
    data = mf.figure_dataset(which)
    print(f"{which}: {len(data)} rows, max |value| = {data[:, 3].max():.3f}")

###############################################################################
# How fast does |psi_0| grow?  The even Hermite values f_{2l}(0) decay like
# l^{-1/4}, so the sum behaves like (pi - phi)^{-3/4}: an exponent of -3/8 in
# (1 + cos phi), milder than a simple pole.

for lo, hi in ((0.05, 0.3), (0.005, 0.02)):
    p = mf.fit_pole_exponent(0.0, np.geomspace(lo, hi, 8))
    print(f"fitted exponent over pi - phi in [{lo}, {hi}]: {p:.4f}")

###############################################################################
# At y = 0 the odd part is absent altogether.

grid, mask = mf.windowed_grid()
chi_p, chi_m = mf.chi_on_grid(0.0, grid, mask=mask)
print("max |chi-| at y = 0:", np.max(np.abs(chi_m[mask])))
print("chi+ at phi = 0:", chi_p[np.argmin(np.abs(grid.points))].real,
      " psi at phi = 0 times sqrt 2:", math.sqrt(2) * mf.psi_series(mf.FockMubLabel(0, 0), 0.0).real)
