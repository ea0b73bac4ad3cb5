"""
Rotor operators built from line operators
=========================================

Going from (E, L) to (Q, P) works on states that avoid phi = pi.  Going back,
L = (1/2) sqrt(1 + Q^2) P sqrt(1 + Q^2) is hermitian, yet any real number is an
eigenvalue and eigenvectors of different eigenvalues overlap like sinc.
"""
import math

import numpy as np

from rotormub import appendix_analysis as app

###############################################################################
# Q and P from the cyclic shift: Q acts as tan(phi/2) except at the pole.

trunc = app.CyclicTruncation(256)
qe = app.q_from_E(trunc)
print("dropped angle:", qe.affected_phi)
print("[Q, P] = i on a bump at phi = 0:", app.qp_commutator_check(trunc))

###############################################################################
# Every real lambda solves L psi = lambda psi.

for lam in (0.5, math.sqrt(2) - 1, 2.3):
    print(f"lambda = {lam:.4f}: residual {app.lambda_eigenresidual(lam):.1e}, "
          f"<lam|lam+1/2> = {app.lambda_overlap(lam, lam + 0.5):.6f} (2/pi = {2 / math.pi:.6f})")

###############################################################################
# Each shifted integer ladder l + lambda0 is already complete, so there are many
# resolutions of the identity.

for lam0 in (0.0, 0.3, 0.7):
    print(f"lambda0 = {lam0}:", [f"{r:.1e}" for _, r in app.overcompleteness_check(lam0)])

###############################################################################
# The shift exp(i alpha L) exists for every alpha, but its derivative at 0 does
# not act on a state with a jump at phi = pi.

for alpha, norm in app.generator_limit_diagnostic():
    print(f"alpha = {alpha:.0e}: ||(U - 1) psi / (i alpha)|| = {norm:.2f}")
print("z-commutator form of L, rel. err:", app.z_commutator_check())
