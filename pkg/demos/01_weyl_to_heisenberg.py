"""
From a Weyl pair to a Heisenberg pair
=====================================

The zigzag relabeling l -> n sends the rotor's angular-momentum states onto
oscillator number states.  Under it the shift E and angular momentum L build
Q and P, and the truncation shows its edge only on the last few levels.
"""
import numpy as np

from rotormub import fock_rotor_map as fm

###############################################################################
# The index map walks l = 0, -1, 1, -2, 2, ... onto n = 0, 1, 2, 3, 4, ...

for l in range(-3, 4):
    print(f"l = {l:+d}  ->  n = {fm.n_of_l(l)}")

###############################################################################
# Build the operators at n_max = 400.

trunc = fm.FockTruncation(400)
L, E = fm.build_L_from_N(trunc), fm.build_E_fock(trunc)
Q, P = fm.build_QP_from_EL(trunc)

print("[L, E] - E on the interior:", fm.interior_deviation(fm.commutator(L, E), E))
print("E via the ladder vs direct shift:",
      fm.interior_deviation(E, fm.build_E_direct(trunc), margin=2))

###############################################################################
# Q + iP is the scaled annihilator, and [Q, P] = i everywhere except the top level,
# where the trace has to be paid back.

C = fm.commutator(Q, P).matrix
print("max |Q + iP - ladder|:", np.max(np.abs((Q + P * 1j).matrix - fm.build_QP_ladder(trunc).matrix)))
print("diagonal of [Q, P], last three:", np.round(C.diagonal()[-3:], 12))
print("trace of [Q, P]:", abs(np.trace(C)))
