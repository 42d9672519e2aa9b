"""
Morse levels and the Pekeris approximation
==========================================

For l = 0 the Morse spectrum is exact.  For l > 0 the centrifugal barrier
is replaced by a three-term exponential fit about the minimum, and the
resulting error grows with l.
"""

from pctpdm import reference as ref
from pctpdm.oracle import convergence_study, exact_centrifugal_problem
from pctpdm.reference import MorseParams

###############################################################################
# l = 0: closed form against the textbook vibrational ladder.
p = MorseParams(D=8.0, a=1.0)
print(f"{p.n_bound()} bound levels")
for n in range(p.n_bound()):
    print(f"n={n}  E={ref.morse_energy(p, n): .6f}  textbook={ref.morse_textbook_energy(8.0, 1.0, n, 1.0, 1.0): .6f}")

###############################################################################
# l > 0: compare with a finite-difference solve of the well with the full
# 1/r^2 barrier.  The gap vanishes at l = 0 and reaches several percent by
# l = 2 for this fairly wide well (a r0 = 1).
for ell in (0, 1, 2, 3):
    q = MorseParams(8.0, 1.0, ell=ell)
    rec = convergence_study(exact_centrifugal_problem(q, 0), [4000, 8000, 16000]).records[0]
    gap = abs(rec.E_extrapolated - rec.E_analytic) / abs(rec.E_analytic)
    print(f"ell={ell}  Pekeris {rec.E_analytic: .6f}  exact barrier {rec.E_extrapolated: .6f}  gap {gap:.2e}")
