"""
Auditing printed target potentials
==================================

Closed forms for the composed potentials can be written out by hand.  The
audit evaluates each one against the generic construction
V(f(x)) + (1/(8 m)) [m''/m - (7/4)(m'/m)^2] on the same x-samples.
"""

from pctpdm.mass_profiles import MassProfile
from pctpdm.pct import audit_composition, audit_table
from pctpdm.reference import KratzerParams, MorseParams

cases = [
    (KratzerParams(1.0, 1.0), "lorentzian a=1 q=1"),
    (KratzerParams(1.0, 1.0), "squared_lorentzian a=1 b=1"),
    (KratzerParams(1.0, 1.0), "exponential q=2"),
    (MorseParams(8.0, 1.0, ell=1), "lorentzian a=1 q=1"),
    (MorseParams(8.0, 1.0, ell=1), "squared_lorentzian a=1 b=2"),
    (MorseParams(8.0, 1.0, ell=1), "exponential q=1"),
]

records = []
for p, prof in cases:
    records += audit_composition(p, MassProfile.parse(prof))

###############################################################################
# ``41`` checks the Laguerre index of the Morse eigenfunction as printed;
# ``41-corrected`` uses index 2*eps1, which solves the equation.
print(audit_table(records))
