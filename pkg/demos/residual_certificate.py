"""
Which wavefunction is right?
============================

Apply the discrete position-dependent-mass operator to a candidate
eigenfunction.  The correct one, psi = m^(1/4) phi(f(x)), leaves a residual
that falls fourfold per grid halving.  The literal form phi/m does not.
"""

import numpy as np

from pctpdm import reference as ref
from pctpdm.mass_profiles import MassProfile
from pctpdm.oracle import pdm_problem, residual_sweep
from pctpdm.pct import make_target
from pctpdm.reference import MorseParams

p = MorseParams(8.0, 1.0)
tp = make_target(p, MassProfile.parse("lorentzian a=5 q=1"))
problem = pdm_problem(tp, 0)
grids = [2000, 4000, 8000, 16000]

good = residual_sweep(problem, grids)
phi = ref.wavefunction(p, 0)
bad = residual_sweep(problem, grids, exact=lambda x: np.asarray(phi(tp.y(x))) / np.asarray(tp.profile.mass(x)))

print(" points   m^(1/4) phi(f)      phi/m")
for n, g, b in zip(grids, good, bad):
    print(f"{n:7d}   {g:.3e}        {b:.3e}")
print("halving ratios:", np.round(np.array(good[:-1]) / good[1:], 3), "vs", np.round(np.array(bad[:-1]) / bad[1:], 3))
