"""
Mass profiles and coordinate maps
=================================

Each profile m(x) carries the map y = f(x) with f' = sqrt(m).  The image
of f decides which reference problems it can host.
"""

import numpy as np

from pctpdm.mass_profiles import MassProfile

profiles = [MassProfile.parse(s) for s in
            ("uniform", "lorentzian a=1 q=1", "squared_lorentzian a=1 b=1", "exponential q=2")]

###############################################################################
# Mass, map and image.  The squared Lorentzian squeezes the real line into a
# finite y-interval; the exponential profile maps onto y < 0 only.
x = np.array([-2.0, 0.0, 2.0])
for prof in profiles:
    print(f"{prof.describe():28s} image {prof.image}")
    print("   m(x) =", np.round(prof.mass(x), 6), "  f(x) =", np.round(prof.mapping(x), 6))

###############################################################################
# f' = sqrt(m), checked by a central difference.
h = 1e-5
for prof in profiles:
    fd = (prof.mapping(x + h) - prof.mapping(x - h)) / (2 * h)
    print(f"{prof.kind:20s} max |f' - sqrt(m)| = {np.max(np.abs(fd - np.sqrt(prof.mass(x)))):.1e}")

###############################################################################
# Round trip through the inverse map.
prof = profiles[1]
print("x -> f -> x:", prof.inverse_mapping(prof.mapping(x)))
