"""
Driving the command line
========================

The ``pctpdm`` console script exposes spectra, wavefunction tables,
verification, audits and sweeps.  Here it is called in-process.
"""

from pctpdm.cli import main

for argv in (
    ["spectrum", "--potential", "kratzer", "--De", "1", "--ye", "1", "--n-max", "2"],
    ["spectrum", "--potential", "morse", "--D", "8", "--n-max", "5"],
    ["verify", "--profile", "lorentzian a=20 q=1", "--grid-points", "8000", "--n-max", "1", "--format", "table"],
    ["audit", "--profile", "exponential q=2"],
    ["sweep", "--param", "De", "--values", "0.5,1,2", "--n-max", "0"],
):
    print("$ pctpdm", " ".join(f"'{a}'" if " " in a else a for a in argv))
    status = main(argv)
    print(f"[exit {status}]\n")
