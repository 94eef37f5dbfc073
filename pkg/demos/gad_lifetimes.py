"""Negativity under identical generalized amplitude damping on both qubits.

Compares |psi_+>, the ultimately robust input and the interpolating inputs
prepared for each time, as a text table.  Writes the same data as CSV when
a path is given.

    python3 demos/gad_lifetimes.py [w] [out.csv]
"""
import sys

import numpy as np

from robustent.cli import RunConfig, trace_csv
from robustent.dynamics import (
    NoiseFamily,
    gad_robust_state,
    gad_tau_bell,
    gad_tau_tilde,
    lifetime_of_state,
)
from robustent.qubit import PSI_PLUS, negativity, projector

w = float(sys.argv[1]) if len(sys.argv) > 1 else 0.01
f = NoiseFamily.gad(1.0, w)
tau, tau_bell = gad_tau_tilde(f), gad_tau_bell(f)
robust = gad_robust_state(f)

print(f"w = {w}: tau_bell = {tau_bell:.6f}, tau~ = {tau:.6f}, ratio {tau / tau_bell:.4f}")
print("robust input amplitudes on |00>, |11>:", np.round(robust[[0, 3]].real, 6))
print(f"initial negativity: bell 0.5, robust {negativity(projector(robust)):.6f}")
for name, psi in (("bell", PSI_PLUS), ("robust", robust)):
    print(f"numeric lifetime of {name}: {lifetime_of_state(f, f, psi, 4.0).tau:.10f}")

cfg = RunConfig(f, f, tmax=2.0, steps=20, state="", t0=None, seed=0)
csv = trace_csv(cfg, ["bell", "robust", "interp-envelope"])
print()
for line in csv.splitlines():
    print("  ".join(f"{cell:>14}" for cell in line.split(",")))

if len(sys.argv) > 2:
    fine = RunConfig(f, f, tmax=2.0, steps=400, state="", t0=None, seed=0)
    with open(sys.argv[2], "w", encoding="utf-8") as fh:
        fh.write(trace_csv(fine, ["bell", "robust", "interp-envelope"]))
    print("wrote", sys.argv[2])
