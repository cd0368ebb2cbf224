"""Map the working region: gap ratio versus coupling, period, and probe.

The convergence rate of the purification is set by the spectral gap of
V_phi: the smaller |lambda_1 / lambda_0|, the fewer confirmations are
needed.  Sweeping the model parameters shows where the protocol is fast,
where it stalls, and where it breaks outright.
"""

import math

import numpy as np

from zenopur import (
    ModelParams,
    build_hamiltonian,
    check_conditions,
    probe_spec,
    projected_evolution,
    singlet_eigenvalue,
    spectral_report,
)

TAU = 2.0 * math.pi


def report_at(params):
    v = projected_evolution(
        build_hamiltonian(params), params.tau, probe_spec(params)
    )
    return spectral_report(v)


# --- coupling sweep at tuned period -----------------------------------
print("coupling sweep, tau = 2 pi / Omega")
print(f"{'g':>6} {'gap ratio':>10} {'coupling_ok':>12}")
for g in np.linspace(0.05, 0.45, 9):
    params = ModelParams(omega=1.0, g=float(g), tau=TAU)
    rep = report_at(params)
    flags = check_conditions(params)
    marker = "" if flags.coupling_ok else "   <- degenerate"
    print(f"{g:>6.2f} {rep.gap_ratio:>10.4f} {str(flags.coupling_ok):>12}{marker}")

# Around g tau / sqrt(2) = pi / 2 (g ~ 0.354 here) a triplet eigenvalue
# returns to magnitude 1 and ties with the singlet: the protocol cannot
# choose between them and purification stalls.
g_star = math.pi / (math.sqrt(2.0) * TAU)
print(f"\ndegenerate coupling g* = {g_star:.6f}")
rep = report_at(ModelParams(omega=1.0, g=g_star, tau=TAU))
print(f"gap ratio at g*: {rep.gap_ratio:.6f}, "
      f"dominant unique: {rep.dominant_unique}")

# --- period sweep at fixed coupling ------------------------------------
# The singlet eigenvalue is exp(-i Omega tau) (beta^2 + alpha^2
# exp(-i Omega tau)): only at Omega tau = 2 pi n does it sit on the unit
# circle, so the probe period must be tuned to the drive.
print("\nperiod sweep, g = 0.25")
print(f"{'tau/pi':>7} {'|singlet|':>10} {'tuning_ok':>10}")
for frac in (0.5, 1.0, 1.5, 2.0, 3.0, 4.0):
    params = ModelParams(omega=1.0, g=0.25, tau=frac * math.pi)
    lam = singlet_eigenvalue(params)
    flags = check_conditions(params)
    print(f"{frac:>7.1f} {abs(lam):>10.6f} {str(flags.tuning_ok):>10}")

# --- probe orientation sweep -------------------------------------------
# Any superposition alpha |up> + beta |down> with both amplitudes nonzero
# keeps the singlet dominant; the balanced probe converges fastest.
print("\nprobe sweep, alpha = cos(theta), beta = sin(theta)")
print(f"{'theta/pi':>9} {'gap ratio':>10}")
for theta in np.linspace(0.1, 0.4, 7) * math.pi:
    params = ModelParams(
        omega=1.0,
        g=0.25,
        tau=TAU,
        alpha=math.cos(theta),
        beta=math.sin(theta),
    )
    rep = report_at(params)
    print(f"{theta / math.pi:>9.3f} {rep.gap_ratio:>10.4f}")
