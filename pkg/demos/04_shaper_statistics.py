"""Scoring shapers under frequency uncertainty.

Compares the unshaped step, the single-delay filter, and the robust filter
by the expected value and variance of the residual energy at the final
time, using both the spectral surrogate and the exact-sample Monte Carlo
estimate. Short time scale, so the degree-30 surrogate is converged.
"""

import numpy as np

from pcshaper import (
    McConfig,
    ResidualEnergySpec,
    SystemParams,
    UncertaintySchedule,
    design_nonrobust,
    design_robust,
    mc_residual_moments,
    pce_residual_moments,
    propagate,
)

schedule = UncertaintySchedule(
    np.pi, (0.75 * np.pi, 1.25 * np.pi), (0.5 * np.pi, 1.5 * np.pi), 10.0, 20.0
)
energy = ResidualEnergySpec()
mc = McConfig(10**5, seed=0)

designs = [
    ("unshaped", None),
    ("single-delay", design_nonrobust(0.0, np.pi)),
    ("robust", design_robust(0.0, np.pi)),
]

print(f"{'design':14s} {'E[V] pce':>10s} {'E[V] mc':>10s} {'Var pce':>10s} {'Var mc':>10s}")
for name, design in designs:
    _, traj2 = propagate(SystemParams(), schedule, 30, shaper=design, endpoints_only=True)
    a, b = traj2.end_state()
    mean_pce, var_pce = pce_residual_moments(a, b, traj2.basis, energy)
    mean_mc, var_mc = mc_residual_moments(mc, schedule, design, 1.0, energy)
    print(f"{name:14s} {mean_pce:10.5f} {mean_mc:10.5f} {var_pce:10.6f} {var_mc:10.6f}")

print()
print("Both filters cut the expected residual energy by more than an order")
print("of magnitude; squaring the filter buys another order in the variance.")
