"""Intrusive-PCE equations of motion for the undamped spring-mass system.

The uncertain frequency omega = mu + h*zeta is expanded exactly in
Legendre polynomials of the active random variable, projected onto the
basis, and integrated as a coupled second-order linear system
``a'' = -M a + g u(t)``. The two uncertainty intervals are handled by
integrating the one-variable system up to the switch time, embedding the
end state into the two-variable basis (exact, no projection error), and
continuing with the two-variable system.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .basis import BasisSpec, Truncation, basis_norm_sq, make_basis, triple_product_tensor
from .shaper import ShaperDesign, shaped_input, switch_times


class IntegrationError(RuntimeError):
    """Adaptive integration failed; carries the failure time."""

    def __init__(self, message: str, time: float):
        super().__init__(message)
        self.time = time


@dataclass(frozen=True)
class SystemParams:
    """Deterministic parameters of the spring-mass plant."""

    mass: float = 1.0
    target: float = 1.0
    initial_position: float = 0.0
    initial_velocity: float = 0.0

    def __post_init__(self):
        if self.mass <= 0:
            raise ValueError(f"mass must be positive, got {self.mass}")


@dataclass(frozen=True)
class UncertaintySchedule:
    """Two uniform frequency distributions with a switch at t1.

    The frequency is U(interval1_bounds) on [0, t1] and U(interval2_bounds)
    on [t1, t2]; both intervals are centered on mean_freq.
    """

    mean_freq: float
    interval1_bounds: tuple[float, float]
    interval2_bounds: tuple[float, float]
    t1: float
    t2: float

    def __post_init__(self):
        for lo, hi in (self.interval1_bounds, self.interval2_bounds):
            # Zero width is allowed: it collapses to the deterministic system.
            if lo > hi:
                raise ValueError(f"bounds must satisfy lb <= ub, got ({lo}, {hi})")
            if not np.isclose(0.5 * (lo + hi), self.mean_freq, rtol=1e-12, atol=1e-12):
                raise ValueError(
                    f"bounds ({lo}, {hi}) are not centered on mean frequency {self.mean_freq}"
                )
        if not 0 < self.t1 < self.t2:
            raise ValueError(f"need 0 < t1 < t2, got t1={self.t1}, t2={self.t2}")

    @property
    def halfwidth1(self) -> float:
        return 0.5 * (self.interval1_bounds[1] - self.interval1_bounds[0])

    @property
    def halfwidth2(self) -> float:
        return 0.5 * (self.interval2_bounds[1] - self.interval2_bounds[0])

    def frequencies(self, zeta1, zeta2):
        """Map standardized variables in [-1, 1] to the two physical frequencies."""
        w_n = self.mean_freq + self.halfwidth1 * np.asarray(zeta1)
        w_m = self.mean_freq + self.halfwidth2 * np.asarray(zeta2)
        return w_n, w_m


def benchmark_schedule() -> UncertaintySchedule:
    """The reference setup: U(0.75*pi, 1.25*pi) then U(0.5*pi, 1.5*pi), t1=100, t2=200."""
    return UncertaintySchedule(
        mean_freq=np.pi,
        interval1_bounds=(0.75 * np.pi, 1.25 * np.pi),
        interval2_bounds=(0.5 * np.pi, 1.5 * np.pi),
        t1=100.0,
        t2=200.0,
    )


@dataclass(frozen=True)
class GalerkinSystem:
    """Projected coefficient dynamics ``a'' = -matrix @ a + forcing * u(t)``."""

    matrix: np.ndarray
    forcing: np.ndarray
    basis: BasisSpec


def assemble_galerkin(
    basis: BasisSpec, mu: float, halfwidth: float, active_dim: int = 0
) -> GalerkinSystem:
    """Project the squared-frequency operator onto the basis.

    omega^2 = (mu + h*zeta)^2 is expanded exactly in Legendre polynomials
    of the active variable (degrees 0..2) and contracted against the
    precomputed triple-product tensor; the other variable acts diagonally.
    """
    if halfwidth < 0:
        raise ValueError(f"halfwidth must be non-negative, got {halfwidth}")
    if not 0 <= active_dim < basis.dims:
        raise ValueError(f"active_dim {active_dim} invalid for {basis.dims} variables")

    # Legendre coefficients of (mu + h*zeta)^2 on the active variable.
    h = halfwidth
    coeffs = np.array([mu**2 + h**2 / 3.0, 2.0 * mu * h, 2.0 * h**2 / 3.0])

    tensor = triple_product_tensor(2, basis.degree)
    weight = np.tensordot(coeffs, tensor, axes=1)  # weight[i, j] = <omega^2 P_i P_j>

    idx = np.array(basis.index_set)
    active = idx[:, active_dim]
    passive = np.delete(idx, active_dim, axis=1).sum(axis=1)  # zeros for d=1
    norms1d = np.array([basis_norm_sq(n) for n in range(basis.degree + 1)])

    mask = passive[:, None] == passive[None, :]
    matrix = mask * weight[active[:, None], active[None, :]] / norms1d[active][:, None]

    forcing = np.where((passive == 0) & (active <= 2), coeffs[np.minimum(active, 2)], 0.0)

    matrix.flags.writeable = False
    forcing.flags.writeable = False
    return GalerkinSystem(matrix=matrix, forcing=forcing, basis=basis)


@dataclass(frozen=True)
class PceTrajectory:
    """Time series of PCE coefficient vectors for one uncertainty interval."""

    times: np.ndarray
    coeffs_a: np.ndarray  # (n_times, basis.size) position expansion
    coeffs_b: np.ndarray  # (n_times, basis.size) velocity expansion
    interval_tag: int
    basis: BasisSpec
    schedule: UncertaintySchedule | None = field(default=None, compare=False)

    def end_state(self) -> tuple[np.ndarray, np.ndarray]:
        return self.coeffs_a[-1].copy(), self.coeffs_b[-1].copy()

    def to_csv(self, path) -> None:
        k = self.basis.size
        header = "t," + ",".join(f"a_{i}" for i in range(k)) + "," + ",".join(
            f"b_{i}" for i in range(k)
        )
        data = np.column_stack([self.times, self.coeffs_a, self.coeffs_b])
        np.savetxt(path, data, delimiter=",", header=header, comments="", fmt="%.17g")

    def header_dict(self) -> dict:
        out = {
            "interval": self.interval_tag,
            "dims": self.basis.dims,
            "degree": self.basis.degree,
            "truncation": self.basis.truncation.value,
            "index_set": [list(i) for i in self.basis.index_set],
        }
        if self.schedule is not None:
            out["schedule"] = {
                "mean_freq": self.schedule.mean_freq,
                "interval1_bounds": list(self.schedule.interval1_bounds),
                "interval2_bounds": list(self.schedule.interval2_bounds),
                "t1": self.schedule.t1,
                "t2": self.schedule.t2,
            }
        return out

    def write_header(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.header_dict(), fh, indent=2)


def integrate_interval(
    system: GalerkinSystem,
    a0: np.ndarray,
    b0: np.ndarray,
    input_fn,
    t_start: float,
    t_end: float,
    tol: float = 1e-12,
    breakpoints: list[float] | None = None,
    sample_times: np.ndarray | None = None,
    interval_tag: int = 1,
    schedule: UncertaintySchedule | None = None,
) -> PceTrajectory:
    """Integrate the coefficient dynamics with adaptive RK45 (Dormand-Prince).

    The span is segmented at every breakpoint (input discontinuity) so the
    step controller never crosses a discontinuity. Dense output is sampled
    at `sample_times` (segment boundaries are always included); with
    sample_times None only the endpoints are reported.
    """
    a0 = np.asarray(a0, dtype=float)
    b0 = np.asarray(b0, dtype=float)
    k = system.basis.size
    if a0.shape != (k,) or b0.shape != (k,):
        raise ValueError(f"initial coefficient vectors must have length {k}")
    if not t_start < t_end:
        raise ValueError(f"need t_start < t_end, got [{t_start}, {t_end}]")
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")

    matrix, forcing = system.matrix, system.forcing

    def rhs(t, y):
        return np.concatenate([y[k:], forcing * input_fn(t) - matrix @ y[:k]])

    cuts = sorted(t for t in (breakpoints or []) if t_start < t < t_end)
    edges = [t_start, *cuts, t_end]

    if sample_times is None:
        sample_times = np.array([t_start, t_end])
    sample_times = np.asarray(sample_times, dtype=float)

    times: list[float] = []
    states: list[np.ndarray] = []
    y = np.concatenate([a0, b0])
    for seg_start, seg_end in zip(edges, edges[1:]):
        sol = solve_ivp(
            rhs,
            (seg_start, seg_end),
            y,
            method="RK45",
            rtol=tol,
            atol=tol,
            dense_output=True,
        )
        if not sol.success:
            raise IntegrationError(
                f"integration failed at t={sol.t[-1]}: {sol.message}", time=float(sol.t[-1])
            )
        inside = sample_times[(sample_times >= seg_start) & (sample_times < seg_end)]
        for t in inside:
            times.append(float(t))
            states.append(sol.sol(t))
        y = sol.y[:, -1]
    times.append(t_end)
    states.append(y)

    arr = np.array(states)
    return PceTrajectory(
        times=np.array(times),
        coeffs_a=arr[:, :k],
        coeffs_b=arr[:, k:],
        interval_tag=interval_tag,
        basis=system.basis,
        schedule=schedule,
    )


def restart_at_switch(
    a1: np.ndarray, b1: np.ndarray, basis1: BasisSpec, basis2: BasisSpec
) -> tuple[np.ndarray, np.ndarray]:
    """Embed one-variable end coefficients into the two-variable basis.

    Galerkin projection of the continuity conditions puts a_{j1}(t1) into
    the (j1, 0) slot and zero elsewhere; the mapping is exact.
    """
    if basis1.dims != 1 or basis2.dims != 2:
        raise ValueError("restart maps a one-variable basis into a two-variable basis")
    a1 = np.asarray(a1, dtype=float)
    b1 = np.asarray(b1, dtype=float)
    if a1.shape != (basis1.size,) or b1.shape != (basis1.size,):
        raise ValueError("coefficient vectors do not match the interval-1 basis")

    a2 = np.zeros(basis2.size)
    b2 = np.zeros(basis2.size)
    for j1 in range(basis1.degree + 1):
        try:
            pos = basis2.index_position((j1, 0))
        except ValueError:
            raise ValueError(
                f"interval-2 basis lacks index ({j1}, 0); increase its degree"
            ) from None
        a2[pos] = a1[j1]
        b2[pos] = b1[j1]
    return a2, b2


def sample_grid(t_start: float, t_end: float, mean_freq: float, points_per_period: int) -> np.ndarray:
    """Uniform reporting grid with `points_per_period` samples per nominal period."""
    dt = (2.0 * np.pi / mean_freq) / points_per_period
    n = max(int(np.ceil((t_end - t_start) / dt)), 1)
    return np.linspace(t_start, t_end, n + 1)


def propagate(
    params: SystemParams,
    schedule: UncertaintySchedule,
    degree: int,
    truncation: Truncation = Truncation.TOTAL_DEGREE,
    shaper: ShaperDesign | None = None,
    u: float = 1.0,
    tol: float = 1e-12,
    points_per_period: int = 20,
    endpoints_only: bool = False,
) -> tuple[PceTrajectory, PceTrajectory]:
    """Full two-interval propagation of the shaped step command.

    Integrates the one-variable system on [0, t1], performs the exact
    continuity restart, and continues with the two-variable system on
    [t1, t2]. With endpoints_only=True only interval endpoints are
    reported (used by optimization loops).
    """
    basis1 = make_basis(1, degree)
    basis2 = make_basis(2, degree, truncation)
    sys1 = assemble_galerkin(basis1, schedule.mean_freq, schedule.halfwidth1, active_dim=0)
    sys2 = assemble_galerkin(basis2, schedule.mean_freq, schedule.halfwidth2, active_dim=1)

    def input_fn(t):
        return shaped_input(shaper, u, t)

    cuts = switch_times(shaper)

    a0 = np.zeros(basis1.size)
    b0 = np.zeros(basis1.size)
    a0[0] = params.initial_position
    b0[0] = params.initial_velocity

    grid1 = None if endpoints_only else sample_grid(0.0, schedule.t1, schedule.mean_freq, points_per_period)
    traj1 = integrate_interval(
        sys1, a0, b0, input_fn, 0.0, schedule.t1, tol=tol,
        breakpoints=cuts, sample_times=grid1, interval_tag=1, schedule=schedule,
    )

    a1_end, b1_end = traj1.end_state()
    a2, b2 = restart_at_switch(a1_end, b1_end, basis1, basis2)

    grid2 = None if endpoints_only else sample_grid(schedule.t1, schedule.t2, schedule.mean_freq, points_per_period)
    traj2 = integrate_interval(
        sys2, a2, b2, input_fn, schedule.t1, schedule.t2, tol=tol,
        breakpoints=cuts, sample_times=grid2, interval_tag=2, schedule=schedule,
    )
    return traj1, traj2
