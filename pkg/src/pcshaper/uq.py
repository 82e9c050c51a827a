"""Residual-energy functionals, PCE moment extraction, and the MC reference.

The undamped oscillator under piecewise-constant input admits an exact
per-sample solution, which makes the Monte Carlo reference both fast and
free of integration error. PCE moments come straight from the
orthogonality of the basis; residual-energy moments are computed by exact
tensor quadrature over the surrogate.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .basis import BasisSpec, gauss_legendre
from .dynamics import PceTrajectory, UncertaintySchedule
from .shaper import ShaperDesign, shaped_input, switch_times


class EnergyForm(enum.Enum):
    """Residual-energy definition.

    UNIT_STIFFNESS weights both quadratic terms by 1/2 (the form the
    optimizer targets); NOMINAL weights the potential term by the active
    stiffness k/2 = omega^2/2.
    """

    UNIT_STIFFNESS = "unit-stiffness"
    NOMINAL = "nominal"


@dataclass(frozen=True)
class ResidualEnergySpec:
    form: EnergyForm = EnergyForm.UNIT_STIFFNESS
    target: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.target):
            raise ValueError("target must be finite")

    def evaluate(self, x, v, omega=None):
        """Energy about the target; omega is required for the NOMINAL form."""
        kinetic = 0.5 * np.asarray(v) ** 2
        displacement = self.target - np.asarray(x)
        if self.form is EnergyForm.UNIT_STIFFNESS:
            return kinetic + 0.5 * displacement**2
        if omega is None:
            raise ValueError("NOMINAL energy form needs the active frequency")
        return kinetic + 0.5 * np.asarray(omega) ** 2 * displacement**2


class Sampler(enum.Enum):
    CLOSED_FORM = "closed-form"
    RK45 = "rk45"


@dataclass(frozen=True)
class McConfig:
    sample_count: int
    seed: int = 0
    sampler: Sampler = Sampler.CLOSED_FORM
    rk45_tol: float = 1e-12

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError(f"sample count must be positive, got {self.sample_count}")


def _segments(schedule: UncertaintySchedule, design: ShaperDesign | None, t: float):
    """Segment edges in (0, t] at shaper switches and the distribution switch."""
    cuts = {c for c in switch_times(design) if c < t}
    if schedule.t1 < t:
        cuts.add(schedule.t1)
    return [0.0, *sorted(cuts), t]


def closed_form_trajectory(
    omega_pair,
    schedule: UncertaintySchedule,
    design: ShaperDesign | None,
    u: float,
    t: float,
    x0: float = 0.0,
    v0: float = 0.0,
):
    """Exact state (x, xdot) at time t for given frequency realizations.

    On each segment with constant command level ub and frequency w:
    x(t) = ub + (x0 - ub) cos(w dt) + (v0 / w) sin(w dt). Accepts scalar
    or array frequency pairs (broadcast elementwise).
    """
    if not 0.0 <= t <= schedule.t2:
        raise ValueError(f"time must lie in [0, {schedule.t2}], got {t}")
    w_n = np.asarray(omega_pair[0], dtype=float)
    w_m = np.asarray(omega_pair[1], dtype=float)
    x = np.broadcast_to(np.asarray(x0, dtype=float), w_n.shape).copy()
    v = np.broadcast_to(np.asarray(v0, dtype=float), w_n.shape).copy()
    if t == 0.0:
        return x, v
    edges = _segments(schedule, design, t)
    for seg_start, seg_end in zip(edges, edges[1:]):
        level = shaped_input(design, u, seg_start)
        w = w_n if seg_start < schedule.t1 else w_m
        dt = seg_end - seg_start
        c, s = np.cos(w * dt), np.sin(w * dt)
        x, v = level + (x - level) * c + (v / w) * s, -(x - level) * w * s + v * c
    return x, v


def _rk45_sample(w_n, w_m, schedule, design, u, tol):
    """Per-sample adaptive integration, cross-validation for the closed form."""

    def make_rhs(w):
        def rhs(t, y):
            return [y[1], w**2 * (shaped_input(design, u, t) - y[0])]

        return rhs

    y = [0.0, 0.0]
    for w, (t_a, t_b) in ((w_n, (0.0, schedule.t1)), (w_m, (schedule.t1, schedule.t2))):
        edges = [t_a, *(c for c in switch_times(design) if t_a < c < t_b), t_b]
        for seg_start, seg_end in zip(edges, edges[1:]):
            sol = solve_ivp(make_rhs(w), (seg_start, seg_end), y, method="RK45", rtol=tol, atol=tol)
            y = sol.y[:, -1]
    return y[0], y[1]


def sample_frequency_pairs(cfg: McConfig, schedule: UncertaintySchedule):
    """Seeded (omega_n, omega_m) draws via the standardized uniform variables."""
    rng = np.random.default_rng(cfg.seed)
    zeta = rng.uniform(-1.0, 1.0, size=(2, cfg.sample_count))
    return schedule.frequencies(zeta[0], zeta[1])


def mc_residual_moments(
    cfg: McConfig,
    schedule: UncertaintySchedule,
    design: ShaperDesign | None,
    u: float,
    spec: ResidualEnergySpec,
) -> tuple[float, float]:
    """Sample mean and unbiased variance of the residual energy at t2."""
    w_n, w_m = sample_frequency_pairs(cfg, schedule)
    if cfg.sampler is Sampler.CLOSED_FORM:
        x, v = closed_form_trajectory((w_n, w_m), schedule, design, u, schedule.t2)
    else:
        x = np.empty(cfg.sample_count)
        v = np.empty(cfg.sample_count)
        for i in range(cfg.sample_count):
            x[i], v[i] = _rk45_sample(w_n[i], w_m[i], schedule, design, u, cfg.rk45_tol)
    energy = spec.evaluate(x, v, omega=w_m)
    mean = float(np.mean(energy))
    var = float(np.var(energy, ddof=1)) if cfg.sample_count > 1 else 0.0
    return mean, var


@dataclass(frozen=True)
class MomentReport:
    """Mean/variance trajectories of position and velocity, plus terminal energy moments."""

    times: np.ndarray
    mean_x: np.ndarray
    var_x: np.ndarray
    mean_v: np.ndarray
    var_v: np.ndarray
    e_vres: float | None = None
    var_vres: float | None = None

    def to_csv(self, path) -> None:
        data = np.column_stack([self.times, self.mean_x, self.var_x, self.mean_v, self.var_v])
        np.savetxt(
            path, data, delimiter=",", comments="", fmt="%.17g",
            header="t,mean_x,var_x,mean_v,var_v",
        )

    def summary_json(self, **provenance) -> str:
        """Terminal energy moments plus caller-supplied provenance keys
        (seed, sample_count, degree, ...)."""
        payload = {"e_vres": self.e_vres, "var_vres": self.var_vres, **provenance}
        return json.dumps(payload, indent=2)


def pce_moments(traj: PceTrajectory) -> MomentReport:
    """Moments from orthogonality: mean is coefficient 0, variance sums the rest."""
    norms = traj.basis.norms_sq
    var_x = np.clip(traj.coeffs_a[:, 1:] ** 2 @ norms[1:], 0.0, None)
    var_v = np.clip(traj.coeffs_b[:, 1:] ** 2 @ norms[1:], 0.0, None)
    return MomentReport(
        times=traj.times,
        mean_x=traj.coeffs_a[:, 0].copy(),
        var_x=var_x,
        mean_v=traj.coeffs_b[:, 0].copy(),
        var_v=var_v,
    )


def pce_residual_moments(
    a: np.ndarray,
    b: np.ndarray,
    basis: BasisSpec,
    spec: ResidualEnergySpec,
    schedule: UncertaintySchedule | None = None,
    quad_order: int | None = None,
) -> tuple[float, float]:
    """Expected value and variance of the residual energy of the surrogate.

    The surrogate is evaluated on a tensor Gauss-Legendre grid of at least
    2P + 1 nodes per dimension, which integrates both the energy and its
    square exactly; the variance then follows from E[V^2] - E[V]^2.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != (basis.size,) or b.shape != (basis.size,):
        raise ValueError(f"coefficient vectors must have length {basis.size}")
    required = 2 * basis.degree + 1
    if quad_order is None:
        quad_order = required
    elif quad_order < required:
        raise ValueError(f"quadrature order {quad_order} < required {required}")
    if spec.form is EnergyForm.NOMINAL and schedule is None:
        raise ValueError("NOMINAL energy form needs the schedule for the active frequency")

    rule = gauss_legendre(quad_order)
    if basis.dims == 1:
        points = rule.nodes[:, None]
        weights = rule.weights
    else:
        g1, g2 = np.meshgrid(rule.nodes, rule.nodes, indexing="ij")
        points = np.column_stack([g1.ravel(), g2.ravel()])
        weights = np.outer(rule.weights, rule.weights).ravel()

    phi = basis.evaluate(points)
    x = phi @ a
    v = phi @ b
    omega = None
    if spec.form is EnergyForm.NOMINAL:
        omega = schedule.mean_freq + schedule.halfwidth2 * points[:, -1]
    energy = spec.evaluate(x, v, omega=omega)
    mean = float(weights @ energy)
    var = float(weights @ energy**2) - mean**2
    return mean, max(var, 0.0)
