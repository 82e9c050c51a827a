"""Experiment drivers: each function reproduces one study and writes
plot-ready CSV/JSON artifacts plus a manifest of the effective configuration.

These are the workhorses behind the command-line verbs; the narrative
scripts under demos/ call them directly.
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .basis import Truncation
from .design import ObjectiveSpec, Statistic, optimize_gsa
from .dynamics import SystemParams, UncertaintySchedule, propagate
from .shaper import ShaperDesign, ShaperKind, design_nonrobust, design_robust
from .uq import (
    EnergyForm,
    McConfig,
    ResidualEnergySpec,
    Sampler,
    closed_form_trajectory,
    mc_residual_moments,
    pce_moments,
    pce_residual_moments,
    sample_frequency_pairs,
)


class ConfigError(ValueError):
    """Invalid or inconsistent experiment configuration."""


@dataclass
class ExperimentConfig:
    """Declarative configuration shared by all experiment commands."""

    schedule: UncertaintySchedule
    system: SystemParams = SystemParams()
    degree: int = 30
    degrees: tuple[int, ...] = (10, 20, 30)
    truncation: Truncation = Truncation.TOTAL_DEGREE
    tol: float = 1e-12
    u: float = 1.0
    energy_form: EnergyForm = EnergyForm.UNIT_STIFFNESS
    seed: int = 0
    mc_samples: tuple[int, ...] = (1000, 3000, 10000, 30000, 100000)
    mc_reference_samples: int = 100000
    mc_probe_samples: int = 20
    search_degree: int = 12
    search_tol: float = 1e-10
    max_evals: int = 500
    heatmap_grid: int = 21
    heatmap_designs: dict = field(default_factory=dict)
    out: Path = Path("results")

    @property
    def energy(self) -> ResidualEnergySpec:
        return ResidualEnergySpec(form=self.energy_form, target=self.system.target)

    def to_dict(self) -> dict:
        return {
            "schedule": {
                "mean_freq": self.schedule.mean_freq,
                "interval1_bounds": list(self.schedule.interval1_bounds),
                "interval2_bounds": list(self.schedule.interval2_bounds),
                "t1": self.schedule.t1,
                "t2": self.schedule.t2,
            },
            "system": dataclasses.asdict(self.system),
            "degree": self.degree,
            "degrees": list(self.degrees),
            "truncation": self.truncation.value,
            "tol": self.tol,
            "u": self.u,
            "energy_form": self.energy_form.value,
            "seed": self.seed,
            "mc_samples": list(self.mc_samples),
            "mc_reference_samples": self.mc_reference_samples,
            "mc_probe_samples": self.mc_probe_samples,
            "search_degree": self.search_degree,
            "search_tol": self.search_tol,
            "max_evals": self.max_evals,
            "heatmap_grid": self.heatmap_grid,
            "heatmap_designs": self.heatmap_designs,
            "out": str(self.out),
        }


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build a validated configuration from parsed JSON."""
    try:
        sched = data["schedule"]
        schedule = UncertaintySchedule(
            mean_freq=float(sched["mean_freq"]),
            interval1_bounds=tuple(sched["interval1_bounds"]),
            interval2_bounds=tuple(sched["interval2_bounds"]),
            t1=float(sched["t1"]),
            t2=float(sched["t2"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid schedule section: {exc}") from exc
    system = SystemParams(**data.get("system", {}))
    cfg = ExperimentConfig(schedule=schedule, system=system)
    simple = {
        "degree": int,
        "tol": float,
        "u": float,
        "seed": int,
        "mc_reference_samples": int,
        "mc_probe_samples": int,
        "search_degree": int,
        "search_tol": float,
        "max_evals": int,
        "heatmap_grid": int,
    }
    for key, cast in simple.items():
        if key in data:
            setattr(cfg, key, cast(data[key]))
    if "degrees" in data:
        cfg.degrees = tuple(int(p) for p in data["degrees"])
    if "mc_samples" in data:
        cfg.mc_samples = tuple(int(n) for n in data["mc_samples"])
    if "truncation" in data:
        cfg.truncation = Truncation(data["truncation"])
    if "energy_form" in data:
        cfg.energy_form = EnergyForm(data["energy_form"])
    if "heatmap_designs" in data:
        cfg.heatmap_designs = dict(data["heatmap_designs"])
    if "out" in data:
        cfg.out = Path(data["out"])
    return cfg


def load_config(path) -> ExperimentConfig:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return config_from_dict(data)


def apply_reduced(cfg: ExperimentConfig) -> ExperimentConfig:
    """CI-speed variant: shorter horizon, lower degree, smaller MC ladder."""
    cfg.schedule = dataclasses.replace(cfg.schedule, t1=10.0, t2=20.0)
    cfg.degree = min(cfg.degree, 12)
    cfg.degrees = tuple(sorted({min(p, 12) for p in cfg.degrees}))
    cfg.mc_samples = tuple(min(n, 10000) for n in cfg.mc_samples)
    cfg.mc_reference_samples = min(cfg.mc_reference_samples, 10000)
    cfg.search_degree = min(cfg.search_degree, 8)
    return cfg


def _write_manifest(cfg: ExperimentConfig, command: str, outputs: list[str]) -> Path:
    cfg.out.mkdir(parents=True, exist_ok=True)
    manifest = {
        "command": command,
        "version": __version__,
        "config": cfg.to_dict(),
        "outputs": outputs,
    }
    path = cfg.out / f"{command}_manifest.json"
    path.write_text(json.dumps(manifest, indent=2))
    return path


def _resolve_shaper(cfg: ExperimentConfig, spec) -> ShaperDesign | None:
    """Shaper from a config entry: none, a named kind, or explicit parameters."""
    if spec in (None, "none", "unshaped"):
        return None
    if spec == "non-robust":
        return design_nonrobust(0.0, cfg.schedule.mean_freq)
    if spec == "robust":
        return design_robust(0.0, cfg.schedule.mean_freq)
    if isinstance(spec, dict):
        return ShaperDesign(
            amplitudes=tuple(spec["amplitudes"]),
            delays=tuple(spec["delays"]),
            kind=ShaperKind(spec.get("kind", "gsa")),
            damping=spec.get("damping", 0.0),
            design_freq=spec.get("design_freq", cfg.schedule.mean_freq),
        )
    raise ConfigError(f"unrecognized shaper spec: {spec!r}")


def run_mc_convergence(cfg: ExperimentConfig, shaper_spec=None) -> Path:
    """Residual-energy moments over an MC sample-size ladder."""
    design = _resolve_shaper(cfg, shaper_spec)
    rows = []
    for n in cfg.mc_samples:
        mc = McConfig(sample_count=n, seed=cfg.seed)
        mean, var = mc_residual_moments(mc, cfg.schedule, design, cfg.u, cfg.energy)
        stderr = float(np.sqrt(var / n))
        rows.append((n, mean, var, stderr))
    cfg.out.mkdir(parents=True, exist_ok=True)
    path = cfg.out / "mc_convergence.csv"
    with open(path, "w") as fh:
        fh.write("sample_size,e_vres,var_vres,stderr\n")
        for n, mean, var, stderr in rows:
            fh.write(f"{n},{mean:.17g},{var:.17g},{stderr:.17g}\n")
    _write_manifest(cfg, "mc-convergence", [path.name])
    return path


def _mc_moment_trajectories(cfg: ExperimentConfig, times: np.ndarray, design=None):
    """Closed-form reference moments of x and xdot on a time grid."""
    mc = McConfig(sample_count=cfg.mc_reference_samples, seed=cfg.seed)
    w_n, w_m = sample_frequency_pairs(mc, cfg.schedule)
    out = np.empty((len(times), 4))
    for i, t in enumerate(times):
        x, v = closed_form_trajectory((w_n, w_m), cfg.schedule, design, cfg.u, float(t))
        out[i] = x.mean(), x.var(), v.mean(), v.var()
    return out


def run_pce_convergence(cfg: ExperimentConfig) -> list[Path]:
    """Moment trajectories per degree plus the analytic-MC reference (Figs. 5-6)."""
    cfg.out.mkdir(parents=True, exist_ok=True)
    paths = []
    reference_done = False
    for degree in cfg.degrees:
        traj1, traj2 = propagate(
            cfg.system, cfg.schedule, degree,
            truncation=cfg.truncation, u=cfg.u, tol=cfg.tol,
        )
        m1, m2 = pce_moments(traj1), pce_moments(traj2)
        times = np.concatenate([m1.times, m2.times])
        data = np.column_stack([
            times,
            np.concatenate([m1.mean_x, m2.mean_x]),
            np.concatenate([m1.var_x, m2.var_x]),
            np.concatenate([m1.mean_v, m2.mean_v]),
            np.concatenate([m1.var_v, m2.var_v]),
        ])
        path = cfg.out / f"pce_moments_p{degree}.csv"
        np.savetxt(
            path, data, delimiter=",", comments="", fmt="%.17g",
            header="t,mean_x,var_x,mean_v,var_v",
        )
        paths.append(path)
        if not reference_done:
            ref = _mc_moment_trajectories(cfg, times)
            ref_path = cfg.out / "mc_reference_moments.csv"
            np.savetxt(
                ref_path, np.column_stack([times, ref]), delimiter=",", comments="",
                fmt="%.17g", header="t,mean_x,var_x,mean_v,var_v",
            )
            paths.append(ref_path)
            reference_done = True
    _write_manifest(cfg, "pce-convergence", [p.name for p in paths])
    return paths


def run_timing(cfg: ExperimentConfig) -> Path:
    """Wall-clock of PCE construction per degree versus MC.

    The adaptive-sampler MC cost is measured on a probe batch and scaled to
    the full sample count; a full run at tight tolerance takes hours and
    would measure nothing extra.
    """
    timings: dict = {"degrees": {}, "mc": {}}
    for degree in cfg.degrees:
        start = time.perf_counter()
        propagate(
            cfg.system, cfg.schedule, degree,
            truncation=cfg.truncation, u=cfg.u, tol=cfg.tol, endpoints_only=True,
        )
        timings["degrees"][str(degree)] = time.perf_counter() - start

    n_mc = max(cfg.mc_samples)
    start = time.perf_counter()
    mc_residual_moments(
        McConfig(n_mc, seed=cfg.seed), cfg.schedule, None, cfg.u, cfg.energy
    )
    timings["mc"]["closed_form_samples"] = n_mc
    timings["mc"]["closed_form_seconds"] = time.perf_counter() - start

    probe = McConfig(cfg.mc_probe_samples, seed=cfg.seed, sampler=Sampler.RK45, rk45_tol=cfg.tol)
    start = time.perf_counter()
    mc_residual_moments(probe, cfg.schedule, None, cfg.u, cfg.energy)
    per_sample = (time.perf_counter() - start) / cfg.mc_probe_samples
    timings["mc"]["rk45_probe_samples"] = cfg.mc_probe_samples
    timings["mc"]["rk45_seconds_per_sample"] = per_sample
    timings["mc"]["rk45_seconds_extrapolated"] = per_sample * n_mc

    top_degree = str(max(cfg.degrees))
    timings["pce_over_rk45_mc_ratio"] = (
        timings["degrees"][top_degree] / timings["mc"]["rk45_seconds_extrapolated"]
    )
    cfg.out.mkdir(parents=True, exist_ok=True)
    path = cfg.out / "timing.json"
    path.write_text(json.dumps(timings, indent=2))
    _write_manifest(cfg, "timing", [path.name])
    return path


def _pce_energy_moments(cfg: ExperimentConfig, design) -> tuple[float, float]:
    _, traj2 = propagate(
        cfg.system, cfg.schedule, cfg.degree,
        truncation=cfg.truncation, shaper=design, u=cfg.u, tol=cfg.tol,
        endpoints_only=True,
    )
    a, b = traj2.end_state()
    return pce_residual_moments(a, b, traj2.basis, cfg.energy, cfg.schedule)


def run_compare_shapers(cfg: ExperimentConfig) -> Path:
    """Five-way comparison: unshaped, non-robust, robust, and both optimized
    designs, scored by PCE and cross-checked by closed-form MC."""
    mu = cfg.schedule.mean_freq
    entries: list[tuple[str, ShaperDesign | None]] = [
        ("unshaped", None),
        ("non_robust", design_nonrobust(0.0, mu)),
        ("robust", design_robust(0.0, mu)),
    ]
    results: dict = {}
    for label, statistic in (
        ("gsa_expected", Statistic.EXPECTED_RESIDUAL),
        ("gsa_variance", Statistic.RESIDUAL_VARIANCE),
    ):
        objective = ObjectiveSpec(
            target=statistic,
            schedule=cfg.schedule,
            params=cfg.system,
            energy=cfg.energy,
            degree=cfg.degree,
            truncation=cfg.truncation,
            tol=cfg.tol,
            u=cfg.u,
            search_degree=cfg.search_degree,
            search_tol=cfg.search_tol,
        )
        opt = optimize_gsa(objective, max_evals=cfg.max_evals)
        entries.append((label, opt.design))
        results[f"{label}_optimization"] = json.loads(opt.to_json(objective))

    mc = McConfig(cfg.mc_reference_samples, seed=cfg.seed)
    table = []
    for label, design in entries:
        e_pce, var_pce = _pce_energy_moments(cfg, design)
        e_mc, var_mc = mc_residual_moments(mc, cfg.schedule, design, cfg.u, cfg.energy)
        table.append((label, e_pce, var_pce, e_mc, var_mc))
        results[label] = {
            "e_vres_pce": e_pce,
            "var_vres_pce": var_pce,
            "e_vres_mc": e_mc,
            "var_vres_mc": var_mc,
        }
        if design is not None:
            results[label]["amplitudes"] = list(design.amplitudes)
            results[label]["delays"] = list(design.delays)

    cfg.out.mkdir(parents=True, exist_ok=True)
    csv_path = cfg.out / "shaper_comparison.csv"
    with open(csv_path, "w") as fh:
        fh.write("shaper,e_vres_pce,var_vres_pce,e_vres_mc,var_vres_mc\n")
        for label, e_pce, var_pce, e_mc, var_mc in table:
            fh.write(f"{label},{e_pce:.17g},{var_pce:.17g},{e_mc:.17g},{var_mc:.17g}\n")
    json_path = cfg.out / "shaper_comparison.json"
    json_path.write_text(json.dumps(results, indent=2))
    _write_manifest(cfg, "compare-shapers", [csv_path.name, json_path.name])
    return json_path


def run_heatmap(cfg: ExperimentConfig) -> Path:
    """Per-realization residual-energy difference, robust minus optimized,
    on an (omega_n, omega_m) grid."""
    robust = design_robust(0.0, cfg.schedule.mean_freq)
    comparisons = {}
    for key in ("gsa_expected", "gsa_variance"):
        if key not in cfg.heatmap_designs:
            raise ConfigError(f"heatmap needs a '{key}' entry under heatmap_designs")
        comparisons[key] = _resolve_shaper(cfg, cfg.heatmap_designs[key])

    lo1, hi1 = cfg.schedule.interval1_bounds
    lo2, hi2 = cfg.schedule.interval2_bounds
    w_n = np.linspace(lo1, hi1, cfg.heatmap_grid)
    w_m = np.linspace(lo2, hi2, cfg.heatmap_grid)
    grid_n, grid_m = np.meshgrid(w_n, w_m, indexing="ij")

    def energy_grid(design):
        x, v = closed_form_trajectory(
            (grid_n.ravel(), grid_m.ravel()), cfg.schedule, design, cfg.u, cfg.schedule.t2
        )
        return cfg.energy.evaluate(x, v, omega=grid_m.ravel())

    base = energy_grid(robust)
    deltas = {key: base - energy_grid(design) for key, design in comparisons.items()}

    cfg.out.mkdir(parents=True, exist_ok=True)
    path = cfg.out / "heatmap.csv"
    with open(path, "w") as fh:
        fh.write("omega_n,omega_m,delta_v_gsa_expected,delta_v_gsa_variance\n")
        for i in range(grid_n.size):
            fh.write(
                f"{grid_n.ravel()[i]:.17g},{grid_m.ravel()[i]:.17g},"
                f"{deltas['gsa_expected'][i]:.17g},{deltas['gsa_variance'][i]:.17g}\n"
            )
    _write_manifest(cfg, "heatmap", [path.name])
    return path
