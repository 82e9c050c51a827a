import numpy as np
import pytest

from pcshaper import (
    ObjectiveSpec,
    ResidualEnergySpec,
    Statistic,
    UncertaintySchedule,
    design_nonrobust,
    design_robust,
    evaluate_objective,
    optimize_gsa,
    pce_residual_moments,
    propagate,
)
from pcshaper.design import _decode, _encode
from pcshaper.shaper import ShaperDesign, ShaperKind

REDUCED = UncertaintySchedule(
    np.pi, (0.75 * np.pi, 1.25 * np.pi), (0.5 * np.pi, 1.5 * np.pi), 10.0, 20.0
)


def reduced_objective(target=Statistic.EXPECTED_RESIDUAL) -> ObjectiveSpec:
    return ObjectiveSpec(
        target=target,
        schedule=REDUCED,
        degree=12,
        search_degree=8,
        tol=1e-10,
        search_tol=1e-8,
    )


def test_evaluate_objective_matches_pipeline():
    objective = reduced_objective()
    design = design_robust(0.0, np.pi)
    value = evaluate_objective(design, objective)
    _, traj2 = propagate(
        objective.params, REDUCED, 12, shaper=design, u=1.0, tol=1e-10,
        endpoints_only=True,
    )
    a, b = traj2.end_state()
    mean, var = pce_residual_moments(a, b, traj2.basis, ResidualEnergySpec(), REDUCED)
    assert value == pytest.approx(mean, rel=1e-12)
    variance = evaluate_objective(design, reduced_objective(Statistic.RESIDUAL_VARIANCE))
    assert variance == pytest.approx(var, rel=1e-12)


def test_encode_decode_round_trip():
    design = design_robust(0.0, np.pi)
    params = _encode(design, t_f=2.0)
    recovered = _decode(params, n_delays=2, t_f=2.0, template=design)
    assert recovered.amplitudes == pytest.approx(design.amplitudes, abs=1e-12)
    assert recovered.delays == pytest.approx(design.delays, abs=1e-9)


def test_decode_always_feasible():
    template = design_robust(0.0, np.pi)
    rng = np.random.default_rng(13)
    for _ in range(100):
        design = _decode(rng.normal(scale=3.0, size=3), 2, 2.0, template)
        assert sum(design.amplitudes) == pytest.approx(1.0, abs=1e-12)
        assert all(a >= 0 for a in design.amplitudes)
        assert 0 < design.delays[0] < design.delays[1] <= 2.0


def test_optimizer_descends_and_stays_feasible():
    objective = reduced_objective()
    result = optimize_gsa(objective, max_evals=80)
    assert result.objective_value <= result.initial_objective + 1e-15
    assert sum(result.design.amplitudes) == pytest.approx(1.0, abs=1e-12)
    assert result.design.kind is ShaperKind.GSA
    assert result.design.delays[-1] == pytest.approx(2.0)
    assert result.iterations <= 80


def test_optimizer_zero_width_keeps_exact_design():
    # Deterministic frequency: the seed design already cancels the mode, so
    # the optimum is (numerically) zero residual energy.
    sched = UncertaintySchedule(np.pi, (np.pi, np.pi), (np.pi, np.pi), 10.0, 20.0)
    objective = ObjectiveSpec(
        target=Statistic.EXPECTED_RESIDUAL,
        schedule=sched,
        degree=2,
        search_degree=2,
        tol=1e-10,
        search_tol=1e-10,
    )
    result = optimize_gsa(objective, max_evals=30)
    assert result.initial_objective < 1e-12
    assert result.objective_value < 1e-12


def test_multistart_agrees_with_default_start():
    # Perturbed initializations must not strand the optimizer far from the
    # default-start solution: best-of-three lands within 10%.
    objective = reduced_objective()
    baseline = optimize_gsa(objective, max_evals=120)
    starts = [
        ShaperDesign((0.30, 0.45, 0.25), (0.9, 2.0), kind=ShaperKind.GSA, design_freq=np.pi),
        ShaperDesign((0.20, 0.50, 0.30), (1.1, 2.0), kind=ShaperKind.GSA, design_freq=np.pi),
        ShaperDesign((0.25, 0.55, 0.20), (1.0, 2.0), kind=ShaperKind.GSA, design_freq=np.pi),
    ]
    best = min(
        optimize_gsa(objective, init=start, max_evals=120).objective_value
        for start in starts
    )
    assert best <= 1.10 * baseline.objective_value


def test_optimizer_rejects_mismatched_init():
    objective = reduced_objective()
    with pytest.raises(ValueError):
        optimize_gsa(objective, n_delays=2, init=design_nonrobust(0.0, np.pi))
    with pytest.raises(ValueError):
        optimize_gsa(objective, t_f=0.5, init=design_robust(0.0, np.pi))


def test_result_serialization():
    objective = reduced_objective()
    result = optimize_gsa(objective, max_evals=5)
    import json

    data = json.loads(result.to_json(objective))
    assert data["objective"]["target"] == "expected-residual"
    assert data["objective"]["schedule"]["t1"] == 10.0
    assert len(data["design"]["amplitudes"]) == 3
