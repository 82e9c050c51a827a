import json
import math

import numpy as np
import pytest

from pcshaper.shaper import (
    ShaperDesign,
    ShaperKind,
    design_nonrobust,
    design_robust,
    shaped_input,
    switch_times,
)


def test_nonrobust_undamped():
    d = design_nonrobust(0.0, math.pi)
    assert d.amplitudes == pytest.approx((0.5, 0.5))
    assert d.delays == pytest.approx((1.0,))
    assert d.kind is ShaperKind.NON_ROBUST


def test_nonrobust_delay_scales_with_frequency():
    assert design_nonrobust(0.0, 2 * math.pi).delays[0] == pytest.approx(0.5)


def test_nonrobust_damped_closed_form():
    xi = 0.1
    e = math.exp(xi * math.pi / math.sqrt(1 - xi**2))
    d = design_nonrobust(xi, math.pi)
    assert d.amplitudes[0] == pytest.approx(e / (1 + e))
    assert d.amplitudes[1] == pytest.approx(1 / (1 + e))


def test_nonrobust_rejects_bad_inputs():
    with pytest.raises(ValueError):
        design_nonrobust(1.0, math.pi)
    with pytest.raises(ValueError):
        design_nonrobust(0.0, -1.0)


def test_robust_undamped():
    d = design_robust(0.0, math.pi)
    assert d.amplitudes == pytest.approx((0.25, 0.5, 0.25))
    assert d.delays == pytest.approx((1.0, 2.0))


def test_robust_delay_scaling():
    assert design_robust(0.0, 2 * math.pi).delays == pytest.approx((0.5, 1.0))


@pytest.mark.parametrize("xi", [0.0, 0.05, 0.3, 0.7])
def test_robust_is_convolution_square(xi):
    base = design_nonrobust(xi, math.pi)
    robust = design_robust(xi, math.pi)
    a0, a1 = base.amplitudes
    assert robust.amplitudes == pytest.approx((a0 * a0, 2 * a0 * a1, a1 * a1))
    assert sum(robust.amplitudes) == pytest.approx(1.0, abs=1e-15)


def test_shaped_input_staircase():
    d = design_robust(0.0, math.pi)
    assert shaped_input(d, 1.0, 0.5) == pytest.approx(0.25)
    assert shaped_input(d, 1.0, 1.5) == pytest.approx(0.75)
    assert shaped_input(d, 1.0, 5.0) == pytest.approx(1.0)
    # Heaviside convention: the switch is active at its own timestamp.
    assert shaped_input(d, 1.0, 1.0) == pytest.approx(0.75)
    assert shaped_input(d, 2.0, 0.5) == pytest.approx(0.5)


def test_shaped_input_unshaped_and_domain():
    assert shaped_input(None, 3.0, 7.0) == 3.0
    with pytest.raises(ValueError):
        shaped_input(None, 1.0, -0.1)


def test_unity_terminal_gain_and_monotone():
    rng = np.random.default_rng(11)
    for _ in range(20):
        raw = rng.uniform(0.05, 1.0, size=4)
        amps = tuple(raw / raw.sum())
        delays = tuple(np.cumsum(rng.uniform(0.2, 1.0, size=3)))
        d = ShaperDesign(amps, delays, ShaperKind.GSA)
        levels = [shaped_input(d, 1.0, t) for t in np.linspace(0, delays[-1] + 1, 200)]
        assert all(b >= a - 1e-15 for a, b in zip(levels, levels[1:]))
        assert shaped_input(d, 1.0, delays[-1] + 0.01) == pytest.approx(1.0, abs=1e-12)


def test_switch_times():
    assert switch_times(design_nonrobust(0.0, math.pi)) == pytest.approx([1.0])
    assert switch_times(design_robust(0.0, math.pi)) == pytest.approx([1.0, 2.0])
    assert switch_times(None) == []


def test_design_validation():
    with pytest.raises(ValueError):
        ShaperDesign((0.5, 0.6), (1.0,), ShaperKind.GSA)  # sum != 1
    with pytest.raises(ValueError):
        ShaperDesign((0.5, 0.5), (2.0, 1.0), ShaperKind.GSA)  # wrong arity
    with pytest.raises(ValueError):
        ShaperDesign((0.2, 0.3, 0.5), (2.0, 1.0), ShaperKind.GSA)  # not increasing
    with pytest.raises(ValueError):
        ShaperDesign((1.2, -0.2), (1.0,), ShaperKind.GSA)  # negative amplitude


def test_json_round_trip():
    d = design_robust(0.0, math.pi)
    text = d.to_json()
    parsed = json.loads(text)
    assert parsed["kind"] == "robust"
    assert ShaperDesign.from_json(text) == d
