"""Time-delay filters: construction and time-domain realization.

A filter is a sequence of non-negative amplitudes summing to one, applied
as a Heaviside staircase on top of a base command level. The closed-form
single-delay design cancels the nominal oscillatory mode; squaring it
yields the robust design. Optimized designs are produced by the
:mod:`pcshaper.design` module and only validated here.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass


class ShaperKind(enum.Enum):
    NON_ROBUST = "non-robust"
    ROBUST = "robust"
    GSA = "gsa"


@dataclass(frozen=True)
class ShaperDesign:
    """Amplitudes and strictly increasing delay times of a time-delay filter.

    amplitudes[0] is the undelayed term; amplitudes[i] switches on at
    delays[i-1]. The amplitudes sum to one so the shaped command settles
    at the base level after the last switch.
    """

    amplitudes: tuple[float, ...]
    delays: tuple[float, ...]
    kind: ShaperKind
    damping: float = 0.0
    design_freq: float = 0.0

    def __post_init__(self):
        if len(self.amplitudes) != len(self.delays) + 1:
            raise ValueError("need exactly one more amplitude than delays")
        if any(a < 0 for a in self.amplitudes):
            raise ValueError("amplitudes must be non-negative")
        if not math.isclose(sum(self.amplitudes), 1.0, abs_tol=1e-9):
            raise ValueError(f"amplitudes must sum to 1, got {sum(self.amplitudes)}")
        if any(d <= 0 for d in self.delays):
            raise ValueError("delays must be positive")
        if any(b <= a for a, b in zip(self.delays, self.delays[1:])):
            raise ValueError("delays must be strictly increasing")

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": self.kind.value,
                "amplitudes": list(self.amplitudes),
                "delays": list(self.delays),
                "damping": self.damping,
                "design_freq": self.design_freq,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "ShaperDesign":
        data = json.loads(text)
        return cls(
            amplitudes=tuple(data["amplitudes"]),
            delays=tuple(data["delays"]),
            kind=ShaperKind(data["kind"]),
            damping=data.get("damping", 0.0),
            design_freq=data.get("design_freq", 0.0),
        )


def _base_amplitude(damping: float) -> float:
    if not 0.0 <= damping < 1.0:
        raise ValueError(f"damping ratio must be in [0, 1), got {damping}")
    e = math.exp(damping * math.pi / math.sqrt(1.0 - damping**2))
    return e / (1.0 + e)


def design_nonrobust(damping: float, design_freq: float) -> ShaperDesign:
    """Single-delay filter cancelling the mode at design_freq.

    Amplitudes (A0, 1 - A0) with A0 = e^(xi*pi/sqrt(1-xi^2)) / (1 + same),
    delay T = pi / design_freq. For zero damping this is the (0.5, 0.5)
    half-period filter.
    """
    if design_freq <= 0:
        raise ValueError(f"design frequency must be positive, got {design_freq}")
    a0 = _base_amplitude(damping)
    t = math.pi / design_freq
    return ShaperDesign(
        amplitudes=(a0, 1.0 - a0),
        delays=(t,),
        kind=ShaperKind.NON_ROBUST,
        damping=damping,
        design_freq=design_freq,
    )


def design_robust(damping: float, design_freq: float) -> ShaperDesign:
    """Squared single-delay filter: double zero pair at the nominal mode.

    Amplitudes (A0^2, 2*A0*A1, A1^2) at delays (T, 2T); the discrete
    self-convolution of the non-robust impulse sequence.
    """
    base = design_nonrobust(damping, design_freq)
    a0, a1 = base.amplitudes
    t = base.delays[0]
    return ShaperDesign(
        amplitudes=(a0 * a0, 2.0 * a0 * a1, a1 * a1),
        delays=(t, 2.0 * t),
        kind=ShaperKind.ROBUST,
        damping=damping,
        design_freq=design_freq,
    )


def shaped_input(design: ShaperDesign | None, u: float, t: float) -> float:
    """Shaped command level at time t.

    Heaviside convention H(0) = 1: a switch at time T is already active at
    t = T. With design None the command is the unshaped level u.
    """
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    if design is None:
        return u
    level = design.amplitudes[0]
    for amp, delay in zip(design.amplitudes[1:], design.delays):
        if t >= delay:
            level += amp
    return level * u


def switch_times(design: ShaperDesign | None) -> list[float]:
    """Input discontinuity times, used as integrator breakpoints."""
    return [] if design is None else list(design.delays)
