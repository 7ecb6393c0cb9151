"""Six-pulse swing model: micro-timing as inflected, non-isochronous pulses.

Three parameters shape a cyclic pattern of six pulse lengths that blends a
duple and a triple feel.  theta1 is the duple component (positive values
delay offbeats), theta2 lengthens or shortens the downbeat of a triple
group, and theta3 shades the second offbeat of that group.  The deviation
vector sums to zero for every parameter choice, so the swung cycle always
spans the same wall-clock time as the straight one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

PARAM_BOUND = 1.5
LENGTH_FLOOR = 0.02

_METER_SCALES = {"binary": 3.0, "ternary": 2.0, "quaternary": 1.5}


def _check_bound(name: str, value: float) -> float:
    value = float(value)
    if not (-PARAM_BOUND <= value <= PARAM_BOUND):
        raise ParameterError(
            "%s=%g outside the admissible range [-%g, %g]"
            % (name, value, PARAM_BOUND, PARAM_BOUND)
        )
    return value


@dataclass(frozen=True)
class FeelParams:
    """Swing parameters (theta1: duple, theta2: triple downbeat, theta3: second offbeat)."""

    theta1: float = 0.0
    theta2: float = 0.0
    theta3: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "theta1", _check_bound("theta1", self.theta1))
        object.__setattr__(self, "theta2", _check_bound("theta2", self.theta2))
        object.__setattr__(self, "theta3", _check_bound("theta3", self.theta3))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.theta1, self.theta2, self.theta3)


def binary_lengths(theta1: float) -> tuple[float, float]:
    """Normed duple pulse pair: (1/2 + t/6, 1/2 - t/6) in beats.

    theta1=1 gives the classic 2:1 long-short swing; 0 is straight; negative
    values shorten the downbeat instead.
    """
    theta1 = _check_bound("theta1", theta1)
    return (0.5 + theta1 / 6.0, 0.5 - theta1 / 6.0)


def ternary_lengths(theta2: float) -> tuple[float, float, float]:
    """Normed triple pulse triad: (1/3 + t/6, 1/3, 1/3 - t/6) in beats."""
    theta2 = _check_bound("theta2", theta2)
    return (1.0 / 3.0 + theta2 / 6.0, 1.0 / 3.0, 1.0 / 3.0 - theta2 / 6.0)


def deviation_vector(params: FeelParams) -> np.ndarray:
    """Deviation of each of the six cycle pulses from the isochronous length.

    Linear in theta1 and, for fixed theta3, in theta2; the components always
    sum to zero.
    """
    t1, t2, t3 = params.as_tuple()
    plus = (t2 * t3 + t2) / 2.0
    minus = (t2 * t3 - t2) / 2.0
    return (1.0 / 6.0) * np.array(
        [t1 + t2, -t1 - plus, t1 + minus, -t1 + t2, t1 - plus, -t1 + minus]
    )


def feel_pulse_lengths(params: FeelParams) -> np.ndarray:
    """The six normed pulse lengths 1/6 + d/3; strictly positive, sum one."""
    lengths = 1.0 / 6.0 + deviation_vector(params) / 3.0
    if lengths.min() <= LENGTH_FLOOR:
        raise ParameterError(
            "parameters %s drive a pulse length below the %.2f floor"
            % (params.as_tuple(), LENGTH_FLOOR)
        )
    return lengths


def meter_scale(kind: str) -> float:
    """Beats spanned by one six-pulse cycle on the given grid.

    Two pulses per beat -> 3 beats, three per beat -> 2 beats, four per
    beat -> 3/2 beats.  A pulse's real length in beats is its normed length
    times this scale.
    """
    try:
        return _METER_SCALES[kind]
    except KeyError:
        raise ParameterError("unknown meter kind %r" % (kind,)) from None


def pulse_time_ms(pulse_length_beats: float, tempo_bpm: float) -> float:
    """Milliseconds taken by a span of the given length in beats."""
    if tempo_bpm <= 0:
        raise ParameterError("tempo must be positive, got %r" % (tempo_bpm,))
    return 60000.0 * pulse_length_beats / tempo_bpm


def _clamp(value: float) -> float:
    return max(-PARAM_BOUND, min(PARAM_BOUND, value))


@dataclass(frozen=True)
class FeelProfile:
    """Base swing parameters plus how much each local meter leans on them.

    In a duple segment theta1/theta2 are multiplied by ``binary_scale``; in a
    triple segment by ``ternary_scale``.  The defaults halve the triple
    component under a duple meter and double it (while halving the duple
    component) under a triple meter, mirroring how measured performances
    shift their mix.
    """

    base: FeelParams = FeelParams()
    binary_scale: tuple[float, float] = (1.0, 0.5)
    ternary_scale: tuple[float, float] = (0.5, 2.0)

    @classmethod
    def from_dict(cls, doc: dict) -> "FeelProfile":
        base = FeelParams(
            theta1=doc.get("theta1", 0.0),
            theta2=doc.get("theta2", 0.0),
            theta3=doc.get("theta3", 0.0),
        )
        return cls(
            base=base,
            binary_scale=tuple(doc.get("binaryScale", (1.0, 0.5))),
            ternary_scale=tuple(doc.get("ternaryScale", (0.5, 2.0))),
        )

    def to_dict(self) -> dict:
        return {
            "theta1": self.base.theta1,
            "theta2": self.base.theta2,
            "theta3": self.base.theta3,
            "binaryScale": list(self.binary_scale),
            "ternaryScale": list(self.ternary_scale),
        }


def blend_for_signature(profile: FeelProfile, kind: str) -> FeelParams:
    """Swing parameters for one signature segment, clamped into bounds."""
    if kind == "binary":
        s1, s2 = profile.binary_scale
    elif kind == "ternary":
        s1, s2 = profile.ternary_scale
    else:
        raise ParameterError("segment kind must be binary or ternary, got %r" % (kind,))
    base = profile.base
    return FeelParams(
        theta1=_clamp(base.theta1 * s1),
        theta2=_clamp(base.theta2 * s2),
        theta3=base.theta3,
    )
