"""Recover swing parameters from measured pulse lengths by least squares.

The six-pulse model is nonlinear in (theta1, theta2, theta3) but linear in
(theta1, a, b) with a = theta2 and b = theta2*theta3, and the three design
columns are mutually orthogonal.  Ordinary least squares on that
reparameterization is therefore exact and deterministic; theta3 is read
back as b/a afterwards.  When a is (numerically) zero theta3 has no effect
on the model at all, so it is reported as zero and flagged.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import MeasurementError
from .timing import FeelParams

# Rows: the theta1 column, the a = theta2 column, the b = theta2*theta3 column
# of the deviation model d = (1/6) * (theta1*C[0] + a*C[1] + b*C[2]).
_DESIGN = np.array(
    [
        [1.0, -1.0, 1.0, -1.0, 1.0, -1.0],
        [1.0, -0.5, -0.5, 1.0, -0.5, -0.5],
        [0.0, -0.5, 0.5, 0.0, -0.5, 0.5],
    ]
)

DEGENERATE_A = 1e-6


@dataclass(frozen=True)
class BarMeasurement:
    """Seven onset times spanning one six-pulse cycle, normalized to length one."""

    onsets_ms: tuple[float, ...]
    normalized_lengths: np.ndarray

    def __post_init__(self):
        lengths = np.asarray(self.normalized_lengths, dtype=float)
        lengths.setflags(write=False)
        object.__setattr__(self, "onsets_ms", tuple(float(t) for t in self.onsets_ms))
        object.__setattr__(self, "normalized_lengths", lengths)


@dataclass(frozen=True)
class FitResult:
    params: FeelParams
    sse: float
    n_bars: int
    degenerate_theta3: bool = False

    def to_dict(self) -> dict:
        return {
            "theta1": self.params.theta1,
            "theta2": self.params.theta2,
            "theta3": self.params.theta3,
            "sse": self.sse,
            "nBars": self.n_bars,
            "degenerateTheta3": self.degenerate_theta3,
        }


def normalize_bar(onsets_ms) -> BarMeasurement:
    """Turn seven strictly increasing onset times into six normed lengths."""
    onsets = np.asarray(list(onsets_ms), dtype=float)
    if onsets.shape != (7,):
        raise MeasurementError(
            "a bar needs exactly 7 onset times, got %d" % onsets.size
        )
    deltas = np.diff(onsets)
    if (deltas <= 0).any():
        raise MeasurementError("onset times must be strictly increasing")
    return BarMeasurement(
        onsets_ms=tuple(onsets), normalized_lengths=deltas / (onsets[6] - onsets[0])
    )


def median_profile(bars: list[BarMeasurement]) -> np.ndarray:
    """Per-position median of normalized lengths (lower median for even counts)."""
    if not bars:
        raise MeasurementError("median profile needs at least one bar")
    data = np.sort(np.vstack([b.normalized_lengths for b in bars]), axis=0)
    return data[(len(bars) - 1) // 2]


def _as_profiles(data) -> np.ndarray:
    if isinstance(data, BarMeasurement):
        return data.normalized_lengths.reshape(1, 6)
    if isinstance(data, (list, tuple)) and data and isinstance(data[0], BarMeasurement):
        return np.vstack([b.normalized_lengths for b in data])
    profiles = np.atleast_2d(np.asarray(data, dtype=float))
    if profiles.ndim != 2 or profiles.shape[1] != 6 or profiles.shape[0] == 0:
        raise MeasurementError("fit input must be one or more length-6 profiles")
    return profiles


def fit_theta(data) -> FitResult:
    """Exact least-squares swing parameters for measured pulse lengths.

    ``data`` may be a list of :class:`BarMeasurement`, a single six-value
    profile, or a stack of profiles.  The squared error is accumulated on
    the pulse lengths across every row supplied.
    """
    profiles = _as_profiles(data)
    n_bars = profiles.shape[0]
    deviations = 3.0 * (profiles - 1.0 / 6.0)
    design = (_DESIGN / 6.0).T  # 6x3, identical for every bar
    stacked = np.tile(design, (n_bars, 1))
    beta, *_ = np.linalg.lstsq(stacked, deviations.ravel(), rcond=None)
    theta1, a, b = (float(v) for v in beta)
    degenerate = abs(a) < DEGENERATE_A
    theta3 = 0.0 if degenerate else b / a
    model_lengths = 1.0 / 6.0 + (design @ beta) / 3.0
    sse = float(np.sum((profiles - model_lengths) ** 2))
    return FitResult(
        params=FeelParams(theta1=theta1, theta2=a, theta3=theta3),
        sse=sse,
        n_bars=n_bars,
        degenerate_theta3=degenerate,
    )


def read_measurements_csv(path) -> list[BarMeasurement]:
    """Load ``bar_id,onset_ms`` rows (seven per bar, in time order) from a CSV."""
    groups: dict[str, list[float]] = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"bar_id", "onset_ms"} <= set(
            reader.fieldnames
        ):
            raise MeasurementError("CSV must have a 'bar_id,onset_ms' header")
        for row in reader:
            try:
                groups.setdefault(row["bar_id"], []).append(float(row["onset_ms"]))
            except (TypeError, ValueError) as exc:
                raise MeasurementError("bad onset value in row %r" % (row,)) from exc
    if not groups:
        raise MeasurementError("no measurements in file")
    bars = []
    for bar_id, onsets in groups.items():
        if len(onsets) != 7:
            raise MeasurementError(
                "bar %r has %d onsets, expected 7" % (bar_id, len(onsets))
            )
        bars.append(normalize_bar(onsets))
    return bars
