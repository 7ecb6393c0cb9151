"""Turn a pattern plus its analysis into a humanized performance timeline.

Each bar of each track picks one of the top-ranked metric readings (with a
seeded chance of hopping to another good one at bar boundaries), drifts the
swing parameters in a small seeded random walk, and stretches the pulse grid
with the six-pulse feel cycle aligned to every signature segment.  Velocities
come from the beat strengths of the chosen reading, phrase edges get accents,
and a solo voice may lay back its mid-phrase downbeats.  Given the same seed
the result is bit-identical, whether tracks render serially or in parallel.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .meter import Interpretation
from .pattern import Pattern, InstrumentTrack, event_onset_vector
from .phrases import PhraseStructure, in_span
from .templates import MetricTemplate, build_template
from .timing import (
    LENGTH_FLOOR,
    FeelParams,
    FeelProfile,
    blend_for_signature,
    deviation_vector,
    meter_scale,
    pulse_time_ms,
)

logger = logging.getLogger(__name__)

VELOCITY_MODES = ("metric", "backbeat", "offbeat")

ELIGIBLE_SCORE_RATIO = 0.8
WALK_RANGE_RATIO = 0.2
DEFAULT_LAID_BACK_BEAT_FRACTION = 0.02


@dataclass(frozen=True)
class RenderOptions:
    velocity_mode: str = "metric"
    v_min: int = 64
    v_max: int = 112
    phrase_accent_first: float = 1.10
    phrase_accent_last: float = 1.08
    laid_back_ms_per_beat: float | None = None  # None -> 2% of a beat
    switch_probability: float = 0.15
    walk_step: float = 0.02
    seed: int = 0
    top_k: int = 4

    def __post_init__(self):
        if self.velocity_mode not in VELOCITY_MODES:
            raise ParameterError("velocity_mode must be one of %s" % (VELOCITY_MODES,))
        if not (1 <= self.v_min < self.v_max <= 127):
            raise ParameterError("need 1 <= v_min < v_max <= 127")
        if self.phrase_accent_first < 1 or self.phrase_accent_last < 1:
            raise ParameterError("phrase accent multipliers must be >= 1")
        if not (0.0 <= self.switch_probability <= 1.0):
            raise ParameterError("switch_probability must lie in [0, 1]")
        if self.walk_step < 0:
            raise ParameterError("walk_step must be >= 0")
        if self.top_k < 1:
            raise ParameterError("top_k must be >= 1")


@dataclass(frozen=True)
class NoteEvent:
    t_ms: float
    instrument: str
    timbre: str
    velocity: int
    pulse: int
    bar: int

    def to_dict(self) -> dict:
        return {
            "tMs": self.t_ms,
            "instrument": self.instrument,
            "timbre": self.timbre,
            "velocity": self.velocity,
            "pulse": self.pulse,
            "bar": self.bar,
        }


@dataclass(frozen=True)
class PerformanceTimeline:
    events: tuple[NoteEvent, ...]
    total_ms: float
    tempo_bpm: float
    gate_ms: float
    clock: tuple[tuple[int, int, float], ...] = ()  # (bar, pulse, tMs) conductor grid
    instrument_timbres: tuple[tuple[str, tuple[str, ...]], ...] = ()

    def to_dict(self) -> dict:
        return {
            "events": [e.to_dict() for e in self.events],
            "totalMs": self.total_ms,
        }


def grid_kind(pulses_per_bar: int) -> str:
    """Footing of the shared grid: how many pulses make one beat."""
    return "quaternary" if pulses_per_bar == 16 else "ternary"


def pulses_per_beat(pulses_per_bar: int) -> int:
    return 4 if pulses_per_bar == 16 else 3


def velocity_map(
    template: MetricTemplate, mode: str, options: RenderOptions
) -> np.ndarray:
    """Velocity per template pulse for one of the three accent styles."""
    v_min, v_max = options.v_min, options.v_max
    span = v_max - v_min
    strengths = template.strengths
    s_max = template.max_strength
    if mode == "backbeat" and template.kind != "binary":
        logger.warning(
            "backbeat velocities need a duple structure; using metric mode for a %s one",
            template.kind,
        )
        mode = "metric"
    if mode == "metric":
        values = v_min + span * (strengths - 1) / (s_max - 1)
    elif mode == "offbeat":
        values = v_min + span * (s_max - strengths) / (s_max - 1)
    else:  # backbeat
        values = np.full(template.length, v_min, dtype=float)
        counts = [
            (abs(template.length // t - 4), -(template.length // t), t)
            for t in template.level_periods
            if t >= 2
        ]
        period = min(counts)[2]
        beats = range(0, template.length, period)
        for index, beat in enumerate(beats):
            values[beat] = v_max if index % 2 == 1 else v_min + span / 2
    return np.clip(np.rint(values), 1, 127).astype(int)


def _safe_lengths(params: FeelParams, context: str) -> np.ndarray:
    """Feel pulse lengths that never raise: floor-clamped and renormalized."""
    lengths = 1.0 / 6.0 + deviation_vector(params) / 3.0
    if lengths.min() <= LENGTH_FLOOR:
        logger.warning(
            "%s: pulse lengths below the %.2f floor were clamped", context, LENGTH_FLOOR
        )
        lengths = np.maximum(lengths, LENGTH_FLOOR)
        lengths = lengths / lengths.sum()
    return lengths


def _walk_params(
    rng: random.Random, current: FeelParams, base: FeelParams, step: float
) -> FeelParams:
    values = []
    for now, origin in zip(current.as_tuple(), base.as_tuple()):
        lo = origin - WALK_RANGE_RATIO * abs(origin)
        hi = origin + WALK_RANGE_RATIO * abs(origin)
        moved = now + rng.uniform(-step, step)
        values.append(max(lo, min(hi, moved)))
    return FeelParams(*values)


def _phrase_edges(
    track: InstrumentTrack, phrase: PhraseStructure | None, length: int
) -> tuple[set[int], set[int]]:
    """Pulses carrying the first and the last stroke of each phrase."""
    if phrase is None:
        return set(), set()
    onset_pulses = [int(j) for j in np.flatnonzero(event_onset_vector(track) > 0)]
    firsts = set(phrase.boundaries)
    lasts = set()
    for span in phrase.phrases:
        inside = [p for p in onset_pulses if in_span(p, span, length)]
        if inside:
            lasts.add(max(inside, key=lambda p: (p - span[0]) % length))
    return firsts, lasts


def _bar_arrays(
    interpretation: Interpretation,
    bar_profile: FeelProfile,
    length: int,
    scale: float,
    options: RenderOptions,
    velocity_cache: dict,
    track_name: str,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-pulse durations (beats) and velocities for one bar of one reading."""
    durations = np.empty(length, dtype=float)
    velocities = np.empty(length, dtype=int)
    segments = interpretation.segments
    # A lone duple structure over a bar the six-pulse cycle does not divide
    # keeps only its period-two component; anything else would tie the cycle
    # seam to an arbitrary mid-bar pulse.
    strip_triple = (
        len(segments) == 1 and segments[0].length == length and length % 6 != 0
    )
    for segment in segments:
        params = blend_for_signature(bar_profile, segment.kind)
        if strip_triple:
            params = FeelParams(params.theta1, 0.0, 0.0)
        lengths = _safe_lengths(params, "track %r" % track_name)
        template = build_template(segment.kind, segment.length)
        cache_key = (segment.kind, segment.length, options.velocity_mode)
        if cache_key not in velocity_cache:
            velocity_cache[cache_key] = velocity_map(
                template, options.velocity_mode, options
            )
        vmap = velocity_cache[cache_key]
        for offset in range(segment.length):
            j = (segment.start + offset) % length
            durations[j] = lengths[offset % 6] * scale
            velocities[j] = vmap[offset]
    return durations, velocities


def _render_track(
    index: int,
    track: InstrumentTrack,
    interpretations: list[Interpretation] | None,
    phrase: PhraseStructure | None,
    pattern: Pattern,
    profile: FeelProfile,
    options: RenderOptions,
    laid_back_ms: float,
) -> tuple[list[NoteEvent], list[tuple[int, int, float]], float]:
    length = pattern.pulses_per_bar
    scale = meter_scale(grid_kind(length))
    beat_pulses = pulses_per_beat(length)
    rng = random.Random(options.seed ^ index)
    events: list[NoteEvent] = []
    grid: list[tuple[int, int, float]] = []

    if not interpretations:
        # No analysis (e.g. an empty track): a straight grid, no events.
        straight = pulse_time_ms(scale / 6.0, pattern.tempo_bpm)
        for bar in range(pattern.bars):
            for j in range(length):
                grid.append((bar, j, (bar * length + j) * straight))
        return events, grid, pattern.bars * length * straight

    eligible = [
        i
        for i in interpretations[: options.top_k]
        if i.score >= ELIGIBLE_SCORE_RATIO * interpretations[0].score
    ]
    current = interpretations[0]
    walked = profile.base
    firsts, lasts = _phrase_edges(track, phrase, length)
    velocity_cache: dict = {}
    t = 0.0

    for bar in range(pattern.bars):
        if bar > 0:
            if rng.random() < options.switch_probability and len(eligible) > 1:
                current = rng.choice([i for i in eligible if i is not current])
            walked = _walk_params(rng, walked, profile.base, options.walk_step)
        bar_profile = FeelProfile(
            base=walked,
            binary_scale=profile.binary_scale,
            ternary_scale=profile.ternary_scale,
        )
        durations, velocities = _bar_arrays(
            current, bar_profile, length, scale, options, velocity_cache, track.name
        )
        onset_beats = np.concatenate(([0.0], np.cumsum(durations)))
        for j in range(length):
            t_pulse = t + pulse_time_ms(onset_beats[j], pattern.tempo_bpm)
            grid.append((bar, j, t_pulse))
            if not track.matrix[:, j].any():
                continue
            velocity = float(velocities[j])
            if j in firsts:
                velocity *= options.phrase_accent_first
            if j in lasts and j not in firsts:
                velocity *= options.phrase_accent_last
            t_event = t_pulse
            if (
                track.role == "solo_laid_back"
                and j % beat_pulses == 0
                and j not in firsts
                and j not in lasts
            ):
                t_event += laid_back_ms
            vel = int(np.clip(round(velocity), 1, 127))
            for row, timbre in enumerate(track.timbres):
                if track.matrix[row, j]:
                    events.append(
                        NoteEvent(
                            t_ms=t_event,
                            instrument=track.name,
                            timbre=timbre,
                            velocity=vel,
                            pulse=j,
                            bar=bar,
                        )
                    )
        t += pulse_time_ms(onset_beats[length], pattern.tempo_bpm)
    return events, grid, t


def render(
    pattern: Pattern,
    analyses,
    phrases,
    profile: FeelProfile | None = None,
    options: RenderOptions | None = None,
    parallel: bool = False,
) -> PerformanceTimeline:
    """Render a seeded performance timeline.

    ``analyses`` and ``phrases`` are sequences aligned with the pattern's
    instruments (``None`` entries for tracks that could not be analyzed).
    Per track the RNG stream is seeded with ``seed XOR track index``, so the
    serial and parallel paths agree bit for bit.
    """
    profile = profile or FeelProfile()
    options = options or RenderOptions()
    length = pattern.pulses_per_bar
    scale = meter_scale(grid_kind(length))
    beat_ms = pulse_time_ms(1.0, pattern.tempo_bpm)
    laid_back_ms = (
        options.laid_back_ms_per_beat
        if options.laid_back_ms_per_beat is not None
        else DEFAULT_LAID_BACK_BEAT_FRACTION * beat_ms
    )

    jobs = [
        (i, track, analyses[i] if i < len(analyses) else None,
         phrases[i] if i < len(phrases) else None)
        for i, track in enumerate(pattern.instruments)
    ]

    def run(job):
        i, track, interps, phrase = job
        return _render_track(
            i, track, interps, phrase, pattern, profile, options, laid_back_ms
        )

    if parallel and jobs:
        with ThreadPoolExecutor(max_workers=min(8, len(jobs))) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(job) for job in jobs]

    events: list[NoteEvent] = []
    for track_events, _grid, _total in results:
        events.extend(track_events)
    events.sort(key=lambda e: e.t_ms)

    straight_total = pattern.bars * length * pulse_time_ms(scale / 6.0, pattern.tempo_bpm)
    total_ms = max((total for _e, _g, total in results), default=straight_total)

    conductor: list[tuple[int, int, float]] = []
    for job, (track_events, grid, _total) in zip(jobs, results):
        if job[2]:
            conductor = grid
            break
    if not conductor:
        straight = pulse_time_ms(scale / 6.0, pattern.tempo_bpm)
        conductor = [
            (bar, j, (bar * length + j) * straight)
            for bar in range(pattern.bars)
            for j in range(length)
        ]

    return PerformanceTimeline(
        events=tuple(events),
        total_ms=total_ms,
        tempo_bpm=pattern.tempo_bpm,
        gate_ms=0.5 * pulse_time_ms(scale / 6.0, pattern.tempo_bpm),
        clock=tuple(conductor),
        instrument_timbres=tuple(
            (t.name, tuple(t.timbres)) for t in pattern.instruments
        ),
    )
