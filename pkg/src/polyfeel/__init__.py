"""polyfeel: rhythm analysis and six-pulse swing rendering for step sequencers.

The library analyzes drum-computer patterns for local duple/triple metric
structure, groups strokes into phrases, fits a three-parameter micro-timing
model to measured performances, and renders patterns as humanized, seeded
performance timelines exportable to standard MIDI files.
"""

from .analysis import TrackAnalysis, analyze_pattern, analyze_track, build_report
from .errors import (
    AnalysisError,
    EngineError,
    MeasurementError,
    MidiExportError,
    ParameterError,
    PatternError,
    StructureError,
)
from .fitting import (
    BarMeasurement,
    FitResult,
    fit_theta,
    median_profile,
    normalize_bar,
    read_measurements_csv,
)
from .meter import (
    Interpretation,
    Segment,
    enumerate_interpretations,
    modulation_penalty,
    rank_interpretations,
    segment_score,
)
from .midi import export_midi
from .pattern import (
    InstrumentTrack,
    Pattern,
    event_onset_vector,
    ioi_vector,
    load_pattern,
)
from .phrases import PhraseStructure, gap_boundaries, segment_phrases
from .render import (
    NoteEvent,
    PerformanceTimeline,
    RenderOptions,
    render,
    velocity_map,
)
from .templates import MetricTemplate, build_template, normalize_weights
from .timing import (
    FeelParams,
    FeelProfile,
    binary_lengths,
    blend_for_signature,
    deviation_vector,
    feel_pulse_lengths,
    meter_scale,
    pulse_time_ms,
    ternary_lengths,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "BarMeasurement",
    "EngineError",
    "FeelParams",
    "FeelProfile",
    "FitResult",
    "InstrumentTrack",
    "Interpretation",
    "MeasurementError",
    "MetricTemplate",
    "MidiExportError",
    "NoteEvent",
    "ParameterError",
    "Pattern",
    "PatternError",
    "PerformanceTimeline",
    "PhraseStructure",
    "RenderOptions",
    "Segment",
    "StructureError",
    "TrackAnalysis",
    "analyze_pattern",
    "analyze_track",
    "binary_lengths",
    "blend_for_signature",
    "build_report",
    "build_template",
    "deviation_vector",
    "enumerate_interpretations",
    "event_onset_vector",
    "export_midi",
    "feel_pulse_lengths",
    "fit_theta",
    "gap_boundaries",
    "ioi_vector",
    "load_pattern",
    "median_profile",
    "meter_scale",
    "modulation_penalty",
    "normalize_bar",
    "normalize_weights",
    "pulse_time_ms",
    "rank_interpretations",
    "read_measurements_csv",
    "render",
    "segment_phrases",
    "segment_score",
    "ternary_lengths",
    "velocity_map",
]
