"""Per-track analysis pipeline and the report document it produces."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AnalysisError
from .meter import Interpretation, enumerate_interpretations
from .pattern import InstrumentTrack, Pattern, event_onset_vector, ioi_vector
from .phrases import PhraseStructure, segment_phrases


@dataclass(frozen=True)
class TrackAnalysis:
    track: InstrumentTrack
    onsets: np.ndarray | None = None
    ioi: np.ndarray | None = None
    interpretations: tuple[Interpretation, ...] | None = None
    phrases: PhraseStructure | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def analyze_track(track: InstrumentTrack) -> TrackAnalysis:
    """Run onset extraction, metric ranking and phrase grouping on one track."""
    try:
        onsets = event_onset_vector(track)
        ioi = ioi_vector(onsets)
        interpretations = tuple(enumerate_interpretations(track))
        phrases = segment_phrases(onsets, ioi, interpretations[0])
    except AnalysisError as exc:
        return TrackAnalysis(track=track, error=str(exc))
    return TrackAnalysis(
        track=track,
        onsets=onsets,
        ioi=ioi,
        interpretations=interpretations,
        phrases=phrases,
    )


def analyze_pattern(pattern: Pattern) -> list[TrackAnalysis]:
    """Analyze every track independently; failures stay per-track."""
    return [analyze_track(track) for track in pattern.instruments]


def build_report(analyses: list[TrackAnalysis]) -> dict:
    """The analysis report document served to clients and printed by the CLI."""
    tracks = []
    for analysis in analyses:
        if not analysis.ok:
            tracks.append(
                {
                    "track": analysis.track.name,
                    "error": {"code": "no_events", "message": analysis.error},
                }
            )
            continue
        tracks.append(
            {
                "track": analysis.track.name,
                "interpretations": [i.to_dict() for i in analysis.interpretations],
                "phrases": analysis.phrases.to_dict()["phrases"],
            }
        )
    return {"tracks": tracks}
