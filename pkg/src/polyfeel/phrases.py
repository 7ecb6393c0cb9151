"""Group a track's strokes into phrases.

Two sources propose phrase boundaries.  A stroke followed by a gap larger
than the gaps on both sides closes a phrase, so the *next* stroke opens one;
the proposal is weighted by how much the gap exceeds the previous one.  And
wherever the chosen metric reading modulates, the first stroke of the new
local meter opens a phrase.  Coincident proposals add up, and everything at
or above a threshold survives (with a guaranteed minimum of one boundary).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AnalysisError
from .meter import Interpretation

SIGNATURE_BONUS = 1.0
SCORE_THRESHOLD = 1.0


@dataclass(frozen=True)
class PhraseStructure:
    boundaries: tuple[int, ...]  # sorted pulse indices where phrases begin
    phrases: tuple[tuple[int, int], ...]  # cyclic (start, inclusive end) spans
    boundary_scores: tuple[float, ...]

    def to_dict(self) -> dict:
        return {"phrases": [{"start": s, "end": e} for s, e in self.phrases]}


def gap_boundaries(ioi: np.ndarray) -> list[tuple[int, float]]:
    """Boundary proposals from locally maximal gaps.

    For each stroke whose following gap beats both neighbouring gaps
    (cyclically), propose the next stroke as a boundary, scored by the ratio
    of the gap to the previous one.  Needs at least two strokes.
    """
    ioi = np.asarray(ioi)
    onset_pulses = np.flatnonzero(ioi > 0)
    m = onset_pulses.size
    if m < 2:
        return []
    gaps = ioi[onset_pulses]
    proposals = []
    for k in range(m):
        gap = gaps[k]
        if gap > gaps[(k - 1) % m] and gap > gaps[(k + 1) % m]:
            proposals.append(
                (int(onset_pulses[(k + 1) % m]), float(gap / gaps[(k - 1) % m]))
            )
    return proposals


def _first_onset_at_or_after(start: int, onset_pulses: np.ndarray, length: int) -> int:
    for step in range(length):
        pulse = (start + step) % length
        if pulse in onset_pulses:
            return pulse
    raise AnalysisError("no events to analyze")


def segment_phrases(
    onsets: np.ndarray,
    ioi: np.ndarray,
    interpretation: Interpretation,
    *,
    signature_bonus: float = SIGNATURE_BONUS,
    threshold: float = SCORE_THRESHOLD,
) -> PhraseStructure:
    """Combine gap and modulation evidence into a phrase tiling of the bar."""
    onsets = np.asarray(onsets)
    length = onsets.size
    onset_pulses = set(int(j) for j in np.flatnonzero(onsets > 0))
    if not onset_pulses:
        raise AnalysisError("no events to analyze")

    scores: dict[int, float] = {}
    for pulse, score in gap_boundaries(ioi):
        scores[pulse] = scores.get(pulse, 0.0) + score
    for segment in interpretation.segments:
        pulse = _first_onset_at_or_after(segment.start, onset_pulses, length)
        scores[pulse] = scores.get(pulse, 0.0) + signature_bonus

    selected = sorted(p for p, s in scores.items() if s >= threshold)
    if not selected:
        if scores:
            selected = [max(scores, key=lambda p: (scores[p], -p))]
        else:
            selected = [min(onset_pulses)]
            scores[selected[0]] = 0.0

    if len(selected) == 1:
        b = selected[0]
        spans = [(b, (b - 1) % length)]
    else:
        spans = [
            (b, (selected[(i + 1) % len(selected)] - 1) % length)
            for i, b in enumerate(selected)
        ]
    return PhraseStructure(
        boundaries=tuple(selected),
        phrases=tuple(spans),
        boundary_scores=tuple(scores[p] for p in selected),
    )


def in_span(pulse: int, span: tuple[int, int], length: int) -> bool:
    """Whether a pulse lies in a cyclic (start, inclusive end) span."""
    start, end = span
    offset = (pulse - start) % length
    return offset <= (end - start) % length
