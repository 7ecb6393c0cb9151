"""Rank local metric readings of a track: which pulses feel duple or triple.

Candidate readings are a single well-formed structure spanning the whole
bar, or a pair of structures tiling it, anchored at every start pulse.  A
candidate's score rewards structures whose strong beats carry many strokes
(event rule) and long inter-onset gaps (length rule); a pair is additionally
discounted when the second structure takes over on what would have been a
weak beat of the first (modulation rule).  Candidates with the same
per-pulse signature are collapsed to the best-scoring reading, and the
survivors are ranked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AnalysisError
from .pattern import InstrumentTrack, event_onset_vector, ioi_vector
from .templates import (
    KINDS,
    MetricTemplate,
    admissible,
    build_template,
    extended_strength,
)

_KIND_DIGIT = {"binary": 2, "ternary": 3}
_KIND_RANK = {"binary": 0, "ternary": 1}
MIN_SEGMENT = 4


@dataclass(frozen=True)
class Segment:
    start: int
    length: int
    kind: str

    def to_dict(self) -> dict:
        return {"start": self.start, "length": self.length, "kind": self.kind}


@dataclass(frozen=True)
class Interpretation:
    """A per-pulse duple/triple signature with its best tiling and score."""

    signature: tuple[int, ...]
    segments: tuple[Segment, ...]
    score: float

    def to_dict(self) -> dict:
        return {
            "signature": list(self.signature),
            "segments": [s.to_dict() for s in self.segments],
            "score": self.score,
        }


def segment_score(
    p: int, template: MetricTemplate, ioi: np.ndarray, onsets: np.ndarray
) -> float:
    """Alignment of one structure with the pattern, anchored at pulse ``p``.

    Sum over the structure of weight * (gap / bar length) * stroke count,
    with weights the template strengths normed to one.  fsum keeps the value
    independent of term order so symmetric rotations tie exactly.
    """
    length = len(ioi)
    idx = (p + np.arange(template.length)) % length
    terms = template.weights[: template.length] * (ioi[idx] / length) * onsets[idx]
    return math.fsum(terms.tolist())


def modulation_penalty(template: MetricTemplate, boundary_offset: int) -> float:
    """Discount for handing over to the next structure at a given offset.

    Maps the beat strength of the continued grid at the boundary linearly
    into [0.5, 1]: a takeover on the strongest beat costs nothing, one on
    the weakest beat halves the score.
    """
    s = extended_strength(template, boundary_offset)
    s_max = template.max_strength
    return 0.5 + 0.5 * (s - 1) / (s_max - 1)


def _signature_for(segments, length: int) -> tuple[int, ...]:
    digits = [0] * length
    for seg in segments:
        digit = _KIND_DIGIT[seg.kind]
        for i in range(seg.length):
            digits[(seg.start + i) % length] = digit
    return tuple(digits)


def _candidates(onsets: np.ndarray, ioi: np.ndarray):
    """Yield (score, tie_break_key, segments) over the whole candidate family.

    Two-part candidates carry one modulation discount, taken where the lead
    structure hands over to its complement; the wrap-around boundary is the
    complement's own hand-over and surfaces via the mirrored candidate.
    """
    length = len(onsets)
    for kind in KINDS:
        if not admissible(kind, length):
            continue
        template = build_template(kind, length)
        for p in range(length):
            score = segment_score(p, template, ioi, onsets)
            key = (p, -length, _KIND_RANK[kind], -1)
            yield score, key, (Segment(p, length, kind),)
    for n_lead in range(MIN_SEGMENT, length - MIN_SEGMENT + 1):
        n_tail = length - n_lead
        for kind_lead in KINDS:
            if not admissible(kind_lead, n_lead):
                continue
            lead = build_template(kind_lead, n_lead)
            penalty = modulation_penalty(lead, n_lead)
            for kind_tail in KINDS:
                if not admissible(kind_tail, n_tail):
                    continue
                tail = build_template(kind_tail, n_tail)
                for p in range(length):
                    q = (p + n_lead) % length
                    base = (n_lead / length) * segment_score(p, lead, ioi, onsets) + (
                        n_tail / length
                    ) * segment_score(q, tail, ioi, onsets)
                    key = (p, -n_lead, _KIND_RANK[kind_lead], _KIND_RANK[kind_tail])
                    yield base * penalty, key, (
                        Segment(p, n_lead, kind_lead),
                        Segment(q, n_tail, kind_tail),
                    )


def enumerate_interpretations(track: InstrumentTrack) -> list[Interpretation]:
    """Ranked duple/triple readings of one track, best first.

    Ties are broken toward the smaller start pulse, then the longer lead
    structure, then duple before triple.  The result is deterministic and
    exhaustive over whole-bar structures plus two-part tilings.
    """
    onsets = event_onset_vector(track)
    if int(onsets.sum()) == 0:
        raise AnalysisError("no events to analyze")
    return rank_interpretations(onsets, ioi_vector(onsets))


def rank_interpretations(onsets: np.ndarray, ioi: np.ndarray) -> list[Interpretation]:
    best: dict[tuple[int, ...], tuple[float, tuple, tuple[Segment, ...]]] = {}
    length = len(onsets)
    for score, key, segments in _candidates(onsets, ioi):
        signature = _signature_for(segments, length)
        current = best.get(signature)
        if (
            current is None
            or score > current[0]
            or (score == current[0] and key < current[1])
        ):
            best[signature] = (score, key, segments)
    ranked = sorted(
        best.items(), key=lambda item: (-item[1][0], item[1][1], item[0])
    )
    return [
        Interpretation(signature=sig, segments=segs, score=score)
        for sig, (score, _key, segs) in ranked
    ]
