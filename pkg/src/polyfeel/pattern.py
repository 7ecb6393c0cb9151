"""Step-sequencer pattern model and the vectors rhythm analysis consumes.

A pattern is a bank of instrument matrices over a shared cyclic grid of 12 or
16 pulses per bar.  Analysis never reads the matrices directly; everything
downstream works on two per-track vectors: the event onset vector (number of
strokes at each pulse) and the inter-onset-interval vector (pulses from each
stroke to the next one, wrapping around the bar).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import PatternError

ADMISSIBLE_PULSES = (12, 16)
ROLES = ("normal", "solo_laid_back")


@dataclass(frozen=True)
class InstrumentTrack:
    """One sequencer matrix: timbre rows by pulse columns of 0/1 hit flags."""

    name: str
    timbres: tuple[str, ...]
    matrix: np.ndarray
    role: str = "normal"

    def __post_init__(self):
        timbres = tuple(str(t) for t in self.timbres)
        if not timbres:
            raise PatternError("track %r needs at least one timbre" % self.name)
        matrix = np.asarray(self.matrix, dtype=int)
        if matrix.ndim != 2 or matrix.shape[0] != len(timbres):
            raise PatternError(
                "track %r matrix must have one row per timbre" % self.name
            )
        if not np.isin(matrix, (0, 1)).all():
            raise PatternError("track %r matrix entries must be 0 or 1" % self.name)
        if self.role not in ROLES:
            raise PatternError(
                "track %r role must be one of %s" % (self.name, ", ".join(ROLES))
            )
        matrix.setflags(write=False)
        object.__setattr__(self, "timbres", timbres)
        object.__setattr__(self, "matrix", matrix)

    @property
    def pulses(self) -> int:
        return self.matrix.shape[1]

    @property
    def hit_count(self) -> int:
        return int(self.matrix.sum())


@dataclass(frozen=True)
class Pattern:
    """A full sequencer document: grid size, tempo, bar count and tracks."""

    pulses_per_bar: int
    tempo_bpm: float
    instruments: tuple[InstrumentTrack, ...] = field(default_factory=tuple)
    bars: int = 1

    def __post_init__(self):
        if self.pulses_per_bar not in ADMISSIBLE_PULSES:
            raise PatternError(
                "pulsesPerBar must be 12 or 16, got %r" % (self.pulses_per_bar,),
                field="pulsesPerBar",
            )
        if not (isinstance(self.tempo_bpm, (int, float)) and self.tempo_bpm > 0):
            raise PatternError("tempoBpm must be a positive number", field="tempoBpm")
        if not (isinstance(self.bars, int) and self.bars >= 1):
            raise PatternError("bars must be an integer >= 1", field="bars")
        object.__setattr__(self, "instruments", tuple(self.instruments))
        for i, track in enumerate(self.instruments):
            if track.pulses != self.pulses_per_bar:
                raise PatternError(
                    "track %r matrix must have %d columns" % (track.name, self.pulses_per_bar),
                    field="instruments[%d].matrix" % i,
                )

    # -- JSON document round trip ------------------------------------------

    @classmethod
    def from_dict(cls, doc: dict) -> "Pattern":
        if not isinstance(doc, dict):
            raise PatternError("pattern document must be a JSON object")
        for key in ("pulsesPerBar", "tempoBpm", "instruments"):
            if key not in doc:
                raise PatternError("missing required field %r" % key, field=key)
        tracks = []
        instruments = doc["instruments"]
        if not isinstance(instruments, list):
            raise PatternError("instruments must be a list", field="instruments")
        for i, entry in enumerate(instruments):
            where = "instruments[%d]" % i
            if not isinstance(entry, dict):
                raise PatternError("instrument entry must be an object", field=where)
            try:
                tracks.append(
                    InstrumentTrack(
                        name=str(entry.get("name", "instrument-%d" % i)),
                        timbres=tuple(entry.get("timbres", ())),
                        matrix=entry.get("matrix", ()),
                        role=entry.get("role", "normal"),
                    )
                )
            except PatternError as exc:
                raise PatternError(str(exc), field=where) from exc
        bars = doc.get("bars", 1)
        if isinstance(bars, float) and bars.is_integer():
            bars = int(bars)
        pulses = doc["pulsesPerBar"]
        if isinstance(pulses, float) and pulses.is_integer():
            pulses = int(pulses)
        return cls(
            pulses_per_bar=pulses,
            tempo_bpm=doc["tempoBpm"],
            instruments=tuple(tracks),
            bars=bars,
        )

    def to_dict(self) -> dict:
        return {
            "pulsesPerBar": self.pulses_per_bar,
            "tempoBpm": float(self.tempo_bpm),
            "bars": self.bars,
            "instruments": [
                {
                    "name": t.name,
                    "role": t.role,
                    "timbres": list(t.timbres),
                    "matrix": t.matrix.tolist(),
                }
                for t in self.instruments
            ],
        }

    @classmethod
    def from_json(cls, text: str) -> "Pattern":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PatternError("invalid JSON: %s" % exc) from exc
        return cls.from_dict(doc)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def load_pattern(path) -> Pattern:
    with open(path, "r", encoding="utf-8") as fh:
        return Pattern.from_json(fh.read())


def event_onset_vector(track: InstrumentTrack) -> np.ndarray:
    """Number of sound events per pulse: the column sums of the track matrix.

    Several timbres striking the same pulse count as several events, which
    weights the event preference rule toward dense pulses.
    """
    return track.matrix.sum(axis=0)


def ioi_vector(onsets: np.ndarray) -> np.ndarray:
    """Pulses from each stroke to the next one, wrapping around the bar.

    Entries are zero wherever the onset vector is zero; a lone event spans
    the whole cycle.  The nonzero entries of a non-empty vector always sum
    to the bar length.
    """
    counts = np.asarray(onsets, dtype=int)
    length = counts.size
    hits = np.flatnonzero(counts > 0)
    lengths = np.zeros(length, dtype=int)
    if hits.size == 0:
        return lengths
    if hits.size == 1:
        lengths[hits[0]] = length
        return lengths
    lengths[hits] = (np.roll(hits, -1) - hits) % length
    return lengths
