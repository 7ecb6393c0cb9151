import numpy as np
import pytest

from polyfeel import (
    FeelProfile,
    InstrumentTrack,
    MidiExportError,
    NoteEvent,
    Pattern,
    PerformanceTimeline,
    RenderOptions,
    analyze_pattern,
    export_midi,
    render,
)
from polyfeel.midi import ms_to_tick
from oracles import parse_smf


def timeline_of(events, tempo=120.0, instruments=()):
    return PerformanceTimeline(
        events=tuple(events),
        total_ms=2000.0,
        tempo_bpm=tempo,
        gate_ms=62.5,
        instrument_timbres=tuple(instruments),
    )


class TestTickArithmetic:
    def test_quarter_beat_event(self):
        assert ms_to_tick(250.0, 120.0, 480) == 240

    def test_zero(self):
        assert ms_to_tick(0.0, 90.0, 480) == 0

    def test_overflow_raises(self):
        with pytest.raises(MidiExportError):
            ms_to_tick(1e12, 120.0, 480)


class TestFileStructure:
    def test_empty_timeline_is_tempo_track_only(self):
        data = export_midi(timeline_of([]))
        fmt, division, tracks = parse_smf(data)
        assert fmt == 1
        assert division == 480
        assert len(tracks) == 1
        metas = [e for _t, e in tracks[0] if e[0] == "meta"]
        tempo_meta = [e for e in metas if e[1] == 0x51]
        assert len(tempo_meta) == 1
        assert int.from_bytes(tempo_meta[0][2], "big") == 500000  # 120 BpM

    def test_rejects_low_ppq(self):
        with pytest.raises(MidiExportError):
            export_midi(timeline_of([]), ppq=48)

    def test_note_on_tick_matches_formula(self):
        events = [NoteEvent(250.0, "drum", "hit", 100, 2, 0)]
        data = export_midi(timeline_of(events, instruments=[("drum", ("hit",))]))
        _fmt, _div, tracks = parse_smf(data)
        ons = [(t, e) for t, e in tracks[1] if e[0] == "on"]
        assert len(ons) == 1
        assert ons[0][0] == 240

    def test_simultaneous_timbres_share_a_tick(self):
        events = [
            NoteEvent(500.0, "drum", "a", 90, 0, 0),
            NoteEvent(500.0, "drum", "b", 95, 0, 0),
        ]
        data = export_midi(timeline_of(events, instruments=[("drum", ("a", "b"))]))
        _fmt, _div, tracks = parse_smf(data)
        ons = [(t, e) for t, e in tracks[1] if e[0] == "on"]
        assert len(ons) == 2
        assert ons[0][0] == ons[1][0] == 480
        assert ons[0][1][2] != ons[1][1][2]  # distinct note numbers

    def test_one_track_per_instrument(self):
        events = [
            NoteEvent(0.0, "kick", "x", 100, 0, 0),
            NoteEvent(125.0, "snare", "y", 100, 1, 0),
        ]
        data = export_midi(
            timeline_of(events, instruments=[("kick", ("x",)), ("snare", ("y",))])
        )
        _fmt, _div, tracks = parse_smf(data)
        assert len(tracks) == 3  # tempo + two instruments

    def test_every_on_has_matching_off(self):
        pattern = Pattern(
            16, 120.0,
            (InstrumentTrack("d", ("a", "b"), np.tile([[1, 0], [0, 1]], (1, 8))),),
            bars=2,
        )
        analyses = analyze_pattern(pattern)
        timeline = render(
            pattern,
            [list(a.interpretations) for a in analyses],
            [a.phrases for a in analyses],
            FeelProfile(),
            RenderOptions(seed=4),
        )
        _fmt, _div, tracks = parse_smf(export_midi(timeline))
        ons = [e for _t, e in tracks[1] if e[0] == "on"]
        offs = [e for _t, e in tracks[1] if e[0] == "off"]
        assert len(ons) == len(offs) == len(timeline.events)

    def test_byte_stability(self, son_clave_pattern):
        analyses = analyze_pattern(son_clave_pattern)
        args = (
            son_clave_pattern,
            [list(a.interpretations) for a in analyses],
            [a.phrases for a in analyses],
            FeelProfile(),
            RenderOptions(seed=11, switch_probability=0.3, walk_step=0.02),
        )
        first = export_midi(render(*args))
        second = export_midi(render(*args))
        assert first == second
