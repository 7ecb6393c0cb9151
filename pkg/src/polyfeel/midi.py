"""Standard MIDI file writer for performance timelines.

Emits a format-1 file: a tempo track plus one track per instrument, all note
events on the percussion channel.  Ticks come straight from the event times:
tick = round(ms * bpm * ppq / 60000).  Every note gets a fixed gate and each
(instrument, timbre) pair its own note number.
"""

from __future__ import annotations

import struct

from .errors import MidiExportError
from .render import PerformanceTimeline

MIN_PPQ = 96
DEFAULT_PPQ = 480
PERCUSSION_CHANNEL = 9
BASE_NOTE = 36
MAX_TICK = 0x0FFFFFFF  # largest delta a 4-byte variable-length quantity holds


def _vlq(value: int) -> bytes:
    if value < 0 or value > MAX_TICK:
        raise MidiExportError("tick value %d does not fit a MIDI delta time" % value)
    out = bytearray([value & 0x7F])
    value >>= 7
    while value:
        out.insert(0, 0x80 | (value & 0x7F))
        value >>= 7
    return bytes(out)


def _chunk(tag: bytes, payload: bytes) -> bytes:
    return tag + struct.pack(">I", len(payload)) + payload


def _tempo_track(tempo_bpm: float) -> bytes:
    usec_per_beat = round(60000000.0 / tempo_bpm)
    payload = b"\x00\xff\x51\x03" + struct.pack(">I", usec_per_beat)[1:]
    payload += b"\x00\xff\x2f\x00"
    return _chunk(b"MTrk", payload)


def ms_to_tick(t_ms: float, tempo_bpm: float, ppq: int) -> int:
    tick = round(t_ms * tempo_bpm * ppq / 60000.0)
    if tick > MAX_TICK:
        raise MidiExportError("event at %.1f ms overflows the tick range" % t_ms)
    return tick


def _note_numbers(timeline: PerformanceTimeline) -> tuple[list[str], dict]:
    """Instrument order and (instrument, timbre) -> note assignments."""
    layout: list[tuple[str, tuple[str, ...]]] = list(timeline.instrument_timbres)
    if not layout:  # fall back to order of first appearance in the events
        seen: dict[str, list[str]] = {}
        for event in timeline.events:
            timbres = seen.setdefault(event.instrument, [])
            if event.timbre not in timbres:
                timbres.append(event.timbre)
        layout = [(name, tuple(timbres)) for name, timbres in seen.items()]
    notes = {}
    next_note = BASE_NOTE
    for name, timbres in layout:
        for timbre in timbres:
            if next_note > 127:
                raise MidiExportError("too many timbres to assign MIDI notes")
            notes[(name, timbre)] = next_note
            next_note += 1
    return [name for name, _ in layout], notes


def export_midi(
    timeline: PerformanceTimeline, ppq: int = DEFAULT_PPQ, gate_ms: float | None = None
) -> bytes:
    """Serialize a timeline as a standard MIDI file (format 1)."""
    if ppq < MIN_PPQ:
        raise MidiExportError("ppq must be at least %d" % MIN_PPQ)
    tempo = timeline.tempo_bpm
    gate = gate_ms if gate_ms is not None else timeline.gate_ms
    gate_ticks = max(1, ms_to_tick(gate, tempo, ppq) - ms_to_tick(0.0, tempo, ppq))

    if not timeline.events:
        header = _chunk(b"MThd", struct.pack(">HHH", 1, 1, ppq))
        return header + _tempo_track(tempo)

    order, notes = _note_numbers(timeline)
    per_instrument: dict[str, list[tuple[int, int, int, int]]] = {
        name: [] for name in order
    }
    for event in timeline.events:
        if event.instrument not in per_instrument:
            per_instrument[event.instrument] = []
            order.append(event.instrument)
        note = notes.get((event.instrument, event.timbre))
        if note is None:
            raise MidiExportError(
                "event names unknown timbre %r/%r" % (event.instrument, event.timbre)
            )
        on_tick = ms_to_tick(event.t_ms, tempo, ppq)
        # (tick, off-before-on flag, note, velocity)
        per_instrument[event.instrument].append((on_tick, 1, note, event.velocity))
        per_instrument[event.instrument].append((on_tick + gate_ticks, 0, note, 0))

    tracks = [_tempo_track(tempo)]
    for name in order:
        payload = bytearray()
        payload += b"\x00\xff\x03" + _vlq(len(name.encode())) + name.encode()
        cursor = 0
        for tick, is_on, note, velocity in sorted(per_instrument[name]):
            payload += _vlq(tick - cursor)
            cursor = tick
            status = (0x90 if is_on else 0x80) | PERCUSSION_CHANNEL
            payload += bytes([status, note, velocity if is_on else 0x40])
        payload += b"\x00\xff\x2f\x00"
        tracks.append(_chunk(b"MTrk", bytes(payload)))

    header = _chunk(b"MThd", struct.pack(">HHH", 1, len(tracks), ppq))
    return header + b"".join(tracks)
