"""Independent reference implementations used to cross-check the engine.

Everything here is written longhand (plain loops, no shared scoring code)
so a disagreement with the library points at a real defect rather than a
shared bug.
"""

from __future__ import annotations

import math

import numpy as np


# --- metric structures, rebuilt from the construction rules ---------------

def oracle_template(kind: str, n: int):
    """(strengths, level_periods, bump) for a well-formed structure."""
    stride = 2 if kind == "binary" else 3
    assert n % stride == 0
    periods = [1, stride]
    period, count, bump = stride, n // stride, False
    while count > 1:
        if count % 2 == 0:
            factor = 2
        elif count % 3 == 0:
            factor = 3
        else:
            bump = True
            break
        period *= factor
        count //= factor
        periods.append(period)
    strengths = []
    for j in range(n):
        s = sum(1 for t in periods if j % t == 0)
        if bump and j == 0:
            s += 1
        strengths.append(s)
    return strengths, periods, bump


def _oracle_admissible(kind: str, n: int) -> bool:
    if kind == "binary":
        return n >= 4 and n % 2 == 0
    return n >= 6 and n % 3 == 0


def _oracle_segment_score(p, strengths, ioi, onsets):
    total = sum(strengths)
    length = len(ioi)
    terms = []
    for i, s in enumerate(strengths):
        j = (p + i) % length
        terms.append((s / total) * (ioi[j] / length) * onsets[j])
    return math.fsum(terms)


def _oracle_penalty(tpl, offset):
    strengths, periods, bump = tpl
    s = sum(1 for t in periods if offset % t == 0) + (1 if bump and offset == 0 else 0)
    return 0.5 + 0.5 * (s - 1) / (max(strengths) - 1)


def brute_force_interpretations(onsets, ioi):
    """Full candidate sweep, grouped by signature, ranked; independent loops.

    Returns a list of (signature tuple, score, segments tuple) best-first,
    mirroring the library's ranking semantics.
    """
    onsets = list(int(v) for v in onsets)
    ioi = list(int(v) for v in ioi)
    length = len(onsets)
    kinds = ("binary", "ternary")
    rank = {"binary": 0, "ternary": 1}
    candidates = []
    for kind in kinds:
        if _oracle_admissible(kind, length):
            tpl = oracle_template(kind, length)
            for p in range(length):
                score = _oracle_segment_score(p, tpl[0], ioi, onsets)
                candidates.append(
                    (score, (p, -length, rank[kind], -1), ((p, length, kind),))
                )
    for n_lead in range(4, length - 3):
        n_tail = length - n_lead
        for kind_lead in kinds:
            if not _oracle_admissible(kind_lead, n_lead):
                continue
            tpl_lead = oracle_template(kind_lead, n_lead)
            pen = _oracle_penalty(tpl_lead, n_lead)
            for kind_tail in kinds:
                if not _oracle_admissible(kind_tail, n_tail):
                    continue
                tpl_tail = oracle_template(kind_tail, n_tail)
                for p in range(length):
                    q = (p + n_lead) % length
                    base = (n_lead / length) * _oracle_segment_score(
                        p, tpl_lead[0], ioi, onsets
                    ) + (n_tail / length) * _oracle_segment_score(
                        q, tpl_tail[0], ioi, onsets
                    )
                    candidates.append(
                        (
                            base * pen,
                            (p, -n_lead, rank[kind_lead], rank[kind_tail]),
                            ((p, n_lead, kind_lead), (q, n_tail, kind_tail)),
                        )
                    )
    best = {}
    for score, key, segments in candidates:
        signature = [0] * length
        for start, seg_len, kind in segments:
            for i in range(seg_len):
                signature[(start + i) % length] = 2 if kind == "binary" else 3
        signature = tuple(signature)
        held = best.get(signature)
        if held is None or score > held[0] or (score == held[0] and key < held[1]):
            best[signature] = (score, key, segments)
    ordered = sorted(best.items(), key=lambda kv: (-kv[1][0], kv[1][1], kv[0]))
    return [(sig, score, segs) for sig, (score, _k, segs) in ordered]


# --- exact grid search for the swing fit -----------------------------------

_C1 = np.array([1.0, -1.0, 1.0, -1.0, 1.0, -1.0])
_C2 = np.array([1.0, -0.5, -0.5, 1.0, -0.5, -0.5])
_C3 = np.array([0.0, -0.5, 0.5, 0.0, -0.5, 0.5])


def sse_direct(theta, profile):
    """Squared error of the model at one parameter point, written longhand."""
    t1, t2, t3 = theta
    d = (
        t1 * _C1 + t2 * _C2 + (t2 * t3) * _C3
    ) / 6.0
    model = 1.0 / 6.0 + d / 3.0
    return float(np.sum((model - np.asarray(profile)) ** 2))


def grid_fit(profile, step=0.005, bound=1.5):
    """Exact argmin of the SSE over the full parameter grid.

    The three design directions are mutually orthogonal, so the SSE splits
    into a term in theta1 plus a term in (theta2, theta3) plus a constant;
    minimizing each part over its own grid equals the full cube scan.  The
    decomposition itself is asserted numerically at random points.
    """
    profile = np.asarray(profile, dtype=float)
    r = profile - 1.0 / 6.0
    axis = np.round(np.arange(-bound, bound + step / 2, step), 10)

    def sse_t1(t1):
        model = (t1 * _C1) / 18.0
        return np.sum((model - r) ** 2)

    def sse_t23(t2, t3):
        model = (t2 * _C2 + (t2 * t3) * _C3) / 18.0
        return np.sum((model - r) ** 2)

    rng = np.random.default_rng(0)
    const = float(np.sum(r**2))
    for _ in range(20):
        theta = rng.uniform(-bound, bound, 3)
        together = sse_direct(theta, profile)
        split = sse_t1(theta[0]) + sse_t23(theta[1], theta[2]) - const
        assert abs(together - split) < 1e-12, "orthogonal split failed"

    best_t1 = min(axis, key=lambda v: (sse_t1(v), v))
    t2_grid = axis[:, None]
    t3_grid = axis[None, :]
    model = (
        t2_grid[..., None] * _C2 + (t2_grid * t3_grid)[..., None] * _C3
    ) / 18.0
    sse23 = np.sum((model - r) ** 2, axis=-1)
    flat = int(np.argmin(sse23))
    i2, i3 = np.unravel_index(flat, sse23.shape)
    return float(best_t1), float(axis[i2]), float(axis[i3])


# --- minimal standard MIDI file reader --------------------------------------

def parse_smf(data: bytes):
    """Decode an SMF into (format, division, tracks of (tick, event) lists)."""
    assert data[:4] == b"MThd"
    header_len = int.from_bytes(data[4:8], "big")
    fmt = int.from_bytes(data[8:10], "big")
    ntrks = int.from_bytes(data[10:12], "big")
    division = int.from_bytes(data[12:14], "big")
    pos = 8 + header_len
    tracks = []
    for _ in range(ntrks):
        assert data[pos : pos + 4] == b"MTrk"
        size = int.from_bytes(data[pos + 4 : pos + 8], "big")
        body = data[pos + 8 : pos + 8 + size]
        pos += 8 + size
        events = []
        cursor = 0
        tick = 0
        running = None
        while cursor < len(body):
            delta = 0
            while True:
                byte = body[cursor]
                cursor += 1
                delta = (delta << 7) | (byte & 0x7F)
                if not byte & 0x80:
                    break
            tick += delta
            status = body[cursor]
            if status & 0x80:
                cursor += 1
                running = status
            else:
                status = running
            if status == 0xFF:
                meta = body[cursor]
                length = body[cursor + 1]
                payload = body[cursor + 2 : cursor + 2 + length]
                cursor += 2 + length
                events.append((tick, ("meta", meta, payload)))
            elif status & 0xF0 in (0x90, 0x80):
                note, velocity = body[cursor], body[cursor + 1]
                cursor += 2
                kind = "on" if (status & 0xF0) == 0x90 and velocity > 0 else "off"
                events.append((tick, (kind, status & 0x0F, note, velocity)))
            else:
                raise AssertionError("unexpected status byte 0x%02x" % status)
        tracks.append(events)
    return fmt, division, tracks
