import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from polyfeel import InstrumentTrack, Pattern

SON_CLAVE_ROW = [1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0]
SON_CLAVE_IOI = [3, 0, 0, 3, 0, 0, 4, 0, 0, 0, 2, 0, 4, 0, 0, 0]

# Published median pulse-length profiles and fitted parameters for measured
# jembe rhythms (six-pulse cycles normalized to length one).
REFERENCE_ROWS = {
    "dundunbe_binary": ([0.165, 0.162, 0.183, 0.138, 0.186, 0.164], (0.21, -0.26, 0.01)),
    "dundunbe_ternary": ([0.146, 0.182, 0.178, 0.132, 0.193, 0.171], (0.10, -0.50, 0.46)),
    "soli": ([0.110, 0.170, 0.220, 0.110, 0.170, 0.220], (0.0, -1.02, -0.88)),
    "mendiani": ([0.135, 0.165, 0.200, 0.135, 0.165, 0.200], (0.0, -0.57, -1.09)),
    "djaa_ternary": ([0.194, 0.141, 0.168, 0.181, 0.159, 0.158], (0.13, 0.37, 0.62)),
    "djaa_binary": ([0.180, 0.152, 0.178, 0.164, 0.168, 0.157], (0.16, 0.11, 0.90)),
    "lms": ([0.200, 0.170, 0.130, 0.200, 0.170, 0.130], (0.0, 0.62, -1.08)),
}


def clave_track(name="clave"):
    return InstrumentTrack(
        name=name, timbres=("stick",), matrix=np.array([SON_CLAVE_ROW])
    )


@pytest.fixture
def son_clave_track():
    return clave_track()


@pytest.fixture
def son_clave_pattern():
    return Pattern(
        pulses_per_bar=16,
        tempo_bpm=120.0,
        instruments=(clave_track(),),
        bars=2,
    )


def dense_pattern(pulses=12, tempo=120.0, bars=1, role="normal"):
    """Single-timbre track striking every pulse."""
    track = InstrumentTrack(
        name="bell", timbres=("hit",), matrix=np.ones((1, pulses), dtype=int), role=role
    )
    return Pattern(pulses_per_bar=pulses, tempo_bpm=tempo, instruments=(track,), bars=bars)
