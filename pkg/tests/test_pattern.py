import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from polyfeel import (
    InstrumentTrack,
    Pattern,
    PatternError,
    event_onset_vector,
    ioi_vector,
)
from conftest import SON_CLAVE_IOI, SON_CLAVE_ROW, clave_track


class TestEventOnsetVector:
    def test_son_clave(self, son_clave_track):
        assert event_onset_vector(son_clave_track).tolist() == SON_CLAVE_ROW

    def test_empty_matrix_is_all_zero(self):
        track = InstrumentTrack("t", ("a",), np.zeros((1, 16), dtype=int))
        assert event_onset_vector(track).tolist() == [0] * 16

    def test_two_timbres_same_pulse_count_twice(self):
        matrix = np.zeros((2, 12), dtype=int)
        matrix[:, 0] = 1
        track = InstrumentTrack("t", ("a", "b"), matrix)
        assert event_onset_vector(track).tolist() == [2] + [0] * 11


class TestIoiVector:
    def test_son_clave(self):
        assert ioi_vector(np.array(SON_CLAVE_ROW)).tolist() == SON_CLAVE_IOI

    def test_single_onset_wraps_whole_cycle(self):
        onsets = np.zeros(16, dtype=int)
        onsets[0] = 1
        assert ioi_vector(onsets).tolist() == [16] + [0] * 15

    def test_dense_is_all_ones(self):
        assert ioi_vector(np.ones(12, dtype=int)).tolist() == [1] * 12

    def test_all_zero_stays_zero(self):
        assert ioi_vector(np.zeros(16, dtype=int)).tolist() == [0] * 16

    @given(st.lists(st.integers(0, 3), min_size=12, max_size=12))
    def test_nonzero_lengths_sum_to_bar(self, counts):
        ioi = ioi_vector(np.array(counts))
        if any(counts):
            assert int(ioi.sum()) == 12
            assert ((ioi > 0) == (np.array(counts) > 0)).all()
        else:
            assert not ioi.any()

    @given(st.lists(st.integers(0, 2), min_size=16, max_size=16), st.integers(0, 15))
    def test_rotation_equivariance(self, counts, k):
        onsets = np.array(counts)
        rotated = np.roll(onsets, k)
        assert (ioi_vector(rotated) == np.roll(ioi_vector(onsets), k)).all()


class TestPatternDocument:
    def test_round_trip(self, son_clave_pattern):
        doc = son_clave_pattern.to_dict()
        again = Pattern.from_dict(doc)
        assert again.to_dict() == doc
        assert json.loads(son_clave_pattern.to_json()) == doc

    def test_document_field_names(self, son_clave_pattern):
        doc = son_clave_pattern.to_dict()
        assert set(doc) == {"pulsesPerBar", "tempoBpm", "bars", "instruments"}
        assert set(doc["instruments"][0]) == {"name", "role", "timbres", "matrix"}

    def test_rejects_bad_pulse_count(self):
        with pytest.raises(PatternError):
            Pattern(pulses_per_bar=13, tempo_bpm=120.0)

    def test_rejects_non_positive_tempo(self):
        with pytest.raises(PatternError):
            Pattern(pulses_per_bar=16, tempo_bpm=0.0)

    def test_rejects_matrix_width_mismatch(self):
        with pytest.raises(PatternError) as err:
            Pattern(
                pulses_per_bar=16,
                tempo_bpm=120.0,
                instruments=(
                    InstrumentTrack("t", ("a",), np.zeros((1, 12), dtype=int)),
                ),
            )
        assert "columns" in str(err.value)

    def test_rejects_non_binary_entries(self):
        with pytest.raises(PatternError):
            InstrumentTrack("t", ("a",), np.full((1, 16), 2))

    def test_rejects_unknown_role(self):
        with pytest.raises(PatternError):
            InstrumentTrack("t", ("a",), np.zeros((1, 16), dtype=int), role="lead")

    def test_from_dict_reports_field(self):
        with pytest.raises(PatternError) as err:
            Pattern.from_dict({"pulsesPerBar": 16, "tempoBpm": 120.0,
                               "instruments": [{"name": "x", "timbres": [], "matrix": []}]})
        assert err.value.field == "instruments[0]"

    def test_purity(self, son_clave_track):
        first = event_onset_vector(son_clave_track)
        second = event_onset_vector(son_clave_track)
        assert (first == second).all()
        assert (ioi_vector(first) == ioi_vector(second)).all()
