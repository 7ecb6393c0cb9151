import numpy as np
import pytest

from polyfeel import StructureError, build_template, normalize_weights
from polyfeel.templates import admissible, extended_strength

from oracles import oracle_template


class TestKnownTemplates:
    def test_binary_16(self):
        tpl = build_template("binary", 16)
        assert tpl.strengths.tolist() == [5, 1, 2, 1, 3, 1, 2, 1, 4, 1, 2, 1, 3, 1, 2, 1]

    def test_ternary_12(self):
        tpl = build_template("ternary", 12)
        assert tpl.strengths.tolist() == [4, 1, 1, 2, 1, 1, 3, 1, 1, 2, 1, 1]

    def test_binary_4(self):
        assert build_template("binary", 4).strengths.tolist() == [3, 1, 2, 1]

    def test_binary_10_uses_start_bump(self):
        tpl = build_template("binary", 10)
        assert tpl.strengths.tolist() == [3, 1, 2, 1, 2, 1, 2, 1, 2, 1]
        assert tpl.has_start_bump

    def test_ternary_6(self):
        assert build_template("ternary", 6).strengths.tolist() == [3, 1, 1, 2, 1, 1]


class TestAdmissibility:
    @pytest.mark.parametrize("kind,n", [
        ("binary", 3), ("binary", 5), ("binary", 2), ("ternary", 3),
        ("ternary", 4), ("ternary", 8), ("binary", 7),
    ])
    def test_rejects_inadmissible(self, kind, n):
        with pytest.raises(StructureError):
            build_template(kind, n)

    def test_rejects_unknown_kind(self):
        with pytest.raises(StructureError):
            build_template("quintuple", 10)


class TestWellFormedness:
    """Every admissible template has nested regular levels grouped by 2 or 3."""

    @pytest.mark.parametrize("kind", ["binary", "ternary"])
    @pytest.mark.parametrize("n", range(4, 49))
    def test_structure(self, kind, n):
        if not admissible(kind, n):
            return
        tpl = build_template(kind, n)
        strengths = tpl.strengths
        # unique strongest first pulse
        assert strengths[0] == strengths.max()
        assert (strengths[1:] < strengths[0]).all()
        # every pulse sits on level one
        assert (strengths >= 1).all()
        # beat level exactly on the stride
        stride = 2 if kind == "binary" else 3
        on_beat = np.arange(n) % stride == 0
        assert ((strengths >= 2) == on_beat).all()
        # each level's period grows by a factor of 2 or 3
        periods = tpl.level_periods
        assert periods[0] == 1 and periods[1] == stride
        for a, b in zip(periods, periods[1:]):
            assert b % a == 0 and b // a in (2, 3)
        # strengths are exactly the level memberships
        rebuilt = [
            sum(1 for t in periods if j % t == 0)
            + (1 if tpl.has_start_bump and j == 0 else 0)
            for j in range(n)
        ]
        assert strengths.tolist() == rebuilt

    @pytest.mark.parametrize("kind,n", [("binary", 16), ("ternary", 12),
                                        ("binary", 10), ("ternary", 15),
                                        ("binary", 12), ("ternary", 9)])
    def test_matches_independent_construction(self, kind, n):
        expected, _periods, _bump = oracle_template(kind, n)
        assert build_template(kind, n).strengths.tolist() == expected

    def test_deterministic_and_cached(self):
        a = build_template("binary", 16)
        b = build_template("binary", 16)
        assert a.strengths.tolist() == b.strengths.tolist()


class TestWeights:
    def test_binary_4_weights(self):
        tpl = build_template("binary", 4)
        assert np.allclose(normalize_weights(tpl), [3 / 7, 1 / 7, 2 / 7, 1 / 7])

    def test_ternary_12_weights_sum(self):
        tpl = build_template("ternary", 12)
        weights = normalize_weights(tpl)
        assert np.allclose(weights, tpl.strengths / 19)
        assert abs(weights.sum() - 1.0) < 1e-12

    def test_idempotent(self):
        tpl = build_template("binary", 16)
        once = normalize_weights(tpl)
        assert abs(once.sum() - 1.0) < 1e-12
        assert np.allclose(tpl.weights, once)

    @pytest.mark.parametrize("kind,n", [("binary", 4), ("binary", 16),
                                        ("ternary", 6), ("ternary", 12)])
    def test_all_sum_to_one(self, kind, n):
        assert abs(build_template(kind, n).weights.sum() - 1.0) < 1e-12


class TestExtendedStrength:
    def test_ternary_6_boundary_is_full_strength(self):
        tpl = build_template("ternary", 6)
        assert extended_strength(tpl, 6) == 3 == tpl.max_strength

    def test_binary_10_boundary_is_beat_strength(self):
        tpl = build_template("binary", 10)
        assert extended_strength(tpl, 10) == 2

    def test_bump_never_recurs(self):
        tpl = build_template("binary", 10)
        assert extended_strength(tpl, 0) == 3
        assert extended_strength(tpl, 20) == 2
