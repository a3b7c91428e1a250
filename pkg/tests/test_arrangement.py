from fractions import Fraction

import pytest

from curveloom.arrangement import ingest_planar
from curveloom.errors import GeneralPositionViolation
from curveloom.scene import PLScene, format_scene, parse_scene
from curveloom.system import CurveSystem
from curveloom.templates import add_round, crossing_pair_scene, puncture_row


def test_two_round_curves_crossing_twice():
    sys_ = ingest_planar(crossing_pair_scene())
    assert sys_.surface.punctures == 5
    assert len(sys_.curve_ids) == 2
    assert len(sys_.vertices) == 2
    assert all(len(v) == 4 for v in sys_.vertices)
    assert len(sys_.darts) == 8  # 4 edges
    assert len(sys_.faces) == 4
    punct_sets = sorted(tuple(sorted(f.punctures)) for f in sys_.faces)
    assert punct_sets == [(1,), (2,), (3,), (4, 5)]
    assert all(f.genus == 0 for f in sys_.faces)


def test_nested_disjoint_round_curves():
    sc = puncture_row(4)
    add_round(sc, "a", 1, 2, 1, 1)
    add_round(sc, "b", 1, 3, 2, 2)
    sys_ = ingest_planar(sc)
    assert len(sys_.vertices) == 2           # two markers
    assert all(len(v) == 2 for v in sys_.vertices)
    assert len(sys_.faces) == 3
    punct_sets = sorted(tuple(sorted(f.punctures)) for f in sys_.faces)
    assert punct_sets == [(1, 2), (3,), (4, 5)]
    annulus = [f for f in sys_.faces if f.punctures == frozenset({3})][0]
    assert len(annulus.circuits) == 2 and annulus.euler == 0


def test_single_curve():
    sc = puncture_row(2)
    add_round(sc, "a", 1, 1, 1, 1)
    sys_ = ingest_planar(sc)
    assert len(sys_.faces) == 2
    inner = [f for f in sys_.faces if 1 in f.punctures][0]
    assert inner.punctures == frozenset({1})


def test_four_crossings_two_bigons():
    # wide flat rectangle crossed by a tall thin one: 4 crossings
    sc = puncture_row(4)
    add_round(sc, "a", 1, 3, 1, 1)
    sc.curves["b"] = [(Fraction(3), -2), (Fraction(5), -2),
                      (Fraction(5), 2), (Fraction(3), 2)]
    sys_ = ingest_planar(sc)
    assert len(sys_.vertices) == 4
    assert len(sys_.faces) == 6
    empties = [f for f in sys_.faces
               if not f.punctures and len(f.circuits) == 1]
    assert len(empties) >= 2


def test_touching_curves_rejected():
    sc = puncture_row(3)
    add_round(sc, "a", 1, 2, 1, 1)
    # shares the corner (-1, -1) with a
    sc.curves["b"] = [(-1, -1), (9, -3), (9, 3), (-1, 3)]
    with pytest.raises(GeneralPositionViolation):
        ingest_planar(sc)


def test_triple_point_rejected():
    sc = puncture_row(3)
    add_round(sc, "a", 1, 2, 1, 1)
    sc.curves["b"] = [(2, -3), (5, 0), (2, 3), (-3, 0)]
    sc.curves["c"] = [(2, -4), (5, 0), (2, 4), (-4, 0)]  # both pass (5, 0)?
    # make them genuinely share an interior point with a's right edge x = 5
    sc.curves["b"] = [(4, -2), (6, 0), (4, 2), (0, 0)]
    sc.curves["c"] = [(4, -3), (6, 0), (4, 3), (-1, 0)]
    with pytest.raises(GeneralPositionViolation):
        ingest_planar(sc)


def test_puncture_on_curve_rejected():
    sc = puncture_row(3)
    sc.curves["a"] = [(-2, 0), (2, -2), (2, 2)]  # passes through (0,0)? no...
    sc.curves["a"] = [(-2, -2), (2, -2), (2, 2), (-2, 2)]
    sc.punctures[0] = (2, 0)  # on the right edge
    with pytest.raises(GeneralPositionViolation):
        ingest_planar(sc)


def test_self_crossing_rejected():
    sc = puncture_row(2)
    sc.curves["a"] = [(0, 0), (4, 0), (4, 4), (2, -2)]
    sc.punctures = [(1, 1), (10, 10)]
    with pytest.raises(GeneralPositionViolation):
        ingest_planar(sc)


def test_scene_round_trip():
    sc = crossing_pair_scene()
    text = format_scene(sc)
    back = parse_scene(text)
    assert back.punctures == sc.punctures
    assert back.curves == sc.curves
    assert "3/2" in text


def test_map_round_trip():
    sys_ = ingest_planar(crossing_pair_scene())
    text = sys_.to_text()
    back = CurveSystem.from_text(text)
    assert back.map_key() == sys_.map_key()
    assert back.to_text() == text


def test_signs_opposite_on_round_pair():
    sys_ = ingest_planar(crossing_pair_scene())
    signs = [sys_.crossing_sign(v, "a", "b")
             for v in sys_.crossing_vertices("a", "b")]
    assert sorted(signs) == [-1, 1]
