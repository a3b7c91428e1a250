from fractions import Fraction

import pytest

from curveloom.arrangement import ingest_planar
from curveloom.minpos import (
    are_isotopic,
    crossing_count,
    ensure_sensible,
    fills,
    find_bigon,
    find_pairwise_bigons,
    flip_triangle,
    geometric_intersection_number,
    is_essential,
    is_minimal,
    reduce_to_minimal_position,
    smooth_bigon,
    triangle_faces,
)
from curveloom.errors import NotSensible
from curveloom.scene import PLScene
from curveloom.system import delete_curves
from curveloom.templates import add_round, crossing_pair_scene, puncture_row


def rect(x0, x1, y0, y1):
    return [(Fraction(x0), Fraction(y0)), (Fraction(x1), Fraction(y0)),
            (Fraction(x1), Fraction(y1)), (Fraction(x0), Fraction(y1))]


def four_crossing_scene():
    sc = puncture_row(4)
    add_round(sc, "a", 1, 3, 1, 1)
    sc.curves["b"] = rect(3, 5, -2, 2)
    return sc


def empty_lens_scene():
    """Two rectangles crossing twice around an empty overlap."""
    sc = puncture_row(3)
    sc.curves["a"] = rect(-1, 2, -1, 1)   # around puncture 1
    sc.curves["b"] = rect(1, 5, -2, 2)    # around puncture 2
    return sc


def strand_blocked_scene():
    """An (a, b) bigon crossed by two strands of c, with every face-level
    bigon blocked by a puncture; emptying the bigon needs triangle flips."""
    sc = PLScene([(Fraction(0), Fraction(0)),
                  (Fraction(3, 4), Fraction(0)),
                  (Fraction(4), Fraction(0))], {})
    sc.curves["a"] = rect(-1, 3, -1, 1)                      # punctures 1, 2
    sc.curves["b"] = rect(1, 6, -2, 2)                       # puncture 3
    sc.curves["c"] = rect(Fraction(1, 2), 5,
                          Fraction(-1, 2), Fraction(1, 2))   # punctures 2, 3
    return sc


def total_crossings(sys_):
    return sum(1 for v in sys_.vertices if len(v) == 4)


def test_four_crossings_reduce_to_disjoint():
    sys_ = ingest_planar(four_crossing_scene())
    assert crossing_count(sys_, "a", "b") == 4
    assert geometric_intersection_number(sys_, "a", "b") == 0
    red = reduce_to_minimal_position(sys_)
    assert crossing_count(red, "a", "b") == 0
    assert is_minimal(red)
    punct_sets = sorted(tuple(sorted(f.punctures)) for f in red.faces)
    assert punct_sets == [(1, 3), (2,), (4, 5)]


def test_smooth_one_bigon_step():
    sys_ = ingest_planar(four_crossing_scene())
    big = find_bigon(sys_)
    assert big is not None
    out = smooth_bigon(sys_, *big)
    assert len(out.vertices) == len(sys_.vertices) - 2
    assert crossing_count(out, "a", "b") == 2


def test_punctured_lens_is_minimal():
    sys_ = ingest_planar(crossing_pair_scene())
    assert find_bigon(sys_) is None
    assert geometric_intersection_number(sys_, "a", "b") == 2
    assert is_minimal(sys_)
    red = reduce_to_minimal_position(sys_)
    assert red.map_key() == sys_.map_key()


def test_empty_lens_becomes_markers():
    sys_ = ingest_planar(empty_lens_scene())
    assert crossing_count(sys_, "a", "b") == 2
    red = reduce_to_minimal_position(sys_)
    assert total_crossings(red) == 0
    assert all(len(v) == 2 for v in red.vertices)
    punct_sets = sorted(tuple(sorted(f.punctures)) for f in red.faces)
    assert punct_sets == [(1,), (2,), (3, 4)]


def test_pair_extraction_matches_direct_reduction():
    sys_ = ingest_planar(strand_blocked_scene())
    assert geometric_intersection_number(sys_, "a", "b") == 0
    assert geometric_intersection_number(sys_, "a", "c") == 2
    assert geometric_intersection_number(sys_, "b", "c") == 0


def test_triangle_flip_preserves_counts():
    sys_ = ingest_planar(strand_blocked_scene())
    tris = triangle_faces(sys_)
    assert tris
    flipped = flip_triangle(sys_, tris[0])
    assert len(flipped.faces) == len(sys_.faces)
    assert len(flipped.vertices) == len(sys_.vertices)
    for ca, cb in (("a", "b"), ("a", "c"), ("b", "c")):
        assert crossing_count(flipped, ca, cb) == crossing_count(sys_, ca, cb)
    # flipping the same triangle back restores the map
    back = flip_triangle(flipped, tris[0])
    assert back.map_key() == sys_.map_key()


def test_strand_blocked_bigon_needs_flips():
    sys_ = ingest_planar(strand_blocked_scene())
    assert find_bigon(sys_) is None           # every face bigon is punctured
    cands = find_pairwise_bigons(sys_, "a", "b")
    assert cands and len(cands[0][2]) > 2     # walk carries strand crossings
    red = reduce_to_minimal_position(sys_)
    assert crossing_count(red, "a", "b") == 0
    assert crossing_count(red, "b", "c") == 0
    assert crossing_count(red, "a", "c") == 2
    assert is_minimal(red)


def test_delete_curves_keeps_pair():
    sys_ = ingest_planar(strand_blocked_scene())
    sub = delete_curves(sys_, ["c"])
    assert sorted(sub.curve_ids) == ["a", "b"]
    assert crossing_count(sub, "a", "b") == 2
    solo = delete_curves(sys_, ["a", "b"])
    assert list(solo.curve_ids) == ["c"]
    assert total_crossings(solo) == 0


def test_essential_and_isotopic():
    sc = puncture_row(3)
    add_round(sc, "a", 1, 2, 1, 1)
    add_round(sc, "b", 1, 2, Fraction(3, 2), Fraction(3, 2))
    add_round(sc, "void", 1, 1, 1, 1)
    sc.curves["void"] = rect(1, 2, -3, -2)    # encloses nothing
    sys_ = ingest_planar(sc)
    assert is_essential(sys_, "a")
    assert not is_essential(sys_, "void")
    assert are_isotopic(sys_, "a", "b")
    assert not are_isotopic(sys_, "a", "void")
    with pytest.raises(NotSensible):
        ensure_sensible(sys_)


def test_fills_negative():
    sys_ = ingest_planar(crossing_pair_scene())
    assert not fills(sys_, "a", "b")


def test_fills_requires_minimal_position():
    from curveloom.errors import NotInMinimalPosition
    sys_ = ingest_planar(four_crossing_scene())
    with pytest.raises(NotInMinimalPosition):
        fills(sys_, "a", "b")


def test_sign_sequence_opposite_for_round_pair():
    from curveloom.minpos import sign_sequence
    sys_ = ingest_planar(crossing_pair_scene())
    signs = [s for _, s in sign_sequence(sys_, "a", "b")]
    assert sorted(signs) == [-1, 1]
    flipped = [s for _, s in sign_sequence(sys_, "a", "b", reverse_g=True)]
    assert flipped == [-s for s in reversed(signs)]
    assert sign_sequence(sys_, "a", "b", reverse_t=True) == \
        [(v, -s) for v, s in sign_sequence(sys_, "a", "b")]
