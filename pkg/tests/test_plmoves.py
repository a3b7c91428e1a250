"""Geometric (polyline-route) reduction and twist construction."""

import itertools
from fractions import Fraction as F

import pytest

from curveloom.arrangement import ingest_planar
from curveloom.minpos import geometric_intersection_number
from curveloom.plmoves import (find_geometric_bigons, pair_crossings,
                               pl_intersection_number, point_in_polygon,
                               reduce_pair_geometric, twist_curve)
from curveloom.templates import crossing_pair_scene

from test_minpos import (empty_lens_scene, four_crossing_scene,
                         strand_blocked_scene)


def test_point_in_polygon_square():
    sq = [(0, 0), (4, 0), (4, 4), (0, 4)]
    assert point_in_polygon((2, 2), sq)
    assert not point_in_polygon((5, 2), sq)
    assert not point_in_polygon((-1, -1), sq)
    with pytest.raises(ValueError):
        point_in_polygon((4, 2), sq)


def test_pair_crossings_counts():
    scene = four_crossing_scene()
    assert len(pair_crossings(scene, "a", "b")) == 4


def test_geometric_bigons_respect_punctures():
    # the lens between the curves is empty in one scene, punctured in the other
    assert find_geometric_bigons(empty_lens_scene(), "a", "b")
    assert not find_geometric_bigons(crossing_pair_scene(), "a", "b")


def test_reduce_pair_removes_all_crossings():
    scene = four_crossing_scene()
    red = reduce_pair_geometric(scene, "a", "b")
    assert pair_crossings(red, "a", "b") == []
    # the reduced subscene is still a valid arrangement
    ingest_planar(red)


def test_pl_route_matches_map_route():
    scenes = [crossing_pair_scene(), four_crossing_scene(),
              empty_lens_scene(), strand_blocked_scene()]
    for scene in scenes:
        system = ingest_planar(scene)
        for ca, cb in itertools.combinations(sorted(scene.curves), 2):
            assert (pl_intersection_number(scene, ca, cb)
                    == geometric_intersection_number(system, ca, cb))


def _with_pushoff(scene):
    out = scene.copy()
    out.curves["a0"] = [(F(-17, 8), F(-9, 8)), (F(49, 8), F(-9, 8)),
                        (F(49, 8), F(9, 8)), (F(-17, 8), F(9, 8))]
    return out


def test_twist_preserves_core_intersection():
    scene = crossing_pair_scene()
    tw = twist_curve(scene, "a", "b")
    assert pl_intersection_number(tw, "a", "b") == 2


def test_twist_against_original_copy():
    # i(T_b^n(a), a) = |n| * i(a,b)^2, here 4n
    scene = _with_pushoff(crossing_pair_scene())
    assert pl_intersection_number(scene, "a", "a0") == 0
    for power in (1, 2, 3):
        for direction in (1, -1):
            tw = twist_curve(scene, "a", "b", direction=direction, power=power)
            got = pl_intersection_number(tw, "a", "a0")
            assert got == 4 * power
            assert (geometric_intersection_number(ingest_planar(tw), "a", "a0")
                    == got)


def test_twist_rejects_bad_arguments():
    scene = crossing_pair_scene()
    with pytest.raises(ValueError):
        twist_curve(scene, "a", "a")
    with pytest.raises(ValueError):
        twist_curve(scene, "a", "b", direction=2)
    with pytest.raises(ValueError):
        twist_curve(scene, "a", "b", power=0)


def test_twist_of_disjoint_curve_is_identity():
    scene = _with_pushoff(crossing_pair_scene())
    tw = twist_curve(scene, "a0", "a")
    assert tw.curves["a0"] == scene.curves["a0"]
