"""Subsurface projections: clipping, small distances, annular covers."""

from fractions import Fraction

import pytest

from curveloom.errors import NotSensible, WindowTooSmall, WrongKind
from curveloom.plmoves import reduce_pair_geometric, twist_curve
from curveloom.projections import (ARC, CURVE, ac_distance_small,
                                   annular_distance, annular_subsurface,
                                   annular_window, check_loop_projection_bound,
                                   d_Y, nonannular_subsurface,
                                   project_annular, project_nonannular)
from curveloom.templates import add_round, filling_pair_scene, puncture_row

from loop_fixtures import SAME_SIGN_PAIR_CURVE


# ---------------------------------------------------------------- scenes

def disc_scene():
    """Five finite punctures; "bd" bounds a disc holding the first four,
    and the filling pair (al, be) lives inside it."""
    sc = puncture_row(4)
    sc.punctures.append((20, 0))
    add_round(sc, "bd", 1, 4, 2, 4)
    add_round(sc, "al", 1, 2, 1, 2)
    add_round(sc, "u", 2, 3, Fraction(3, 2), 2)
    add_round(sc, "w", 3, 4, Fraction(5, 4), 1)
    sc = twist_curve(sc, "w", "u")
    sc.curves["be"] = sc.curves.pop("w")
    add_round(sc, "al2", 1, 2, Fraction(3, 4), Fraction(3, 2))
    add_round(sc, "v", 3, 4, Fraction(7, 8), Fraction(3, 4))
    return sc


def outside_scene():
    """Same row; the subsurface is the component outside "al"."""
    sc = disc_scene()
    add_round(sc, "u2", 2, 3, Fraction(4, 3), Fraction(7, 4))
    add_round(sc, "z", 2, 4, Fraction(7, 4), Fraction(5, 4))
    add_round(sc, "big", 1, 3, Fraction(5, 2), 3)
    add_round(sc, "tiny", 1, 2, Fraction(1, 2), Fraction(1, 2))
    return sc


def annular_scene(twist_power=0):
    sc = puncture_row(4)
    add_round(sc, "ga", 2, 3, Fraction(3, 2), 2)
    add_round(sc, "w", 3, 4, Fraction(5, 4), 1)
    if twist_power:
        sc = twist_curve(sc, "w", "ga", power=twist_power)
    return sc


def inside_Y(sc):
    return nonannular_subsurface(sc, ("bd",), (0, Fraction(1, 3)))


def outside_Y(sc):
    return nonannular_subsurface(sc, ("al",), (18, Fraction(1, 3)))


def dist(sc, Y, a, b):
    (ea,) = project_nonannular(sc, a, Y)
    (eb,) = project_nonannular(sc, b, Y)
    return ac_distance_small(sc, Y, ea, eb)


# ------------------------------------------------- subsurface construction

def test_small_component_is_rejected():
    sc = disc_scene()
    with pytest.raises(WrongKind):
        nonannular_subsurface(sc, ("al",), (0, Fraction(1, 3)))


def test_kind_mismatch_is_rejected():
    sc = annular_scene()
    with pytest.raises(WrongKind):
        project_nonannular(sc, "w", annular_subsurface("ga"))
    win = annular_window(sc, "ga", 4)
    with pytest.raises(WrongKind):
        project_annular(sc, "w", annular_subsurface("w"), win)
    Y = inside_Y(disc_scene())
    with pytest.raises(WrongKind):
        project_annular(sc, "w", Y, win)


# ------------------------------------------------------ clipping to a cell

def test_disjoint_curve_projects_whole():
    sc = disc_scene()
    Y = inside_Y(sc)
    for c in ("al", "be", "u"):
        (el,) = project_nonannular(sc, c, Y)
        assert el.kind == CURVE


def test_crossing_curve_is_clipped_to_arcs():
    sc = outside_scene()
    Y = outside_Y(sc)
    els = project_nonannular(sc, "be", Y)
    assert [e.kind for e in els] == [ARC, ARC]
    (eu,) = project_nonannular(sc, "u", Y)
    assert eu.kind == ARC
    (ev,) = project_nonannular(sc, "v", Y)
    assert ev.kind == CURVE


def test_non_cutting_curve_projects_to_nothing():
    sc = outside_scene()
    Y = outside_Y(sc)
    assert project_nonannular(sc, "tiny", Y) == ()
    with pytest.raises(NotSensible):
        d_Y(sc, ("tiny",), ("u",), Y)


# ------------------------------------------------------ distances: curves

def test_closed_distance_zero_for_isotopic_curves():
    sc = disc_scene()
    Y = inside_Y(sc)
    d = dist(sc, Y, "al", "al2")
    assert (d.value, d.exact, d.upper) == (0, True, 0)


def test_closed_distance_one_for_disjoint_curves():
    sc = disc_scene()
    d = dist(sc, inside_Y(sc), "al", "v")
    assert (d.value, d.exact, d.upper) == (1, True, 1)


def test_closed_distance_two_for_crossing_non_filling():
    sc = disc_scene()
    d = dist(sc, inside_Y(sc), "al", "u")
    assert (d.value, d.exact, d.upper) == (2, True, 2)


def test_filling_pair_gives_lower_bound_three():
    sc = disc_scene()
    d = dist(sc, inside_Y(sc), "al", "be")
    assert (d.value, d.exact, d.upper) == (3, False, None)
    res = d_Y(sc, ("al",), ("be",), inside_Y(sc))
    assert (res.lower, res.upper, res.exact) == (3, None, False)


# -------------------------------------------------------- distances: arcs

def test_arcs_of_one_curve_are_disjoint():
    sc = outside_scene()
    Y = outside_Y(sc)
    e1, e2 = project_nonannular(sc, "be", Y)
    d = ac_distance_small(sc, Y, e1, e2)
    assert (d.value, d.exact) == (1, True)


def test_arc_distance_zero_for_isotopic_arcs():
    sc = outside_scene()
    d = dist(sc, outside_Y(sc), "u", "u2")
    assert (d.value, d.exact) == (0, True)


def test_boundary_hugging_removes_inessential_crossings():
    # the u- and z-arcs cross twice near their endpoints; both crossings
    # vanish under endpoint isotopy, so the distance is 1, not 2
    sc = outside_scene()
    d = dist(sc, outside_Y(sc), "u", "z")
    assert (d.value, d.exact) == (1, True)


def test_arc_curve_crossing_distance_two():
    sc = outside_scene()
    d = dist(sc, outside_Y(sc), "u", "v")
    assert (d.value, d.exact, d.upper) == (2, True, 2)


def test_dy_of_disjoint_cutting_pairs_is_at_most_one():
    sc = outside_scene()
    Y = outside_Y(sc)
    for a, b in (("u", "z"), ("u", "big")):
        res = d_Y(sc, (a,), (b,), Y)
        assert res.exact and res.upper <= 1


# ------------------------------------------------------------ annular side

def test_annular_lift_count_matches_crossing_number():
    sc = annular_scene()
    win = annular_window(sc, "ga", 6)
    P = project_annular(sc, "w", annular_subsurface("ga"), win)
    assert len(P) == 2


def test_annular_lifts_of_one_curve_are_disjoint():
    sc = annular_scene()
    win = annular_window(sc, "ga", 6)
    P = project_annular(sc, "w", annular_subsurface("ga"), win)
    assert sorted(annular_distance(win, a, b) for a in P for b in P) \
        == [0, 0, 1, 1]


@pytest.mark.parametrize("n, expected", [(1, [2, 2, 3, 3]),
                                         (2, [3, 3, 4, 4]),
                                         (4, [5, 5, 6, 6])])
def test_annular_distance_grows_with_twisting(n, expected):
    Y = annular_subsurface("ga")
    sc0 = annular_scene()
    scn = annular_scene(n)
    win = annular_window(sc0, "ga", 10)
    P0 = project_annular(sc0, "w", Y, win)
    Pn = project_annular(scn, "w", Y, annular_window(scn, "ga", 10))
    assert sorted(annular_distance(win, a, b) for a in P0 for b in Pn) \
        == expected


@pytest.mark.parametrize("width", [4, 8, 12])
def test_offset_difference_shifts_by_crossing_number(width):
    # one full twist around the core shifts every lift's top-bottom offset
    # difference by i(gamma, core) = 2, modulo the family size
    Y = annular_subsurface("ga")
    fam = 2 * (2 * width + 1)
    diffs = []
    for n in (0, 1, 2):
        sc = annular_scene(n)
        P = project_annular(sc, "w", Y, annular_window(sc, "ga", width))
        per_curve = {(p.offsets[0] - p.offsets[1]) % fam for p in P}
        assert len(per_curve) == 1  # parallel lifts agree
        diffs.append(per_curve.pop())
    assert diffs[1] == (diffs[0] - 2) % fam
    assert diffs[2] == (diffs[0] - 4) % fam


def test_untwisted_lifts_are_parallel():
    sc = annular_scene()
    P = project_annular(sc, "w", annular_subsurface("ga"),
                        annular_window(sc, "ga", 8))
    assert {(p.offsets[0] - p.offsets[1]) for p in P} == {0}


def test_window_too_small_is_reported():
    with pytest.raises(WindowTooSmall):
        annular_window(annular_scene(), "ga", 1)
    Y = annular_subsurface("ga")
    sc0, sc4 = annular_scene(), annular_scene(4)
    win = annular_window(sc0, "ga", 2)
    P0 = project_annular(sc0, "w", Y, win)
    P4 = project_annular(sc4, "w", Y, annular_window(sc4, "ga", 2))
    with pytest.raises(WindowTooSmall):
        [annular_distance(win, a, b) for a in P0 for b in P4]


def test_dy_annular_matches_pairwise_distances():
    Y = annular_subsurface("ga")
    sc = annular_scene(1)
    sc.curves["w0"] = add_round(puncture_row(4), "w0", 3, 4,
                                Fraction(9, 8), Fraction(7, 8)).curves["w0"]
    sc2 = reduce_pair_geometric(sc, "w", "w0")
    sc2.curves["ga"] = sc.curves["ga"]
    res = d_Y(sc2, ("w0",), ("w",), Y)
    assert res.exact and res.lower == res.upper == 3


# --------------------------------------------------- loop projection bound

def test_loop_projection_bounds_on_a_surgered_loop():
    sc = filling_pair_scene()
    from curveloom.loops import surger_to_loop
    sc.curves["g"] = [tuple(p) for p in SAME_SIGN_PAIR_CURVE]
    out = surger_to_loop(sc, "g", ("al",), ("be",))
    ann = check_loop_projection_bound(out, "g", ("be",),
                                      annular_subsurface("al"))
    assert ann["is_loop"] and ann["ok"]
    assert ann["distance_upper"] <= 5
    Yn = nonannular_subsurface(out, ("al",), (14, Fraction(1, 3)))
    non = check_loop_projection_bound(out, "g", ("be",), Yn)
    assert non["is_loop"] and non["ok"]
    assert non["distance_upper"] <= 2


def test_loop_projection_check_flags_non_loops():
    sc = filling_pair_scene()
    sc.curves["g"] = [tuple(p) for p in SAME_SIGN_PAIR_CURVE]
    res = check_loop_projection_bound(sc, "g", ("be",),
                                      annular_subsurface("al"))
    assert res["is_loop"] is False
    assert res["ok"] is False
