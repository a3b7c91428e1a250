"""Surgery descent: violations, single steps, full descent, and pairs."""

from fractions import Fraction

import pytest

from curveloom.errors import NotFilling, NotSensible
from curveloom.loops import (ALTERNATING_TRIPLE, NON_ALTERNATING_TRIPLE,
                             SAME_SIGN_PAIR, find_violation, is_loop,
                             surger_once, surger_pair, surger_to_loop)
from curveloom.plmoves import pair_crossings, parallel_copy
from curveloom.templates import add_round, filling_pair_scene, puncture_row

from loop_fixtures import (ALTERNATING_TRIPLE_CURVE,
                           NON_ALTERNATING_TRIPLE_CURVE,
                           SAME_SIGN_PAIR_CURVE)

ALPHAS = ("al",)
BETAS = ("be",)

TAGGED_CURVES = [
    (SAME_SIGN_PAIR, SAME_SIGN_PAIR_CURVE),
    (ALTERNATING_TRIPLE, ALTERNATING_TRIPLE_CURVE),
    (NON_ALTERNATING_TRIPLE, NON_ALTERNATING_TRIPLE_CURVE),
]


def scene_with(curve_pts):
    sc = filling_pair_scene()
    sc.curves["g"] = [tuple(p) for p in curve_pts]
    return sc


def beta_crossings(scene, gamma="g"):
    return len(pair_crossings(scene, gamma, "be"))


def test_reference_pair_fills():
    sc = filling_pair_scene()
    assert len(pair_crossings(sc, "al", "be")) == 4
    # a curve isotopic to a reference is the terminal state of the descent
    sc2 = parallel_copy(sc, "al", "g")
    assert find_violation(sc2, "g", ALPHAS, BETAS) is None
    assert is_loop(sc2, "g", ALPHAS, BETAS)


@pytest.mark.parametrize("tag,pts", TAGGED_CURVES,
                         ids=[t for t, _ in TAGGED_CURVES])
def test_violation_tags(tag, pts):
    sc = scene_with(pts)
    v = find_violation(sc, "g", ALPHAS, BETAS)
    assert v is not None and v.tag == tag


@pytest.mark.parametrize("tag,pts", TAGGED_CURVES,
                         ids=[t for t, _ in TAGGED_CURVES])
def test_single_step_reduces_beta_crossings(tag, pts):
    sc = scene_with(pts)
    before = beta_crossings(sc)
    v = find_violation(sc, "g", ALPHAS, BETAS)
    out = surger_once(sc, "g", ALPHAS, BETAS, v)
    assert beta_crossings(out) < before


@pytest.mark.parametrize("tag,pts", TAGGED_CURVES,
                         ids=[t for t, _ in TAGGED_CURVES])
def test_descent_terminates_in_a_loop(tag, pts):
    sc = scene_with(pts)
    out = surger_to_loop(sc, "g", ALPHAS, BETAS)
    assert is_loop(out, "g", ALPHAS, BETAS)
    assert find_violation(out, "g", ALPHAS, BETAS) is None
    assert beta_crossings(out) <= beta_crossings(sc)


def test_pair_descent_keeps_curves_nearly_disjoint():
    sc = scene_with(SAME_SIGN_PAIR_CURVE)
    sc = parallel_copy(sc, "g", "g2")
    assert not pair_crossings(sc, "g", "g2")
    out = surger_pair(sc, "g", "g2", ALPHAS, BETAS)
    assert is_loop(out, "g", ALPHAS, BETAS)
    assert is_loop(out, "g2", ALPHAS, BETAS)
    assert len(pair_crossings(out, "g", "g2")) <= 4


def test_pair_descent_rejects_crossing_inputs():
    sc = scene_with(SAME_SIGN_PAIR_CURVE)
    add_round(sc, "g2", 2, 3, Fraction(13, 8), Fraction(17, 8))
    assert pair_crossings(sc, "g", "g2")
    with pytest.raises(NotSensible):
        surger_pair(sc, "g", "g2", ALPHAS, BETAS)


def test_descent_rejects_inessential_curve():
    sc = filling_pair_scene()
    sc.curves["g"] = [(Fraction(17, 16), Fraction(-1, 16)),
                      (Fraction(19, 16), Fraction(-1, 16)),
                      (Fraction(19, 16), Fraction(1, 16)),
                      (Fraction(17, 16), Fraction(1, 16))]
    with pytest.raises(NotSensible):
        surger_to_loop(sc, "g", ALPHAS, BETAS)


def test_descent_rejects_non_filling_references():
    sc = puncture_row(4)
    add_round(sc, "al", 1, 2, 1, 2)
    add_round(sc, "be", 3, 4, Fraction(9, 8), Fraction(3, 2))
    add_round(sc, "g", 2, 3, Fraction(5, 4), Fraction(7, 4))
    with pytest.raises(NotFilling):
        surger_to_loop(sc, "g", ALPHAS, BETAS)
