"""Words, boundary ends, and axis linking in the punctured-plane group."""

from fractions import Fraction

import pytest

from curveloom.errors import GeneralPositionViolation
from curveloom.freegroup import (axis_ends, axes_link, based_word,
                                 circular_order, concat, conjugate,
                                 cyclic_split, inverse, power, reduce_word)
from curveloom.templates import add_round, puncture_row


def row_scene():
    sc = puncture_row(4)
    add_round(sc, "al", 1, 2, 1, 2)
    add_round(sc, "ga", 2, 3, Fraction(3, 2), 2)
    add_round(sc, "w", 3, 4, Fraction(5, 4), 1)
    return sc


def test_word_arithmetic():
    assert reduce_word((1, 2, -2, 3)) == (1, 3)
    assert inverse((1, 2, -3)) == (3, -2, -1)
    assert concat((1, 2), (-2, 3)) == (1, 3)
    assert conjugate((1,), (2,)) == (1, 2, -1)
    assert power((1, 2), 2) == (1, 2, 1, 2)
    assert power((1, 2), -1) == (-2, -1)
    head, core = cyclic_split((1, 2, 3, -2, -1))
    assert head == (1, 2) and core == (3,)


def test_round_curve_words():
    sc = row_scene()
    assert based_word(sc, "al") == (1, 2)
    assert based_word(sc, "ga") == (1, 2, 3, -1)
    assert based_word(sc, "w") == (1, 2, 3, 4, -2, -1)


def test_axis_ends_of_cyclically_reduced_word():
    ep, em = axis_ends((1, 2))
    assert ep != em


def test_axes_link_matches_curve_crossings():
    sc = row_scene()
    al, ga, w = (based_word(sc, c) for c in ("al", "ga", "w"))
    # al and ga surround {1,2} and {2,3}: they cross
    assert axes_link(4, al, ga)
    assert axes_link(4, ga, al)
    # al and w surround disjoint pairs: no crossing
    assert not axes_link(4, al, w)
    # nested round curves do not cross
    assert not axes_link(4, (1, 2), (1, 2, 3, 4))
    assert not axes_link(4, (2, 3), (1, 2, 3, 4))


def test_axes_link_branching_at_a_shared_vertex():
    # both axes pass through a common tree vertex; linking is decided by
    # the cyclic order of the branch directions there
    sc = row_scene()
    assert axes_link(4, (1, 2, 3, 3, 4, -3, -2, -1), based_word(sc, "ga"))


def test_circular_order_is_antisymmetric_and_cyclic():
    ends = [axis_ends((g,))[0] for g in (1, 2, 3)]
    a, b, c = ends
    assert circular_order(4, a, b, c) == -circular_order(4, a, c, b)
    assert circular_order(4, a, b, c) == circular_order(4, b, c, a)
