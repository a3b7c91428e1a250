"""Stock scenes: evenly spaced punctures and rectangular round curves.

Finite punctures sit at (4k, 0); a "round" curve around a consecutive run
of them is a rectangle.  Distinct heights and margins keep any collection
of rectangles in general position (no shared support lines).
"""

from __future__ import annotations

from fractions import Fraction

from .scene import PLScene


def puncture_row(n_finite: int) -> PLScene:
    """Scene of S_{0, n_finite + 1} with punctures on the x axis."""
    return PLScene([(4 * k, 0) for k in range(n_finite)], {})


def round_rect(lo: int, hi: int, height, margin) -> list:
    """Rectangle around finite punctures lo..hi (1-based, consecutive)."""
    h = Fraction(height)
    m = Fraction(margin)
    x0 = 4 * (lo - 1) - m
    x1 = 4 * (hi - 1) + m
    return [(x0, -h), (x1, -h), (x1, h), (x0, h)]


def add_round(scene: PLScene, cid: str, lo: int, hi: int, height, margin=None):
    if margin is None:
        margin = Fraction(height)
    if not (1 <= lo <= hi <= len(scene.punctures)):
        raise ValueError("puncture run out of range")
    scene.curves[cid] = round_rect(lo, hi, height, margin)
    return scene


def crossing_pair_scene() -> PLScene:
    """Rectangles around {1,2} and {2,3} on S_{0,5}; they cross twice."""
    sc = puncture_row(4)
    add_round(sc, "a", 1, 2, 1, 2)
    add_round(sc, "b", 2, 3, Fraction(3, 2), 2)
    return sc


def filling_pair_scene() -> PLScene:
    """Scene on S_{0,5} whose curves "al", "be" form a filling pair.

    "al" is the rectangle around punctures {1,2}; "be" is the twist about
    the {2,3}-rectangle of the {3,4}-rectangle, with i(al, be) = 4.  Every
    complementary region of the pair is a disc or a once-punctured disc,
    which the reference-system checks verify exactly.
    """
    from .plmoves import twist_curve
    sc = puncture_row(4)
    add_round(sc, "al", 1, 2, 1, 2)
    add_round(sc, "u", 2, 3, Fraction(3, 2), 2)
    add_round(sc, "w", 3, 4, Fraction(5, 4), 1)
    tw = twist_curve(sc, "w", "u")
    tw.curves["be"] = tw.curves.pop("w")
    del tw.curves["u"]
    return tw
