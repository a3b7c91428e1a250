"""Frozen curves that trigger each surgery case on the filling-pair scene.

Each curve below, added to `filling_pair_scene()`, is simple, essential,
in minimal position with the reference pair, and its first violation
found by `find_violation` has the named tag.  The coordinates were
produced by random twisting and are frozen here so the tests do not
depend on the twisting code.
"""

from fractions import Fraction as F

SAME_SIGN_PAIR_CURVE = [
    (F(11, 8), F(-31, 16)),
    (F(117, 8), F(-31, 16)),
    (F(117, 8), F(31, 16)),
    (F(11, 8), F(31, 16)),
    (F(11, 8), F(1045, 1024)),
    (F(-1816571, 991232), F(933755, 991232)),
    (F(-1784385, 991232), F(-901569, 991232)),
    (F(11, 8), F(-55841, 61952)),
    (F(5717127, 991232), F(-869383, 991232)),
    (F(5684941, 991232), F(837197, 991232)),
    (F(11, 8), F(779, 1024)),
    (F(11, 8), F(-779, 1024)),
    (F(-1714693, 991232), F(-831877, 991232)),
    (F(-1746879, 991232), F(864063, 991232)),
    (F(11, 8), F(54511, 61952)),
    (F(5743993, 991232), F(896249, 991232)),
    (F(5776179, 991232), F(-928435, 991232)),
    (F(11, 8), F(-1045, 1024)),
]

ALTERNATING_TRIPLE_CURVE = [
    (F(11, 8), F(-31, 16)),
    (F(117, 8), F(-31, 16)),
    (F(117, 8), F(31, 16)),
    (F(11, 8), F(31, 16)),
    (F(11, 8), F(1029, 1024)),
    (F(-88543, 49152), F(45535, 49152)),
    (F(-86947, 49152), F(-43939, 49152)),
    (F(11, 8), F(-10885, 12288)),
    (F(281959, 49152), F(-42343, 49152)),
    (F(280363, 49152), F(40747, 49152)),
    (F(11, 8), F(763, 1024)),
    (F(11, 8), F(-763, 1024)),
    (F(-83489, 49152), F(-40481, 49152)),
    (F(-85085, 49152), F(42077, 49152)),
    (F(11, 8), F(10619, 12288)),
    (F(283289, 49152), F(43673, 49152)),
    (F(284885, 49152), F(-45269, 49152)),
    (F(11, 8), F(-1029, 1024)),
]

NON_ALTERNATING_TRIPLE_CURVE = [
    (F(11, 8), F(-31, 16)),
    (F(117, 8), F(-31, 16)),
    (F(117, 8), F(31, 16)),
    (F(11, 8), F(31, 16)),
    (F(11, 8), F(1029, 1024)),
    (F(284885, 49152), F(45269, 49152)),
    (F(283289, 49152), F(-43673, 49152)),
    (F(11, 8), F(-10619, 12288)),
    (F(-85085, 49152), F(-42077, 49152)),
    (F(-83489, 49152), F(40481, 49152)),
    (F(11, 8), F(763, 1024)),
    (F(11, 8), F(-763, 1024)),
    (F(280363, 49152), F(-40747, 49152)),
    (F(281959, 49152), F(42343, 49152)),
    (F(11, 8), F(10885, 12288)),
    (F(-86947, 49152), F(43939, 49152)),
    (F(-88543, 49152), F(-45535, 49152)),
    (F(11, 8), F(-1029, 1024)),
]
