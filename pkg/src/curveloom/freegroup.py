"""Fundamental-group words and boundary order for punctured-sphere scenes.

The group of the sphere with finite punctures q_1..q_s (plus infinity) is
free on loops x_1..x_s, where x_k encircles q_k counterclockwise.  A
curve's word is read from its signed crossings with vertical rays dropped
from the punctures; the basepoint sits far to the lower left.  Words are
tuples of nonzero integers (sign = orientation of the crossing).

Ends of the free group (infinite reduced words) carry the circular order
induced by the planar embedding: at every vertex of the Cayley tree the
outgoing directions occur counterclockwise as -1, +1, -2, +2, ...  The
axes of two hyperbolic elements cross exactly when their endpoint pairs
link in this circular order, which turns intersection counts in an
annular cover into finitely many linking tests against deck translates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import GeneralPositionViolation


# ---------------------------------------------------------------------------
# word arithmetic


def reduce_word(w):
    """Freely reduce a tuple of nonzero integer letters."""
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w):
    return tuple(-x for x in reversed(w))


def concat(*ws):
    out = ()
    for w in ws:
        out = reduce_word(out + tuple(w))
    return out


def conjugate(h, g):
    """h g h^-1, reduced."""
    return concat(h, g, inverse(h))


def power(g, k):
    if k < 0:
        return power(inverse(g), -k)
    return concat(*([tuple(g)] * k)) if k else ()


def cyclic_split(g):
    """(u, p) with g = u p u^-1 reduced and p cyclically reduced."""
    g = reduce_word(g)
    u = []
    while len(g) >= 2 and g[0] == -g[-1]:
        u.append(g[0])
        g = g[1:-1]
    if not g:
        raise ValueError("trivial element has no axis")
    return tuple(u), tuple(g)


# ---------------------------------------------------------------------------
# reading words off a scene


def _ray_crossings(p, q, punctures):
    """Signed ray crossings of segment p->q, ordered along the segment.

    Puncture k (1-based) drops a vertical ray; a crossing in the +x
    direction reads +k, so the counterclockwise loop around q_k is (k,).
    """
    out = []
    for k, (px, py) in enumerate(punctures, start=1):
        if p[0] == q[0]:
            continue
        if not (min(p[0], q[0]) < px < max(p[0], q[0])):
            if px == p[0] or px == q[0]:
                raise GeneralPositionViolation(
                    f"vertex exactly below puncture {k}")
            continue
        t = Fraction(px - p[0], q[0] - p[0])
        y = p[1] + t * (q[1] - p[1])
        if y == py:
            raise GeneralPositionViolation(f"path through puncture {k}")
        if y > py:
            continue
        out.append((t, k if q[0] > p[0] else -k))
    out.sort()
    return [s for _, s in out]


def path_word(points, punctures, closed=False):
    """Reduced word of a PL path (closed polygon when closed=True)."""
    pts = list(points)
    if closed:
        pts = pts + [pts[0]]
    letters = []
    for p, q in zip(pts, pts[1:]):
        letters.extend(_ray_crossings(p, q, punctures))
    return reduce_word(letters)


def basepoint(scene):
    xs = [p[0] for p in scene.punctures]
    ys = [p[1] for p in scene.punctures]
    for pts in scene.curves.values():
        xs.extend(p[0] for p in pts)
        ys.extend(p[1] for p in pts)
    return (min(xs) - 5, min(ys) - 5)


def based_word(scene, cid):
    """Word of the curve as a based loop (basepoint far lower left)."""
    pts = scene.curves[cid]
    lead = path_word([basepoint(scene), pts[0]], scene.punctures)
    return conjugate(lead, path_word(pts, scene.punctures, closed=True))


def based_word_at(scene, cid, prefix_points):
    """Word of the lift conjugator through a point of the curve.

    prefix_points runs from the curve's vertex 0 to the chosen point; the
    returned word is (basepoint -> vertex 0 -> point), suitable for
    conjugating the curve's based word to the lift through that point.
    """
    pts = scene.curves[cid]
    lead = path_word([basepoint(scene), pts[0]], scene.punctures)
    along = path_word(prefix_points, scene.punctures)
    return concat(lead, along)


# ---------------------------------------------------------------------------
# ends and their circular order


@dataclass(frozen=True)
class End:
    """Eventually periodic infinite reduced word: prefix then period."""
    prefix: tuple
    period: tuple

    def letter(self, i):
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def _bound(self, other):
        return (len(self.prefix) + len(other.prefix)
                + len(self.period) * len(other.period) + 2)

    def diverge(self, other):
        """First index where the words differ, or None if equal."""
        for i in range(self._bound(other)):
            if self.letter(i) != other.letter(i):
                return i
        return None


def axis_ends(g):
    """(forward end, backward end) of the axis of a nontrivial element."""
    u, p = cyclic_split(g)
    return End(u, p), End(u, inverse(p))


def _orient3(n_gen, a, b, c):
    """+1 when b precedes c counterclockwise from a at a tree vertex.

    Directions around every vertex occur counterclockwise in the order
    +1, -1, +2, -2, ..., +n_gen, -n_gen: drawing the ray-reading
    generator loops as nested over-passes from a basepoint below and to
    the left of the punctures, the outgoing strand of each loop sits
    clockwise of its returning strand, and nearer punctures sit
    clockwise of farther ones.
    """
    def pos(d):
        return 2 * (abs(d) - 1) + (0 if d > 0 else 1)
    n = 2 * n_gen
    pa, pb, pc = pos(a), pos(b), pos(c)
    return 1 if (pb - pa) % n < (pc - pa) % n else -1


def circular_order(n_gen, e1, e2, e3):
    """Orientation (+1/-1) of three distinct ends on the boundary circle."""
    d12, d13, d23 = e1.diverge(e2), e1.diverge(e3), e2.diverge(e3)
    if d12 is None or d13 is None or d23 is None:
        raise ValueError("ends must be pairwise distinct")
    m = min(d12, d13, d23)
    if d12 > m:
        # e3 splits off first; at the deeper e1/e2 branch vertex it lies
        # behind the direction back toward the root
        return _orient3(n_gen, e1.letter(d12), e2.letter(d12),
                        -e1.letter(d12 - 1))
    if d13 > m:
        return _orient3(n_gen, e1.letter(d13), -e1.letter(d13 - 1),
                        e3.letter(d13))
    if d23 > m:
        return _orient3(n_gen, -e2.letter(d23 - 1), e2.letter(d23),
                        e3.letter(d23))
    return _orient3(n_gen, e1.letter(m), e2.letter(m), e3.letter(m))


def axes_link(n_gen, g, h):
    """Do the axes of g and h cross (endpoint pairs link on the circle)?"""
    gp, gm = axis_ends(g)
    hp, hm = axis_ends(h)
    for x in (hp, hm):
        if gp.diverge(x) is None or gm.diverge(x) is None:
            return False
    return circular_order(n_gen, gp, hp, gm) \
        != circular_order(n_gen, gp, hm, gm)
