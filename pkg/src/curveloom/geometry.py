"""Exact rational planar primitives.

All predicates use integer / Fraction arithmetic only; nothing in here
rounds.  Points are (x, y) pairs of ints or Fractions.
"""

from __future__ import annotations

import functools
from fractions import Fraction

Point = tuple  # (x, y), entries int or Fraction


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def scale(v, k):
    return (v[0] * k, v[1] * k)


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def orient(a, b, c):
    """Sign of the signed area of triangle abc: +1 ccw, -1 cw, 0 collinear."""
    d = cross(sub(b, a), sub(c, a))
    return (d > 0) - (d < 0)


def rot90(v):
    """Rotate v by +90 degrees; points to the left of the direction v."""
    return (-v[1], v[0])


def l1_unit(v):
    """v scaled to L1 norm 1; keeps coordinates rational."""
    n = abs(v[0]) + abs(v[1])
    if n == 0:
        raise ValueError("zero vector")
    return (Fraction(v[0], 1) / n, Fraction(v[1], 1) / n)


def on_segment(p, a, b):
    """True when p lies on the closed segment [a, b]."""
    if orient(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


# Segment intersection outcomes.
DISJOINT = 0
PROPER = 1   # interiors cross transversally in a single point
TOUCH = 2    # anything else: endpoint contact, tangency, collinear overlap


def seg_seg(p, q, r, s):
    """Classify the intersection of segments [p,q] and [r,s].

    Returns (DISJOINT,), (PROPER, t, u, point) with t, u in (0,1), or
    (TOUCH,).  Degenerate (zero length) segments raise.
    """
    d1 = sub(q, p)
    d2 = sub(s, r)
    if d1 == (0, 0) or d2 == (0, 0):
        raise ValueError("zero length segment")
    denom = cross(d1, d2)
    w = sub(r, p)
    if denom == 0:
        if cross(d1, w) != 0:
            return (DISJOINT,)
        # collinear: overlap or gap
        t0 = Fraction(dot(w, d1), dot(d1, d1))
        t1 = t0 + Fraction(dot(d2, d1), dot(d1, d1))
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return (DISJOINT,)
        return (TOUCH,)
    t = Fraction(cross(w, d2), denom)
    u = Fraction(cross(w, d1), denom)
    if t < 0 or t > 1 or u < 0 or u > 1:
        return (DISJOINT,)
    if 0 < t < 1 and 0 < u < 1:
        pt = (p[0] + t * d1[0], p[1] + t * d1[1])
        return (PROPER, t, u, pt)
    return (TOUCH,)


def bbox(p, q):
    return (min(p[0], q[0]), min(p[1], q[1]), max(p[0], q[0]), max(p[1], q[1]))


def bbox_disjoint(b1, b2):
    return b1[2] < b2[0] or b2[2] < b1[0] or b1[3] < b2[1] or b2[3] < b1[1]


def _dir_half(v):
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    if v[1] > 0 or (v[1] == 0 and v[0] > 0):
        return 0
    return 1


def _dir_cmp(u, v):
    hu, hv = _dir_half(u), _dir_half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = cross(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def ccw_sorted(vectors):
    """Sort direction vectors counterclockwise starting from angle 0.

    Raises GeneralPositionViolation-ish ValueError on ties (parallel same
    direction), which callers treat as a tangency.
    """
    out = sorted(vectors, key=functools.cmp_to_key(_dir_cmp))
    for a, b in zip(out, out[1:]):
        if _dir_cmp(a, b) == 0:
            raise ValueError("parallel directions at a vertex")
    return out


def walk_area2(points):
    """Twice the signed area of the closed polygonal walk (shoelace)."""
    a = 0
    n = len(points)
    for i in range(n):
        a += cross(points[i], points[(i + 1) % n])
    return a


RAY_NONE = 0
RAY_HIT = 1
RAY_DEGENERATE = 2


def ray_first_hit(origin, direction, segments):
    """First proper hit of the open ray origin + s*direction (s > 0).

    `segments` is a sequence of (a, b) pairs.  Hits exactly at a segment
    endpoint, or collinear grazing, make the cast unusable and return
    (RAY_DEGENERATE,).  Segments through the origin itself are ignored at
    the origin but still checked beyond it.

    Returns (RAY_HIT, s, seg_index, point), (RAY_NONE,) or (RAY_DEGENERATE,).
    """
    best = None
    for idx, (a, b) in enumerate(segments):
        d2 = sub(b, a)
        denom = cross(direction, d2)
        w = sub(a, origin)
        if denom == 0:
            if cross(direction, w) == 0:
                # collinear with the ray: degenerate unless entirely behind
                sa = dot(sub(a, origin), direction)
                sb = dot(sub(b, origin), direction)
                if sa > 0 or sb > 0:
                    return (RAY_DEGENERATE,)
            continue
        s = Fraction(cross(w, d2), denom)
        u = Fraction(cross(w, direction), denom)
        if s <= 0 or u < 0 or u > 1:
            continue
        if u == 0 or u == 1:
            return (RAY_DEGENERATE,)
        if best is None or s < best[0]:
            pt = (origin[0] + s * direction[0], origin[1] + s * direction[1])
            best = (s, idx, pt)
    if best is None:
        return (RAY_NONE,)
    return (RAY_HIT, best[0], best[1], best[2])


# Tilt slopes tried in order when a cast comes back degenerate.  Any finite
# scene only rules out finitely many directions.
_TILTS = [Fraction(0), Fraction(-1, 997), Fraction(1, 991), Fraction(-2, 983),
          Fraction(3, 977), Fraction(-5, 971), Fraction(7, 967),
          Fraction(-11, 953), Fraction(13, 947), Fraction(-17, 941),
          Fraction(19, 937), Fraction(-23, 929), Fraction(29, 919),
          Fraction(-31, 911), Fraction(37, 907), Fraction(-41, 887)]


def generic_leftward_hit(origin, segments, downward_only=False):
    """Cast a near-horizontal leftward ray, retrying tilts past degeneracies.

    When downward_only is set only non-positive slopes are tried (needed when
    the origin is the lexicographic minimum of its own circuit, so the walk's
    own geometry can never be hit).  Returns (RAY_HIT, ...) or (RAY_NONE,).
    """
    for tilt in _TILTS:
        if downward_only and tilt > 0:
            continue
        res = ray_first_hit(origin, (-1, tilt), segments)
        if res[0] != RAY_DEGENERATE:
            return res
    raise ValueError("no generic ray direction found")


def miter_point(point, dir_in, dir_out, level):
    """Offset `point` by `level` to the left of travel.

    dir_in / dir_out are the incoming / outgoing travel directions (either
    may be None at a chain end).  The miter is the sum of the two left
    normals; only the side and the ordering of nested levels matter, exact
    offset distances are checked a posteriori by the callers.
    """
    if dir_in is None and dir_out is None:
        raise ValueError("need at least one direction")
    n_in = rot90(l1_unit(dir_in)) if dir_in is not None else None
    n_out = rot90(l1_unit(dir_out)) if dir_out is not None else None
    if n_in is None:
        m = n_out
    elif n_out is None:
        m = n_in
    else:
        m = add(n_in, n_out)
        if m == (0, 0):
            raise ValueError("reversal corner in offset walk")
    return (point[0] + level * m[0], point[1] + level * m[1])


def offset_walk(stations, levels):
    """PL path hugging a station chain at signed leftward offsets.

    `stations` is a list of (point, dir_in, dir_out); `levels` a parallel
    list of rational offsets (positive = left of travel).
    """
    if len(stations) != len(levels):
        raise ValueError("station/level length mismatch")
    return [miter_point(p, di, do, lv)
            for (p, di, do), lv in zip(stations, levels)]


def lex_min_point(points):
    return min(points)


def dedupe_collinear(points, closed=True):
    """Drop repeated and straight-through interior vertices of a polyline."""
    pts = list(points)
    if closed and len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    changed = True
    while changed and len(pts) > 2:
        changed = False
        out = []
        n = len(pts)
        for i in range(n):
            a = pts[(i - 1) % n] if closed or i > 0 else None
            b = pts[i]
            c = pts[(i + 1) % n] if closed or i < n - 1 else None
            if a is not None and a == b:
                changed = True
                continue
            if a is not None and c is not None and orient(a, b, c) == 0 \
                    and dot(sub(b, a), sub(c, b)) > 0:
                changed = True
                continue
            out.append(b)
        pts = out
    return pts
