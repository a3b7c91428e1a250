"""Geometric curve moves on PL scenes.

This module reduces pairs of polylines to minimal position by purely
geometric rerouting, independently of the combinatorial-map smoothing in
`minpos`.  It also builds new curves geometrically: Dehn twists of one
polyline about another.  All constructions are verified a posteriori by
re-ingesting the modified scene (exact rational arithmetic end to end);
offsets are halved and the move retried when a perturbation parameter
turns out too coarse.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import GeneralPositionViolation, NonConvergence
from .geometry import (DISJOINT, TOUCH, _TILTS, cross, miter_point,
                       offset_walk, scale, seg_seg, sub, walk_area2)
from .scene import PLScene

REPAIR_CAP = 32


# ---------------------------------------------------------------------------
# exact predicates


def point_in_polygon(pt, poly):
    """Exact even-odd test for a point strictly off the polygon boundary.

    Casts a near-horizontal ray and counts proper crossings, retrying
    tilted directions past any degeneracy (endpoint hits, collinear
    grazing).  `poly` is a closed vertex list (closure implicit).
    """
    n = len(poly)
    segs = [(poly[i], poly[(i + 1) % n]) for i in range(n)]
    for tilt in _TILTS:
        direction = (Fraction(-1), tilt)
        count = 0
        ok = True
        for a, b in segs:
            d2 = sub(b, a)
            denom = cross(direction, d2)
            w = sub(a, pt)
            if denom == 0:
                if cross(direction, w) == 0:
                    ok = False
                    break
                continue
            s = Fraction(cross(w, d2), denom)
            u = Fraction(cross(w, direction), denom)
            if s == 0:
                raise ValueError("point lies on the polygon boundary")
            if s < 0 or u < 0 or u > 1:
                continue
            if u == 0 or u == 1:
                ok = False
                break
            count += 1
        if ok:
            return count % 2 == 1
    raise ValueError("no generic ray direction found")


def pair_crossings(scene: PLScene, ca, cb):
    """Proper crossings of two polylines as [(point, (ia, ta), (ib, tb))].

    Raises GeneralPositionViolation on any tangency or shared endpoint.
    """
    out = []
    for ia, (a0, a1) in enumerate(scene.segments(ca)):
        for ib, (b0, b1) in enumerate(scene.segments(cb)):
            res = seg_seg(a0, a1, b0, b1)
            if res[0] == DISJOINT:
                continue
            if res[0] == TOUCH:
                raise GeneralPositionViolation(
                    f"curves {ca} and {cb} touch without crossing")
            _, t, u, pt = res
            out.append((pt, (ia, t), (ib, u)))
    return out


# ---------------------------------------------------------------------------
# bigon detection on a two-curve subscene


def _point_at(scene, cid, pos):
    pts = scene.curves[cid]
    i, t = pos
    a, b = pts[i], pts[(i + 1) % len(pts)]
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def _arc_points(scene, cid, pos_from, pos_to):
    """Vertices of the arc of `cid` from pos_from forward to pos_to,
    including both crossing points as endpoints."""
    pts = scene.curves[cid]
    n = len(pts)
    (i0, t0), (i1, t1) = pos_from, pos_to
    out = [_point_at(scene, cid, pos_from)]
    if i0 == i1 and t0 < t1:
        steps = 0
    else:
        steps = (i1 - i0) % n or n
    j = i0
    for _ in range(steps):
        j = (j + 1) % n
        out.append(pts[j])
    out.append(_point_at(scene, cid, pos_to))
    return out


def find_geometric_bigons(scene: PLScene, ca, cb):
    """Empty bigons between two curves of the scene, smallest first.

    Returns a list of (area2, u, v, b_reversed) where u, v are crossing
    records adjacent along both curves, the arc of `ca` runs forward from
    u to v, and the matching crossing-free arc of `cb` runs forward from v
    to u (b_reversed False) or from u to v (b_reversed True).  Only the
    two named curves are consulted, so callers should pass a two-curve
    subscene.
    """
    xs = pair_crossings(scene, ca, cb)
    if len(xs) < 2:
        return []
    along_a = sorted(xs, key=lambda r: r[1])
    along_b = sorted(xs, key=lambda r: r[2])
    pos_b = {r[0]: k for k, r in enumerate(along_b)}
    m = len(xs)
    found = []
    for k in range(m):
        u = along_a[k]
        v = along_a[(k + 1) % m]
        ku, kv = pos_b[u[0]], pos_b[v[0]]
        options = []
        if (kv - ku) % m == 1:
            options.append(True)   # b runs forward u -> v crossing-free
        if (ku - kv) % m == 1:
            options.append(False)  # b runs forward v -> u crossing-free
        arc_a = _arc_points(scene, ca, u[1], v[1])
        for b_rev in options:
            if b_rev:
                arc_b = _arc_points(scene, cb, u[2], v[2])
                poly = arc_a[:-1] + list(reversed(arc_b))[:-1]
            else:
                arc_b = _arc_points(scene, cb, v[2], u[2])
                poly = arc_a[:-1] + arc_b[:-1]
            if any(point_in_polygon(p, poly) for p in scene.punctures):
                continue
            found.append((abs(walk_area2(poly)), u, v, b_rev))
    found.sort(key=lambda r: (r[0], r[1][1], r[2][1]))
    return found


# ---------------------------------------------------------------------------
# rerouting one curve through the corridor beside the other


def _station_chain(points):
    """(point, dir_in, dir_out) stations for an open chain of points."""
    stations = []
    n = len(points)
    for i, p in enumerate(points):
        din = sub(p, points[i - 1]) if i > 0 else None
        dout = sub(points[i + 1], p) if i < n - 1 else None
        if din == (0, 0):
            din = None
        if dout == (0, 0):
            dout = None
        stations.append((p, din, dout))
    return stations


def _trim_params(scene, ca, cb, seg_index, t, below):
    """Largest crossing parameter below t (or smallest above) on a segment."""
    lo, hi = Fraction(0), Fraction(1)
    for _, (ia, ta), _ in pair_crossings(scene, ca, cb):
        if ia != seg_index:
            continue
        if ta < t:
            lo = max(lo, ta)
        elif ta > t:
            hi = min(hi, ta)
    return lo if below else hi


def _reroute_once(scene: PLScene, ca, cb, u, v, b_rev, eps):
    """Scene with the u->v arc of `ca` replaced by a corridor beside `cb`.

    The corridor follows the crossing-free arc of `cb` on the side away
    from the bigon interior at leftward offset ±eps, so the two crossings
    u, v disappear and no new crossing with `cb` appears.
    """
    pts_a = scene.curves[ca]
    na = len(pts_a)
    (iu, tu), (iv, tv) = u[1], v[1]

    # entry/exit points on `ca` strictly before u and after v; the skewed
    # fractions keep them distinct even when both land in one crossing gap
    lo = _trim_params(scene, ca, cb, iu, tu, below=True)
    hi = _trim_params(scene, ca, cb, iv, tv, below=False)
    if tu <= lo or hi <= tv:
        raise GeneralPositionViolation("no room to trim beside a crossing")
    t_in = lo + (tu - lo) * Fraction(3, 4)
    t_out = tv + (hi - tv) * Fraction(1, 4)
    p_in = _point_at(scene, ca, (iu, t_in))
    p_out = _point_at(scene, ca, (iv, t_out))

    # corridor stations along the crossing-free arc of `cb`
    if b_rev:
        chain = _arc_points(scene, cb, u[2], v[2])
    else:
        chain = list(reversed(_arc_points(scene, cb, v[2], u[2])))
    stations = _station_chain(chain)

    # side: the piece of `ca` before u lies on the far side of `cb`, which
    # is where the corridor must run.  Orient against the travel direction
    # of the station chain at its first station.
    d0 = stations[0][2]
    side = cross(d0, sub(p_in, chain[0]))
    if side == 0:
        raise GeneralPositionViolation("entry point collinear with corridor")
    level = eps if side > 0 else -eps
    corridor = offset_walk(stations, [level] * len(stations))

    # vertices of `ca` kept outside the replaced arc
    keep = []
    if iu == iv and tu > tv:
        pass  # the arc wraps the whole curve; the kept piece is vertex-free
    else:
        j = iu if (iu == iv and tu < tv) else (iv % na)
        while True:
            j = (j + 1) % na
            keep.append(pts_a[j])
            if j == iu:
                break
    new_a = [p_in] + corridor + [p_out] + keep
    out = scene.copy()
    out.curves[ca] = new_a
    return out.cleaned()


def remove_geometric_bigon(scene: PLScene, ca, cb):
    """Reroute `ca` across one innermost empty bigon with `cb`.

    Returns the new scene, or None when the pair shares no empty bigon.
    Verifies the move exactly (the pair loses two crossings and the scene
    re-ingests cleanly), halving the corridor offset on failure.
    """
    bigons = find_geometric_bigons(scene, ca, cb)
    if not bigons:
        return None
    _, u, v, b_rev = bigons[0]
    before = len(pair_crossings(scene, ca, cb))
    eps = _start_offset(scene)
    for _ in range(REPAIR_CAP):
        try:
            cand = _reroute_once(scene, ca, cb, u, v, b_rev, eps)
            _check_two_curve_scene(cand, ca, cb)
        except GeneralPositionViolation:
            eps = eps / 2
            continue
        if len(pair_crossings(cand, ca, cb)) == before - 2:
            return cand
        eps = eps / 2
    raise NonConvergence("corridor reroute failed at every offset scale")


def _start_offset(scene):
    """A coarse initial corridor offset from the scene's coordinate span."""
    xs = [x for pts in scene.curves.values() for (x, _) in pts]
    ys = [y for pts in scene.curves.values() for (_, y) in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1)
    return Fraction(span, 64)


def _check_two_curve_scene(scene, ca, cb):
    """General-position check for a subscene: simplicity plus pair behaviour."""
    from .arrangement import _check_simple, _pair_crossings
    sub_scene = PLScene(list(scene.punctures),
                        {ca: list(scene.curves[ca]), cb: list(scene.curves[cb])})
    _check_simple(sub_scene)
    _pair_crossings(sub_scene)


def reduce_pair_geometric(scene: PLScene, ca, cb):
    """Two-curve subscene of (ca, cb) rerouted until no empty bigon remains."""
    cur = PLScene(list(scene.punctures),
                  {ca: list(scene.curves[ca]), cb: list(scene.curves[cb])})
    guard = len(pair_crossings(cur, ca, cb)) + 1
    for _ in range(guard):
        nxt = remove_geometric_bigon(cur, ca, cb)
        if nxt is None:
            return cur
        cur = nxt
    raise NonConvergence("geometric reduction failed to terminate")


def pl_intersection_number(scene: PLScene, ca, cb) -> int:
    """i(ca, cb) computed purely from polyline geometry.

    Independent of the combinatorial-map route: the two polylines are
    rerouted across empty bigons until none remains, then the surviving
    crossings are counted.
    """
    if ca == cb:
        return 0
    return len(pair_crossings(reduce_pair_geometric(scene, ca, cb), ca, cb))


# ---------------------------------------------------------------------------
# geometric Dehn twists


def _wrap(x):
    return x - (x.numerator // x.denominator) if isinstance(x, Fraction) else x % 1


def _core_tau(core_pts, pos):
    i, t = pos
    return Fraction(i + 0, 1) / len(core_pts) + t / len(core_pts)


def _twist_once(scene: PLScene, moving, core, direction, power, eps, shrink):
    """One candidate scene for a power of a Dehn twist of `moving` about `core`.

    At each crossing the transversal passage of `moving` is replaced by a
    detour that winds `power` times around `core` inside a band of
    half-width eps.  In unrolled band coordinates (position along core,
    signed offset) every detour is a line of slope 2·eps·direction/power;
    parallel lines at distinct base positions never meet, so the strands
    stay disjoint.  All detours share one sampling grid (core vertices
    plus every crossing position) so the piecewise-linear realizations
    cannot cross between grid points.
    """
    core_pts = scene.curves[core]
    nc = len(core_pts)
    xs = pair_crossings(scene, moving, core)
    if not xs:
        return scene.copy()

    # common sampling grid of positions along the core, as (tau, point,
    # dir_in, dir_out) in forward core order
    grid = []
    for j in range(nc):
        p = core_pts[j]
        din = sub(p, core_pts[j - 1])
        dout = sub(core_pts[(j + 1) % nc], p)
        grid.append((Fraction(j, nc), p, din, dout))
    for pt, _, (ib, tb) in xs:
        d = sub(core_pts[(ib + 1) % nc], core_pts[ib])
        grid.append(((ib + tb) / nc, pt, d, d))
    grid.sort(key=lambda g: g[0])
    ng = len(grid)

    def detour(tau_k, s_enter):
        """Points from the band entry on side s_enter at tau_k, winding
        `power` times around and leaving on the opposite side."""
        # the strand's image is the line u = s_enter*eps*(1 - 2d/power) in
        # walked distance d; side -1 entrants walk with the core when
        # direction=+1, side +1 entrants against it
        forward = (s_enter == -1) if direction > 0 else (s_enter == 1)
        k0 = next(i for i, g in enumerate(grid) if g[0] == tau_k)
        pts = []
        pdir = grid[k0][3] if forward else scale(grid[k0][2], -1)
        # levels are leftward of travel; walking backward flips the side
        flip = 1 if forward else -1
        pts.append(miter_point(grid[k0][1], pdir, pdir, flip * s_enter * eps))
        dist = Fraction(0)
        for step in range(1, power * ng):
            if forward:
                j = (k0 + step) % ng
                dist += _wrap(grid[j][0] - grid[j - 1][0])
            else:
                j = (k0 - step) % ng
                dist += _wrap(grid[(j + 1) % ng][0] - grid[j][0])
            g = grid[j]
            u = s_enter * eps * (1 - 2 * dist / power)
            if u == 0:
                # the half-way level would put a vertex exactly on the
                # core; leave the crossing to the adjoining segment
                continue
            if forward:
                din, dout, u_level = g[2], g[3], u
            else:
                din, dout, u_level = scale(g[3], -1), scale(g[2], -1), -u
            pts.append(miter_point(g[1], din, dout, u_level))
        pts.append(miter_point(grid[k0][1], pdir, pdir, -flip * s_enter * eps))
        return pts

    # rebuild `moving`, splicing a detour in place of every crossing
    mov_pts = scene.curves[moving]
    nm = len(mov_pts)
    per_seg = {}
    for pt, (ia, ta), posb in xs:
        per_seg.setdefault(ia, []).append((ta, pt, posb))
    new_pts = []
    for i in range(nm):
        a0, a1 = mov_pts[i], mov_pts[(i + 1) % nm]
        new_pts.append(a0)
        if i not in per_seg:
            continue
        hits = sorted(per_seg[i])
        bounds = [Fraction(0)] + [h[0] for h in hits] + [Fraction(1)]
        for h_idx, (ta, pt, (ib, tb)) in enumerate(hits):
            t_in = bounds[h_idx] + (ta - bounds[h_idx]) * (1 - shrink)
            t_out = ta + (bounds[h_idx + 2] - ta) * shrink
            e = (a0[0] + t_in * (a1[0] - a0[0]), a0[1] + t_in * (a1[1] - a0[1]))
            x = (a0[0] + t_out * (a1[0] - a0[0]), a0[1] + t_out * (a1[1] - a0[1]))
            cd = sub(core_pts[(ib + 1) % nc], core_pts[ib])
            s_enter = 1 if cross(cd, sub(e, pt)) > 0 else -1
            new_pts.append(e)
            new_pts.extend(detour((ib + tb) / nc, s_enter))
            new_pts.append(x)
    out = scene.copy()
    out.curves[moving] = new_pts
    return out.cleaned()


def parallel_copy(scene: PLScene, curve, new_id, side=1) -> PLScene:
    """Scene extended with a disjoint parallel copy of `curve`.

    The copy runs at a small offset to the left (side=+1) or right (-1)
    of the original's vertex order, so it is isotopic to the original and
    disjoint from it.  The result is checked exactly: the new scene must
    be in general position, the copy must not meet the original, and it
    must cross every other curve the same number of times; the offset is
    halved on failure.
    """
    from .arrangement import _check_simple, _pair_crossings
    if new_id in scene.curves:
        raise ValueError(f"curve id {new_id!r} already in scene")
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    pts = scene.cleaned().curves[curve]
    n = len(pts)
    eps = _start_offset(scene) / 4
    for _ in range(REPAIR_CAP):
        try:
            copy_pts = [miter_point(pts[i],
                                    sub(pts[i], pts[i - 1]),
                                    sub(pts[(i + 1) % n], pts[i]),
                                    side * eps)
                        for i in range(n)]
            cand = scene.copy()
            cand.curves[new_id] = copy_pts
            _check_simple(cand)
            _pair_crossings(cand)
            if not pair_crossings(cand, curve, new_id) and all(
                    len(pair_crossings(cand, new_id, other))
                    == len(pair_crossings(cand, curve, other))
                    for other in scene.curves if other != curve):
                return cand
        except (GeneralPositionViolation, ValueError):
            pass
        eps = eps / 2
    raise NonConvergence("parallel copy failed at every offset")


def twist_curve(scene: PLScene, moving, core, direction=1, power=1) -> PLScene:
    """Scene with `moving` replaced by its Dehn twist about `core`.

    direction=+1 drags strands the way of the core's vertex order; -1 the
    other way; power > 1 winds each strand that many times.  The result is
    checked exactly: the new scene must be in general position and the
    twisted curve must still meet the core in the same number of points
    after reduction; the band width is halved on failure.
    """
    from .arrangement import _check_simple, _pair_crossings
    if moving == core:
        raise ValueError("cannot twist a curve about itself")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    if power < 1:
        raise ValueError("power must be a positive integer")
    want = pl_intersection_number(scene, moving, core)
    eps = _start_offset(scene) / 4
    shrink = Fraction(1, 4)
    for _ in range(REPAIR_CAP):
        try:
            cand = _twist_once(scene, moving, core, direction, power, eps, shrink)
            _check_simple(cand)
            _pair_crossings(cand)
            if pl_intersection_number(cand, moving, core) == want:
                return cand
        except (GeneralPositionViolation, ValueError):
            pass
        # halve only the band width: scaling the trim fraction along with
        # it would preserve any exact coincidence between a trim point and
        # a band boundary, repeating the same degeneracy at every width
        eps = eps / 2
    raise NonConvergence("twist construction failed at every band width")
