"""Subsurface projections and projection distances.

A subsurface of the punctured sphere is either non-annular — a
complementary component of a disjoint collection of reference circles —
or annular, the collar of a single core curve.

Non-annular projections clip a curve to the chosen component; distances
in the arc-and-curve graph of the component are decided exactly up to
the 3-threshold on a small planar subdivision (the component with every
boundary circle collapsed to a single marked object).  Values >= 3 come
with a certified upper bound from an explicit hugging-path builder.

Annular projections avoid building the annular cover geometrically:
curves become words in the free fundamental group of the sphere, lifts
become axes of conjugates, and crossing numbers in the cover are counted
as linking of axis endpoints against deck translates of the core word
(see freegroup).  Distances follow the convention
1 + (minimal crossing number) for crossing arcs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .errors import (GeneralPositionViolation, NonConvergence, NotSensible,
                     UncertifiedDistance, WindowTooSmall, WrongKind)
from .freegroup import (axis_ends, based_word, based_word_at, circular_order,
                        concat, conjugate, inverse, power)
from .geometry import (DISJOINT, PROPER, TOUCH, ccw_sorted, cross, dot,
                       l1_unit, miter_point, seg_seg, sub)
from .plmoves import REPAIR_CAP, _station_chain, _start_offset, \
    pair_crossings, point_in_polygon
from .scene import PLScene

NON_ANNULAR = "NonAnnular"
ANNULAR = "Annular"

ARC = "arc"
CURVE = "curve"
ANNULAR_ARC = "annular-arc"


# ---------------------------------------------------------------------------
# subsurfaces


@dataclass(frozen=True)
class Subsurface:
    """A non-annular complementary component or an annular collar.

    Non-annular: `boundary` lists the circle ids and `inside` is the
    subset of them containing the chosen component.  Annular: `core` is
    the core curve id.
    """
    kind: str
    boundary: tuple = ()
    inside: frozenset = frozenset()
    core: str = None


def annular_subsurface(core) -> Subsurface:
    return Subsurface(ANNULAR, core=core)


def _ids(x):
    return (x,) if isinstance(x, str) else tuple(x)


def _subscene(scene, keep):
    return PLScene(list(scene.punctures),
                   {k: list(scene.curves[k]) for k in keep})


def _check_essential(scene, cid):
    from .arrangement import ingest_planar
    from .minpos import is_essential
    system = ingest_planar(_subscene(scene, (cid,)))
    if not is_essential(system, cid):
        raise NotSensible(f"curve {cid} is not essential")


def _check_min_against(scene, gamma, others):
    from .arrangement import ingest_planar
    from .minpos import geometric_intersection_number
    for cb in others:
        system = ingest_planar(_subscene(scene, (gamma, cb)))
        raw = len(pair_crossings(scene, gamma, cb))
        if raw != geometric_intersection_number(system, gamma, cb):
            raise NotSensible(
                f"{gamma} and {cb} are not in minimal position")


def nonannular_subsurface(scene, boundary, sample_point) -> Subsurface:
    """The complementary component of the boundary circles containing
    sample_point, as a subsurface."""
    boundary = _ids(boundary)
    for i, b1 in enumerate(boundary):
        _check_essential(scene, b1)
        for b2 in boundary[i + 1:]:
            if pair_crossings(scene, b1, b2):
                raise NotSensible(
                    f"boundary curves {b1} and {b2} are not disjoint")
    inside = frozenset(b for b in boundary
                       if point_in_polygon(sample_point, scene.curves[b]))
    sub_surface = Subsurface(NON_ANNULAR, boundary, inside)
    objs = _cell_objects(scene, sub_surface)
    if len(objs) < 4:
        raise WrongKind(
            f"component is a sphere with {len(objs)} holes; "
            "projections need at least four")
    return sub_surface


def _containment(scene, Y):
    """For each boundary circle, the set of boundary circles containing it."""
    out = {}
    for c in Y.boundary:
        pt = scene.curves[c][0]
        out[c] = frozenset(b for b in Y.boundary if b != c
                           and point_in_polygon(pt, scene.curves[b]))
    return out


def _far_point(scene, salt=0):
    xs, ys = [], []
    for p in scene.punctures:
        xs.append(p[0])
        ys.append(p[1])
    for pts in scene.curves.values():
        xs.extend(p[0] for p in pts)
        ys.extend(p[1] for p in pts)
    return (max(xs) + Fraction(7, 3) + salt * Fraction(13, 11),
            max(ys) + Fraction(11, 7) + salt * Fraction(5, 17))


def _cell_holes(scene, Y):
    cont = _containment(scene, Y)
    return [c for c in Y.boundary
            if c not in Y.inside and cont[c] == Y.inside]


def _point_in_cell(scene, Y, pt):
    return all((b in Y.inside) == point_in_polygon(pt, scene.curves[b])
               for b in Y.boundary)


def _cell_objects(scene, Y):
    """Marked objects of the component: its own punctures, one per hole
    circle, and one for everything beyond the outer circle.

    Each object is (label, representative point); the representative lies
    strictly inside whatever the object collapses to.
    """
    objs = []
    for k, p in enumerate(scene.punctures, start=1):
        sig = frozenset(b for b in Y.boundary
                        if point_in_polygon(p, scene.curves[b]))
        if sig == Y.inside:
            objs.append((f"puncture-{k}", p))
    for c in _cell_holes(scene, Y):
        rep = None
        for p in scene.punctures:
            if point_in_polygon(p, scene.curves[c]):
                rep = p
                break
        if rep is None:
            raise NotSensible(f"hole circle {c} bounds a disc")
        objs.append((f"hole-{c}", rep))
    # everything on the far side of the outer circle (or, for the
    # outermost component, the puncture at infinity)
    objs.append(("outside", _far_point(scene)))
    return objs


# ---------------------------------------------------------------------------
# projected elements


@dataclass(frozen=True)
class ProjectedElement:
    """An arc or closed curve of a non-annular projection, or a lifted
    core-crossing arc of an annular one.

    Non-annular: `points` is the PL chain (closed for kind=CURVE) and
    `ends` names the boundary circles at the two arc endpoints.  Annular:
    `word` is the axis word of the lift and `offsets` = (w_top, w_bottom)
    rank its endpoints among the same curve's lift endpoints on the two
    window boundaries.
    """
    kind: str
    source: str
    points: tuple = ()
    ends: tuple = ()
    word: tuple = ()
    offsets: tuple = ()


def _midpoint(p, q):
    return ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)


def project_nonannular(scene, gamma, Y: Subsurface):
    """The arcs and closed curves of gamma clipped to the component."""
    if Y.kind != NON_ANNULAR:
        raise WrongKind("project_nonannular needs a non-annular subsurface")
    _check_min_against(scene, gamma, Y.boundary)
    events = []
    for b in Y.boundary:
        for pt, (ia, ta), _ in pair_crossings(scene, gamma, b):
            events.append((ia + ta, pt, b))
    if not events:
        if not _point_in_cell(scene, Y, scene.curves[gamma][0]):
            return ()
        objs = _cell_objects(scene, Y)
        n_in = sum(1 for _, rep in objs
                   if point_in_polygon(rep, scene.curves[gamma]))
        if n_in < 2 or len(objs) - n_in < 2:
            return ()  # inessential in the component or boundary-parallel
        return (ProjectedElement(CURVE, gamma,
                                 points=tuple(scene.curves[gamma])),)
    events.sort()
    pts = scene.curves[gamma]
    out = []
    for (u, pu, bu), (v, pv, bv) in zip(events, events[1:] + [events[0]]):
        chain = _sub_chain(pts, True, u, pu, v, pv)
        sample = _midpoint(chain[0], chain[1])
        if _point_in_cell(scene, Y, sample):
            out.append(ProjectedElement(ARC, gamma, points=tuple(chain),
                                        ends=(bu, bv)))
    return tuple(out)


def _sub_chain(pts, closed, u, pu, v, pv):
    """Chain from the point pu at param u to pv at param v (params are
    segment index + fraction; wrapping allowed when closed)."""
    n = len(pts) if closed else len(pts) - 1
    if not closed and v < u:
        raise ValueError("open chain params out of order")
    vv = v if v > u else v + n
    chain = [pu]
    i = int(u) + 1
    while i < vv or (i == vv and vv == int(vv)
                     and pts[int(i) % len(pts)] != pv):
        if i == vv:
            break
        chain.append(pts[i % len(pts)])
        i += 1
        if i > u + n + 1:
            raise GeneralPositionViolation("sub-chain walk did not close")
    if chain[-1] != pv:
        chain.append(pv)
    if len(chain) < 2:
        raise GeneralPositionViolation("degenerate sub-chain")
    return chain


# ---------------------------------------------------------------------------
# exact chain predicates


def _chain_segments(pts, closed):
    if closed:
        return [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]
    return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]


def _touch_points(p, q, r, s):
    from .geometry import on_segment
    out = []
    for x in (p, q):
        if on_segment(x, r, s):
            out.append(x)
    for x in (r, s):
        if on_segment(x, p, q):
            out.append(x)
    return out


def _chain_crossings(a_pts, a_closed, b_pts, b_closed, allow=()):
    """Proper crossings [(param_a, param_b, point)]; touches are fatal
    unless every touch point is listed in allow (arc endpoints resting on
    their circles)."""
    out = []
    allow = set(allow)
    for ia, (p, q) in enumerate(_chain_segments(a_pts, a_closed)):
        for ib, (r, s) in enumerate(_chain_segments(b_pts, b_closed)):
            res = seg_seg(p, q, r, s)
            if res[0] == DISJOINT:
                continue
            if res[0] == TOUCH:
                touches = _touch_points(p, q, r, s)
                if touches and all(t in allow for t in touches):
                    continue
                raise GeneralPositionViolation(
                    "chains touch without crossing")
            _, t, u, pt = res
            out.append((ia + t, ib + u, pt))
    return out


def _check_chain_simple(pts, closed):
    segs = _chain_segments(pts, closed)
    n = len(segs)
    for i in range(n):
        for j in range(i + 1, n):
            adjacent = (j == i + 1) or (closed and i == 0 and j == n - 1)
            res = seg_seg(*segs[i], *segs[j])
            if res[0] == DISJOINT:
                continue
            if adjacent and res[0] == TOUCH:
                shared = _touch_points(*segs[i], *segs[j])
                if all(x in (segs[i][0], segs[i][1], segs[j][0], segs[j][1])
                       for x in shared):
                    continue
            raise GeneralPositionViolation("chain is not embedded")


def _on_segment_param(pt, p, q):
    if cross(sub(q, p), sub(pt, p)) != 0:
        return None
    num = dot(sub(pt, p), sub(q, p))
    den = dot(sub(q, p), sub(q, p))
    if num < 0 or num > den:
        return None
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# the component subdivision (collapsed model)


class _CellGraph:
    """Planar subdivision of the sphere by two projected elements and the
    boundary circles they end on.

    Endpoint-free circles stay out of the graph; they are already counted
    as collapsed objects.  Faces are traced from the rotation system;
    each face records which chains its walk uses and how many objects lie
    inside it.
    """

    def __init__(self, scene, Y, a, b):
        self.scene = scene
        self.Y = Y
        self.a = a
        self.b = b
        circles = sorted({c for e in (a, b) for c in e.ends})
        chains = {"a": (list(a.points), a.kind == CURVE),
                  "b": (list(b.points), b.kind == CURVE)}
        for c in circles:
            chains[c] = (list(scene.curves[c]), True)
        self.chains = chains
        endpoints = set()
        for e in (a, b):
            if e.kind == ARC:
                endpoints.add(e.points[0])
                endpoints.add(e.points[-1])
        self.endpoints = endpoints
        self.crossings = _chain_crossings(a.points, a.kind == CURVE,
                                          b.points, b.kind == CURVE,
                                          allow=endpoints)
        self._build({pt for _, _, pt in self.crossings} | endpoints)

    def _build(self, node_pts):
        if not node_pts:
            raise GeneralPositionViolation("subdivision needs nodes")
        darts = {}
        self._opp = {}
        self._edge_chain = {}
        nid = 0
        for name, (pts, closed) in self.chains.items():
            events = []
            for i, (p, q) in enumerate(_chain_segments(pts, closed)):
                for node in node_pts:
                    t = _on_segment_param(node, p, q)
                    if t is None or t == 1:
                        continue
                    events.append((i + t, node))
            if not closed:
                last = len(pts) - 2
                if pts[-1] in node_pts:
                    events.append((last + 1, pts[-1]))
            events = sorted(set(events))
            if not events:
                continue
            pairs = list(zip(events, events[1:]))
            if closed:
                pairs.append((events[-1], events[0]))
            for (u, pu), (v, pv) in pairs:
                chain = _sub_chain(pts, closed, u, pu, v, pv)
                d, dr = nid, nid + 1
                nid += 2
                darts[d] = (chain[0], sub(chain[1], chain[0]))
                darts[dr] = (chain[-1], sub(chain[-2], chain[-1]))
                self._opp[d] = dr
                self._opp[dr] = d
                self._edge_chain[d] = (name, list(chain))
                self._edge_chain[dr] = (name, list(reversed(chain)))
        self._darts = darts
        by_node = {}
        for d, (tail, _) in darts.items():
            by_node.setdefault(tail, []).append(d)
        self._next_ccw = {}
        for node, ds in by_node.items():
            keys = {d: tuple(l1_unit(darts[d][1])) for d in ds}
            if len(set(keys.values())) != len(ds):
                raise GeneralPositionViolation(
                    f"tangent germs at node {node}")
            order = [tuple(v) for v in ccw_sorted(
                [darts[d][1] for d in ds])]
            unit_order = [tuple(l1_unit(v)) for v in order]
            ranked = sorted(ds, key=lambda d: unit_order.index(keys[d]))
            for i, d in enumerate(ranked):
                self._next_ccw[d] = ranked[(i + 1) % len(ranked)]
        self._trace_faces()

    def _trace_faces(self):
        faces = []
        seen = set()
        for d0 in sorted(self._darts):
            if d0 in seen:
                continue
            walk = []
            d = d0
            while True:
                walk.append(d)
                seen.add(d)
                d = self._next_ccw[self._opp[d]]
                if d == d0:
                    break
            faces.append(tuple(walk))
        v = len({tail for tail, _ in self._darts.values()})
        e = len(self._darts) // 2
        if v - e + len(faces) != 2:
            raise GeneralPositionViolation(
                "component subdivision is not a sphere map "
                f"(V={v} E={e} F={len(faces)})")
        self.faces = faces

    # -- queries ------------------------------------------------------------

    def face_chain_uses(self, walk):
        """How many walk darts each chain contributes."""
        uses = {}
        for d in walk:
            name = self._edge_chain[d][0]
            uses[name] = uses.get(name, 0) + 1
        return uses

    def _face_polygon(self, walk):
        out = []
        for d in walk:
            out.extend(self._edge_chain[d][1][:-1])
        return out

    def _face_is_outer(self, walk):
        """Whether the walk bounds the unbounded face: with this rotation
        convention faces are traced clockwise, so inner walks have
        negative signed area and only the outer walk is positive."""
        poly = self._face_polygon(walk)
        area2 = sum(cross(p, q) for p, q in _chain_segments(poly, True))
        return area2 > 0

    def point_in_face(self, walk, pt):
        """Even-odd parity of pt against the face walk (complemented for
        the unbounded face; doubled edges cancel mod 2)."""
        outer = self._face_is_outer(walk)
        poly = self._face_polygon(walk)
        for salt in range(1, 25):
            probe = _far_point(self.scene, salt)
            count = 0
            ok = True
            for p, q in _chain_segments(poly, True):
                if p == q:
                    continue
                res = seg_seg(pt, probe, p, q)
                if res[0] == TOUCH:
                    ok = False
                    break
                if res[0] == PROPER:
                    count += 1
            if ok:
                return (count % 2 == 1) != outer
        raise GeneralPositionViolation("no generic probe ray for face test")

    def face_objects(self, walk):
        """Interior marked objects of the face in the collapsed model.

        A circle on the face's own walk collapses to a vertex of the
        face, so its object sits on the boundary and is not interior.
        """
        adjacent = set(self.face_chain_uses(walk)) - {"a", "b"}
        count = 0
        for label, rep in _cell_objects(self.scene, self.Y):
            if label.startswith("hole-") and label[5:] in adjacent:
                continue
            if label == "outside" and adjacent & self.Y.inside:
                continue
            if self.point_in_face(walk, rep):
                count += 1
        return count

    def is_exempt(self, walk):
        """Faces bounded by a single circle alone lie beyond the component
        (inside a hole, or outside the outer circle)."""
        names = set(self.face_chain_uses(walk))
        return names.isdisjoint({"a", "b"})


# ---------------------------------------------------------------------------
# boundary-triangle reduction and the hugging move


def _element_param_of(element, target_param_other, crossings, which):
    for pa, pb, pt in crossings:
        if (pb if which == "a" else pa) == target_param_other:
            return (pa if which == "a" else pb), pt
    raise KeyError("crossing not found")


def _hug_past_end(scene, Y, mover, other, crossing, other_toward_start,
                  mover_remove_start):
    """mover with its strand through `crossing` rerouted alongside the
    tail of `other` and landed just past other's endpoint on its circle.

    other_toward_start picks which end of `other` the strand follows;
    mover_remove_start picks which side of the mover is discarded.  The
    construction is verified exactly (embedded, the crossing plus every
    crossing on the discarded tail gone, no boundary-circle crossings)
    and retried at halved corridor widths.
    """
    if mover.kind != ARC:
        raise WrongKind("hugging move needs an arc to reroute")
    pa, pb, x = crossing
    m_pts = list(mover.points)
    kept_end = mover.ends[0]
    if mover_remove_start:
        m_pts.reverse()
        pa = len(m_pts) - 1 - pa
        kept_end = mover.ends[1]
    o_pts = list(other.points)
    if other_toward_start:
        tail = list(reversed(
            _sub_chain(o_pts, False, 0, o_pts[0], pb, x)))
        end_pt = o_pts[0]
        circle = other.ends[0]
    else:
        tail = _sub_chain(o_pts, False, pb, x, len(o_pts) - 1, o_pts[-1])
        end_pt = o_pts[-1]
        circle = other.ends[1]
    i = int(pa)
    t = pa - i
    shrink = Fraction(3, 4)
    circ = scene.curves[circle]
    sc_par = None
    for ci, (p, q) in enumerate(_chain_segments(circ, True)):
        tt = _on_segment_param(end_pt, p, q)
        if tt is not None and tt < 1:
            sc_par = ci + tt
            break
    if sc_par is None:
        raise GeneralPositionViolation("endpoint is not on its circle")
    allow_old = set(m_pts) | set(o_pts)
    old = _chain_crossings(m_pts, False, o_pts, False, allow=allow_old)
    dropped = sum(1 for qa, _, _ in old if qa > pa)
    expect = len(old) - 1 - dropped
    eps = _start_offset(scene) / 16
    last = None
    for attempt in range(REPAIR_CAP):
        side = 1 if attempt % 2 == 0 else -1
        try:
            q0 = (m_pts[i][0] + t * shrink * (m_pts[i + 1][0] - m_pts[i][0]),
                  m_pts[i][1] + t * shrink * (m_pts[i + 1][1] - m_pts[i][1]))
            hug = [miter_point(p, di, do, side * eps)
                   for p, di, do in _station_chain([x] + tail[1:])][:-1]
            ci = int(sc_par)
            cdir = sub(circ[(ci + 1) % len(circ)], circ[ci])
            lu = l1_unit(cdir)
            # land on the circle next to the endpoint, on the hug's side
            # of the tail, so the strand swings off the end cleanly
            dt = sub(end_pt, tail[-2])
            ref = cross(dt, sub(hug[-1], tail[-2]))
            if ref == 0:
                raise GeneralPositionViolation("hug side is ambiguous")
            sgn = 1 if (cross(dt, lu) > 0) == (ref > 0) else -1
            land = (end_pt[0] + sgn * eps * lu[0],
                    end_pt[1] + sgn * eps * lu[1])
            new_pts = m_pts[:i + 1] + [q0] + hug + [land]
            allow = {new_pts[0], new_pts[-1], o_pts[0], o_pts[-1]}
            _check_chain_simple(new_pts, False)
            got = len(_chain_crossings(new_pts, False, o_pts, False,
                                       allow=allow))
            if got != expect:
                raise GeneralPositionViolation(
                    f"hug changed crossings {len(old)}->{got}, "
                    f"expected {expect}")
            for b in Y.boundary:
                if _chain_crossings(new_pts, False, scene.curves[b], True,
                                    allow=allow):
                    raise GeneralPositionViolation(
                        "hug crossed a boundary circle")
            if mover_remove_start:
                new_pts.reverse()
                new_ends = (circle, kept_end)
            else:
                new_ends = (kept_end, circle)
            return ProjectedElement(ARC, mover.source,
                                    points=tuple(new_pts), ends=new_ends)
        except (GeneralPositionViolation, ValueError) as exc:
            last = exc
            if attempt % 2 == 1:
                eps = eps / 2
    raise NonConvergence(f"hugging move failed at every offset: {last}")


def _find_boundary_triangle(graph):
    """A triangle face (one a-piece, one b-piece, one circle piece) with
    nothing inside: the configuration removed by sliding an endpoint."""
    for walk in graph.faces:
        if len(walk) != 3:
            continue
        uses = graph.face_chain_uses(walk)
        if uses.get("a") == 1 and uses.get("b") == 1 and len(uses) == 3:
            if graph.face_objects(walk) == 0:
                return walk
    return None


def _reduced_pair(scene, Y, a, b):
    """a, b with every empty boundary triangle between them removed.

    Empty bigons are rejected: elements clipped from curves in pairwise
    minimal position never have them, so one signals bad input.
    """
    for _ in range(REPAIR_CAP):
        if not _chain_crossings(a.points, a.kind == CURVE,
                                b.points, b.kind == CURVE,
                                allow=set(a.points) | set(b.points)):
            return a, b
        graph = _CellGraph(scene, Y, a, b)
        for walk in graph.faces:
            uses = graph.face_chain_uses(walk)
            if len(walk) == 2 and uses.get("a") == 1 and uses.get("b") == 1 \
                    and graph.face_objects(walk) == 0:
                raise NotSensible("elements cobound an empty bigon")
        walk = _find_boundary_triangle(graph)
        if walk is None:
            return a, b
        # identify the crossing and which element's strand ends in the face
        darts = {graph._edge_chain[d][0]: d for d in walk}
        a_chain = graph._edge_chain[darts["a"]][1]
        b_chain = graph._edge_chain[darts["b"]][1]
        xs = [pt for _, _, pt in graph.crossings
              if pt in a_chain and pt in b_chain]
        if not xs:
            raise GeneralPositionViolation("triangle face lost its corner")
        x = xs[0]
        crossing = next(c for c in graph.crossings if c[2] == x)
        # reroute a's strand past the b endpoint that sits in the triangle
        b_end_in_face = b_chain[0] if b_chain[0] in graph.endpoints \
            and b_chain[0] != x else b_chain[-1]
        a_end_in_face = a_chain[0] if a_chain[0] in graph.endpoints \
            and a_chain[0] != x else a_chain[-1]
        a = _hug_past_end(scene, Y, a, b, crossing,
                          other_toward_start=b.points[0] == b_end_in_face,
                          mover_remove_start=a.points[0] == a_end_in_face)
    raise NonConvergence("boundary-triangle reduction did not terminate")


# ---------------------------------------------------------------------------
# small distances in the component


@dataclass(frozen=True)
class SmallDistance:
    """Arc-and-curve graph distance, resolved up to the 3-threshold.

    value in {0, 1, 2, 3}; value 3 means the elements fill the component
    (true distance >= 3) and `upper` is a certified upper bound, or None
    when no explicit path could be built (closed elements).
    """
    value: int
    exact: bool
    upper: int | None


def _disjoint_isotopic(scene, Y, a, b):
    if a.kind != b.kind:
        return False
    if a.kind == CURVE:
        objs = _cell_objects(scene, Y)
        return all(point_in_polygon(rep, a.points)
                   == point_in_polygon(rep, b.points) for _, rep in objs)
    if sorted(a.ends) != sorted(b.ends):
        return False
    if set(a.ends).isdisjoint(set(b.ends)):
        return False
    graph = _CellGraph(scene, Y, a, b)
    for walk in graph.faces:
        uses = graph.face_chain_uses(walk)
        if uses.get("a") == 1 and uses.get("b") == 1 \
                and graph.face_objects(walk) == 0:
            return True
    return False


def _fills_component(scene, Y, a, b):
    """Whether a and b jointly cut the component into discs and
    once-marked discs.

    A face with two interior objects admits an essential curve around
    them; a face touching a boundary circle with any interior object
    admits an essential arc cutting it off the circle.  Either one is
    disjoint from a and b, so distance stays <= 2.
    """
    graph = _CellGraph(scene, Y, a, b)
    for walk in graph.faces:
        if graph.is_exempt(walk):
            continue
        objs = graph.face_objects(walk)
        touches_circle = bool(set(graph.face_chain_uses(walk))
                              - {"a", "b"})
        if objs > 1 or (objs >= 1 and touches_circle):
            return False
    return True


def _path_upper(scene, Y, a, b):
    """Certified upper bound for d(a, b) from an explicit path.

    Each step reroutes a's crossing nearest an end of b past that end;
    consecutive path elements admit disjoint representatives because the
    corridor beyond the rerouted crossing is free of the previous element,
    so the path realizes d <= (number of steps) + 1.
    """
    if a.kind != ARC or b.kind != ARC:
        return None  # no certified path for closed elements
    cur = a
    steps = 0
    while True:
        crossings = _chain_crossings(cur.points, False, b.points, False,
                                     allow=set(cur.points) | set(b.points))
        if not crossings:
            return steps + 1
        last = max(crossings, key=lambda c: c[1])
        cur = _hug_past_end(scene, Y, cur, b, last,
                            other_toward_start=False,
                            mover_remove_start=False)
        steps += 1
        if steps > len(crossings) + REPAIR_CAP:
            raise NonConvergence("path builder did not terminate")


def ac_distance_small(scene, Y: Subsurface, a: ProjectedElement,
                      b: ProjectedElement) -> SmallDistance:
    """Distance of two projected elements in the component's
    arc-and-curve graph, exactly below 3 and bracketed above."""
    if Y.kind != NON_ANNULAR:
        raise WrongKind("ac_distance_small needs a non-annular subsurface")
    if a.points == b.points:
        return SmallDistance(0, True, 0)
    a, b = _reduced_pair(scene, Y, a, b)
    crossings = _chain_crossings(a.points, a.kind == CURVE,
                                 b.points, b.kind == CURVE,
                                 allow=set(a.points) | set(b.points))
    if not crossings:
        if _disjoint_isotopic(scene, Y, a, b):
            return SmallDistance(0, True, 0)
        return SmallDistance(1, True, 1)
    if not _fills_component(scene, Y, a, b):
        return SmallDistance(2, True, 2)
    return SmallDistance(3, False, _path_upper(scene, Y, a, b))


# ---------------------------------------------------------------------------
# the annular window


@dataclass(frozen=True)
class AnnularCoverWindow:
    """Finite window of the annular cover of a core curve.

    Deck translates of lifts are scanned for k in [-width, width]; the
    window is too small whenever a linking survives at the edge.
    `ref_word` is a fixed transversal element whose axis ends anchor the
    endpoint-offset cut on the two window boundaries: the cut must not be
    deck-invariant, or twisting would never move the offsets.
    """
    core: str
    width: int
    core_word: tuple
    n_gen: int
    ref_word: tuple


def _transversal_word(scene, core, core_word):
    """A canonical element whose axis crosses the core's: the loop around
    the first puncture inside the core followed by the loop around the
    first one outside."""
    from .freegroup import axes_link
    n = len(scene.punctures)
    inside = [k for k, p in enumerate(scene.punctures, start=1)
              if point_in_polygon(p, scene.curves[core])]
    outside = [k for k in range(1, n + 1) if k not in inside]
    for i in inside:
        for j in outside:
            for cand in ((i, j), (j, i)):
                if axes_link(n, cand, core_word):
                    return cand
    raise NotSensible("no transversal element found for the core")


def annular_window(scene, core, width) -> AnnularCoverWindow:
    if width < 2:
        raise WindowTooSmall("window needs at least two copies")
    _check_essential(scene, core)
    a = based_word(scene, core)
    return AnnularCoverWindow(core, width, a, len(scene.punctures),
                              _transversal_word(scene, core, a))


def _same_axis(g, h):
    gp, gm = axis_ends(g)
    hp, hm = axis_ends(h)
    return (gp.diverge(hp) is None and gm.diverge(hm) is None) \
        or (gp.diverge(hm) is None and gm.diverge(hp) is None)


def _deck_equal(win, g, h):
    for k in range(-win.width, win.width + 1):
        if _same_axis(conjugate(power(win.core_word, k), g), h):
            return True
    return False


def _lift_crossings(win, g, h):
    """Crossings of two lift arcs in the window: the number of deck
    translates of one axis linking the other."""
    from .freegroup import axes_link
    a = win.core_word
    total = 0
    for k in range(-win.width, win.width + 1):
        if axes_link(win.n_gen, g, conjugate(power(a, k), h)):
            if abs(k) == win.width:
                raise WindowTooSmall(
                    f"linking persists at the window edge k={k}")
            total += 1
    return total


def _side_of_core(win, end):
    ap, am = axis_ends(win.core_word)
    return circular_order(win.n_gen, ap, end, am)


def _circular_rank(win, side_ends, own):
    """Rank of `own` among the ends on one side of the core axis, counted
    counterclockwise from the reference transversal's axis end on that side.

    The cut must not be invariant under the deck translation, otherwise the
    offsets could never detect relative twisting; the transversal end moves
    under the deck action while the core's fixed points do not.  Both sides
    are counted toward the core's attracting fixed point (counterclockwise
    on one boundary, clockwise on the other) so that a deck translation
    shifts the two ranks of a lift by the same amount and the offset
    difference is independent of the chosen lift representative."""
    rp, rm = axis_ends(win.ref_word)
    side = _side_of_core(win, own)
    cut = rp if _side_of_core(win, rp) == side else rm
    found = False
    rank = 0
    for e in side_ends:
        if e.diverge(own) is None:
            found = True
            continue
        if circular_order(win.n_gen, cut, e, own) * side > 0:
            rank += 1
    if not found:
        raise GeneralPositionViolation("end missing from its own family")
    return rank


def project_annular(scene, gamma, Y: Subsurface, win: AnnularCoverWindow):
    """Lifted core-crossing arcs of gamma with endpoint offsets."""
    if Y.kind != ANNULAR:
        raise WrongKind("project_annular needs an annular subsurface")
    if Y.core != win.core:
        raise WrongKind("window was cut along a different core")
    core = Y.core
    _check_min_against(scene, gamma, (core,))
    crossings = pair_crossings(scene, gamma, core)
    if not crossings:
        return ()
    g = based_word(scene, gamma)
    lifts = []
    for pt, (ig, tg), (ic, tc) in crossings:
        core_path = list(scene.curves[core][:ic + 1]) + [pt]
        gam_path = list(scene.curves[gamma][:ig + 1]) + [pt]
        t = concat(based_word_at(scene, core, core_path),
                   inverse(based_word_at(scene, gamma, gam_path)))
        lift = conjugate(t, g)
        if not lift:
            raise GeneralPositionViolation("trivial lift word")
        lifts.append(lift)
    distinct = []
    for lift in lifts:
        if not any(_deck_equal(win, lift, seen) for seen in distinct):
            distinct.append(lift)
    # endpoint offsets: rank each end among all deck translates of the
    # curve's own lift ends on its side of the core axis
    a = win.core_word
    family_top, family_bot = [], []
    for j, lift in enumerate(distinct):
        for k in range(-win.width, win.width + 1):
            ep, em = axis_ends(conjugate(power(a, k), lift))
            for e in (ep, em):
                if _side_of_core(win, e) > 0:
                    family_top.append(e)
                else:
                    family_bot.append(e)
    out = []
    for lift in distinct:
        ep, em = axis_ends(lift)
        top, bot = (ep, em) if _side_of_core(win, ep) > 0 else (em, ep)
        out.append(ProjectedElement(
            ANNULAR_ARC, gamma, word=lift,
            offsets=(_circular_rank(win, family_top, top),
                     _circular_rank(win, family_bot, bot))))
    return tuple(out)


def annular_distance(win: AnnularCoverWindow, a: ProjectedElement,
                     b: ProjectedElement) -> int:
    """0 for the same arc, 1 for disjoint arcs, else 1 + crossings."""
    if a.kind != ANNULAR_ARC or b.kind != ANNULAR_ARC:
        raise WrongKind("annular_distance needs lifted arcs")
    if _deck_equal(win, a.word, b.word):
        return 0
    n = _lift_crossings(win, a.word, b.word)
    return 1 if n == 0 else 1 + n


# ---------------------------------------------------------------------------
# projection distance


@dataclass(frozen=True)
class DYResult:
    """Projection distance; `exact` is False when some element pair fills
    a non-annular component and only the bracket [lower, upper] is known."""
    lower: int
    upper: int
    exact: bool


def _default_width(scene, Y, curve_ids):
    m = [len(pair_crossings(scene, c, Y.core)) for c in curve_ids]
    best = max((x * y for x in m for y in m), default=0)
    return max(best + 2, 2)


def d_Y(scene, A, B, Y: Subsurface, window=None) -> DYResult:
    """Diameter of the joint projection of the curve sets A and B."""
    A, B = _ids(A), _ids(B)
    ids = list(dict.fromkeys(A + B))
    if Y.kind == ANNULAR:
        win = window or annular_window(
            scene, Y.core, _default_width(scene, Y, ids))
        elements = []
        for c in ids:
            got = project_annular(scene, c, Y, win)
            if not got:
                raise NotSensible(f"curve {c} does not cut the subsurface")
            elements.extend(got)
        worst = 0
        for i, e1 in enumerate(elements):
            for e2 in elements[i + 1:]:
                worst = max(worst, annular_distance(win, e1, e2))
        return DYResult(worst, worst, True)
    elements = []
    for c in ids:
        got = project_nonannular(scene, c, Y)
        if not got:
            raise NotSensible(f"curve {c} does not cut the subsurface")
        elements.extend(got)
    lower, upper = 0, 0
    exact = True
    for i, e1 in enumerate(elements):
        for e2 in elements[i + 1:]:
            d = ac_distance_small(scene, Y, e1, e2)
            lower = max(lower, d.value)
            if upper is not None:
                upper = None if d.upper is None else max(upper, d.upper)
            exact = exact and d.exact
    return DYResult(lower, upper, exact)


def check_loop_projection_bound(scene, gamma, betas, Y: Subsurface) -> dict:
    """Measured projection distance of a loop against the beta reference,
    with the small-bound verdict (2 non-annular, 5 annular).  The alpha
    side of the loop condition is the boundary of the subsurface itself."""
    from .loops import is_loop
    betas = _ids(betas)
    alphas = (Y.core,) if Y.kind == ANNULAR else Y.boundary
    loop_ok = is_loop(scene, gamma, alphas, betas)
    res = d_Y(scene, (gamma,), betas, Y)
    bound = 5 if Y.kind == ANNULAR else 2
    return {
        "kind": Y.kind,
        "is_loop": loop_ok,
        "distance_lower": res.lower,
        "distance_upper": res.upper,
        "exact": res.exact,
        "bound": bound,
        "ok": bool(loop_ok and res.upper is not None and res.upper <= bound),
    }
