"""Build a combinatorial map from a PL scene.

Ingestion computes all pairwise crossings exactly, rejects any degeneracy
(tangency, triple point, endpoint contact, puncture on a curve), threads
darts along each curve, sorts them counterclockwise at each crossing, and
groups the face circuits into faces of the punctured sphere by exact ray
casting: every clockwise circuit is a hole whose leftmost vertex sees, along
a generic leftward ray, the circuit of the face that contains it.
"""

from __future__ import annotations

import math

from .errors import GeneralPositionViolation, InternalTopologyError
from .geometry import (DISJOINT, PROPER, RAY_HIT, RAY_NONE, TOUCH,
                       ccw_sorted, dot, generic_leftward_hit, on_segment,
                       orient, seg_seg, sub, walk_area2)
from .scene import PLScene
from .system import CurveSystem, Face, canonical_circuit

_OUTER = -1  # face-class token for the unbounded region


def _float_bbox(a, b, pad):
    try:
        xs = (float(a[0]), float(b[0]))
        ys = (float(a[1]), float(b[1]))
    except OverflowError:
        return (-math.inf, -math.inf, math.inf, math.inf)
    w = max(abs(x) for x in xs + ys) * 1e-9 + pad
    return (min(xs) - w, min(ys) - w, max(xs) + w, max(ys) + w)


def _check_simple(scene: PLScene):
    for cid, pts in scene.curves.items():
        n = len(pts)
        if n < 3:
            raise GeneralPositionViolation(f"curve {cid} has fewer than 3 vertices")
        if len(set(pts)) != n:
            raise GeneralPositionViolation(f"curve {cid} repeats a vertex")
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            if orient(a, b, c) == 0 and dot(sub(b, a), sub(c, b)) < 0:
                raise GeneralPositionViolation(f"curve {cid} doubles back at {b}")


def _pair_crossings(scene: PLScene):
    """All proper crossings, rejecting every degeneracy on the way.

    Returns {(cid, seg_index, t) : point} keyed per curve passage, where two
    passages through the same point share that point object.
    """
    segs = scene.all_segments()
    boxes = [_float_bbox(a, b, 0.0) for (_, _, a, b) in segs]
    order = sorted(range(len(segs)), key=lambda i: boxes[i][0])
    passages = {}
    points = {}
    for oi, i in enumerate(order):
        ci, si, a1, b1 = segs[i]
        bi = boxes[i]
        ni = len(scene.curves[ci])
        for j in order[oi + 1:]:
            bj = boxes[j]
            if bj[0] > bi[2]:
                break
            if bj[2] < bi[0] or bj[3] < bi[1] or bi[3] < bj[1]:
                continue
            cj, sj, a2, b2 = segs[j]
            if ci == cj:
                gap = (si - sj) % ni
                if gap in (1, ni - 1):
                    continue  # adjacent segments share one endpoint
                res = seg_seg(a1, b1, a2, b2)
                if res[0] != DISJOINT:
                    raise GeneralPositionViolation(
                        f"curve {ci} intersects itself near segments {si},{sj}")
                continue
            res = seg_seg(a1, b1, a2, b2)
            if res[0] == DISJOINT:
                continue
            if res[0] == TOUCH:
                raise GeneralPositionViolation(
                    f"curves {ci} and {cj} touch without crossing")
            _, t, u, pt = res
            if pt in points:
                raise GeneralPositionViolation(f"triple point at {pt}")
            points[pt] = True
            passages[(ci, si, t)] = pt
            passages[(cj, sj, u)] = pt
    for k, (x, y) in enumerate(scene.punctures, 1):
        for (_, _, a, b) in segs:
            if on_segment((x, y), a, b):
                raise GeneralPositionViolation(f"puncture {k} lies on a curve")
    if len(set(scene.punctures)) != len(scene.punctures):
        raise GeneralPositionViolation("coincident punctures")
    return passages


class Arrangement:
    """Geometric side-car of an ingested scene."""

    def __init__(self):
        self.chains = {}        # forward dart -> point tuple, tail to head
        self.node_point = {}    # vertex rep dart -> point
        self.subsegments = []   # (a, b, forward dart)

    def dart_chain(self, system, d):
        """Point chain of any dart, tail to head."""
        if d in self.chains:
            return self.chains[d]
        rev = self.chains[system.opposite[d]]
        return tuple(reversed(rev))


def ingest_planar(scene: PLScene) -> CurveSystem:
    """Turn a scene into a validated genus-zero curve system."""
    scene = scene.cleaned()
    if not scene.curves:
        raise GeneralPositionViolation("scene has no curves")
    _check_simple(scene)
    passages = _pair_crossings(scene)

    # nodes along each curve, in traversal order
    per_curve = {}
    for cid in sorted(scene.curves):
        keys = sorted((s, t) for (c, s, t) in passages if c == cid)
        if keys:
            per_curve[cid] = [(s, t, passages[(cid, s, t)]) for (s, t) in keys]
        else:
            per_curve[cid] = [(0, None, tuple(scene.curves[cid][0]))]

    arr = Arrangement()
    opposite, curve_of = {}, {}
    dart_dir = {}   # outgoing direction at the dart's tail
    node_out = {}   # node point -> darts based there
    next_dart = 0
    for cid in sorted(scene.curves):
        pts = scene.curves[cid]
        n = len(pts)
        nodes = per_curve[cid]
        k = len(nodes)
        for j in range(k):
            s0, t0, p0 = nodes[j]
            s1, t1, p1 = nodes[(j + 1) % k]
            if t0 is None:
                # marker on a crossing-free curve: one edge around the loop
                chain = [pts[i % n] for i in range(n + 1)]
            else:
                # polyline vertices passed between the two crossings
                if j + 1 < k:
                    m = s1 - s0
                elif s1 < s0 or (s1 == s0 and t1 <= t0):
                    m = s1 - s0 + n
                else:
                    m = s1 - s0
                chain = [p0] + [pts[(s0 + i) % n] for i in range(1, m + 1)] + [p1]
            f, b = next_dart, next_dart + 1
            next_dart += 2
            opposite[f] = b
            opposite[b] = f
            curve_of[f] = cid
            curve_of[b] = cid
            arr.chains[f] = tuple(chain)
            dart_dir[f] = sub(chain[1], chain[0])
            dart_dir[b] = sub(chain[-2], chain[-1])
            node_out.setdefault(p0, []).append(f)
            node_out.setdefault(p1, []).append(b)
    return _assemble(scene, arr, opposite, curve_of, dart_dir, node_out)


def _assemble(scene, arr, opposite, curve_of, dart_dir, node_out):
    rotation = {}
    for pt, darts in node_out.items():
        if len(darts) not in (2, 4):
            raise InternalTopologyError(f"node of degree {len(darts)} at {pt}")
        try:
            order = ccw_sorted([dart_dir[d] for d in darts])
        except ValueError as exc:
            raise GeneralPositionViolation(f"tangency at {pt}") from exc
        by_dir = {}
        for d in darts:
            if dart_dir[d] in by_dir:
                raise GeneralPositionViolation(f"tangency at {pt}")
            by_dir[dart_dir[d]] = d
        cyc = [by_dir[v] for v in order]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            rotation[a] = b
    stub = CurveSystem(scene.surface, opposite, rotation, curve_of, ())
    for pt, darts in node_out.items():
        arr.node_point[stub.vertex_of(darts[0])] = pt
    for d, chain in arr.chains.items():
        for i in range(len(chain) - 1):
            arr.subsegments.append((chain[i], chain[i + 1], d))

    faces = _group_faces(scene, stub, arr)
    out = CurveSystem(scene.surface, opposite, rotation, curve_of, faces,
                      realization=scene, geometry=arr)
    return out.validate()


def _circuit_walk(stub, arr, circ):
    pts = []
    for d in circ:
        ch = arr.dart_chain(stub, d)
        pts.extend(ch[:-1])
    return pts


def _hit_dart(stub, arr, origin, res):
    """Dart of the hit subsegment whose left side contains the ray origin."""
    a, b, fwd = arr.subsegments[res[2]]
    side = orient(a, b, origin)
    if side == 0:
        raise InternalTopologyError("ray hit with origin on the hit line")
    return fwd if side > 0 else stub.opposite[fwd]


def _group_faces(scene, stub, arr):
    circs = stub.circuits()
    walks = [_circuit_walk(stub, arr, c) for c in circs]
    areas = [walk_area2(w) for w in walks]
    circuit_index = {}
    for i, c in enumerate(circs):
        for d in c:
            circuit_index[d] = i

    parent = list(range(len(circs) + 1))
    outer = len(circs)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    segs = [(a, b) for (a, b, _) in arr.subsegments]
    for i, c in enumerate(circs):
        if areas[i] == 0:
            raise InternalTopologyError("circuit with zero area")
        if areas[i] > 0:
            continue
        pivot = min(walks[i])
        res = generic_leftward_hit(pivot, segs, downward_only=True)
        if res[0] == RAY_NONE:
            union(i, outer)
        else:
            d = _hit_dart(stub, arr, pivot, res)
            union(i, circuit_index[d])

    punct_class = {}
    for k, p in enumerate(scene.punctures, 1):
        res = generic_leftward_hit(p, segs)
        if res[0] == RAY_NONE:
            punct_class[k] = outer
        else:
            d = _hit_dart(stub, arr, p, res)
            punct_class[k] = find(circuit_index[d])
    punct_class[scene.infinity] = outer

    groups = {}
    for i in range(len(circs)):
        groups.setdefault(find(i), []).append(circs[i])
    if find(outer) not in groups:
        raise InternalTopologyError("unbounded face has no circuit")
    faces = []
    for cls, cc in sorted(groups.items()):
        pos = sum(1 for c in cc if areas[circs.index(c)] > 0)
        if cls == find(outer):
            if pos != 0:
                raise InternalTopologyError("ccw circuit joined the outer face")
        elif pos != 1:
            raise InternalTopologyError("face without exactly one ccw circuit")
        punct = frozenset(k for k, v in punct_class.items() if find(v) == cls)
        faces.append(Face(tuple(sorted(canonical_circuit(c) for c in cc)),
                          punct, 0))
    return tuple(faces)
