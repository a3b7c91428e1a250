"""Minimal position: bigon detection and removal on the combinatorial map.

A bigon face has circuit [A, B] with A, B darts of two distinct curves and
distinct corner vertices.  Smoothing dissolves both corners, splicing each
curve through; the face across the isotoped strand absorbs the bigon face
and the two opposite corner faces merge into the vacated strip.  All face
bookkeeping is exact (Euler counts are asserted by validation).

Bigons whose disc still carries transversal strands are emptied first by
triangle flips (the slide of one side of an empty triangle face across the
opposite vertex), then smoothed.  Pairwise intersection numbers avoid the
flips entirely: in the two-curve subsystem obtained by deleting every other
curve, an innermost bigon is always a face.
"""

from __future__ import annotations

from .errors import (InternalTopologyError, NonConvergence,
                     NotInMinimalPosition, NotSensible)
from .system import CurveSystem, delete_curves, _merge_faces

REPAIR_CAP = 32


# ------------------------------------------------------------- bigon search


def bigon_faces(system: CurveSystem, cid1=None, cid2=None):
    """Bigon faces as (A, B) circuit dart pairs, sorted by smallest dart."""
    out = []
    for f in system.faces:
        if f.punctures or f.genus != 0 or len(f.circuits) != 1:
            continue
        circ = f.circuits[0]
        if len(circ) != 2:
            continue
        a, b = circ
        ca, cb = system.curve_of[a], system.curve_of[b]
        if ca == cb:
            continue
        if cid1 is not None and {ca, cb} != {cid1, cid2}:
            continue
        if system.vertex_of(a) == system.vertex_of(b):
            raise InternalTopologyError("bigon with a single corner")
        out.append((a, b))
    out.sort()
    return out


def find_bigon(system: CurveSystem, cid1=None, cid2=None):
    """Smallest bigon face, or None."""
    found = bigon_faces(system, cid1, cid2)
    return found[0] if found else None


# ---------------------------------------------------------------- smoothing


def smooth_bigon(system: CurveSystem, a_dart, b_dart) -> CurveSystem:
    """Remove the bigon face with circuit [a_dart, b_dart]."""
    sigma = system.rotation
    alpha = system.opposite
    A, B = a_dart, b_dart
    v = system.vertex_of(alpha[A])   # head of A
    w = system.vertex_of(A)          # tail of A
    if system.vertex_of(B) != v or system.vertex_of(alpha[B]) != w:
        raise InternalTopologyError("darts do not bound a bigon")
    if v == w:
        raise InternalTopologyError("bigon with a single corner")
    ca, cb = system.curve_of[A], system.curve_of[B]

    # rotation at v: B -> alpha(A) -> b_out -> a_rest_v -> B
    if sigma[B] != alpha[A]:
        raise InternalTopologyError("corner rotation mismatch at bigon head")
    b_out = sigma[alpha[A]]
    a_rest_v = sigma[b_out]
    # rotation at w: A -> alpha(B) -> a_rest_w -> b_rest_w -> A
    if sigma[A] != alpha[B]:
        raise InternalTopologyError("corner rotation mismatch at bigon tail")
    a_rest_w = sigma[alpha[B]]
    b_rest_w = sigma[a_rest_w]
    if sigma[a_rest_v] != B or sigma[b_rest_w] != A:
        raise InternalTopologyError("corner is not a crossing")

    face_f = system.face_index(A)
    face_p = system.face_index(alpha[A])
    face_m = system.face_index(alpha[B])
    face_ov = system.face_index(b_out)
    face_ow = system.face_index(a_rest_w)
    if system.face_index(B) != face_f:
        raise InternalTopologyError("bigon sides bound different faces")

    # pass-through pairing at the two dissolved corners
    partner = {alpha[A]: a_rest_v, a_rest_v: alpha[A],
               B: b_out, b_out: B,
               A: a_rest_w, a_rest_w: A,
               alpha[B]: b_rest_w, b_rest_w: alpha[B]}
    dead = set(partner)

    new_opp, new_rot, new_curve = {}, {}, {}
    marker_votes = {}
    next_id = max(system.darts) + 1
    marked = set()
    for cid, fwd_vote, bwd_vote in ((ca, face_m, face_ov),
                                    (cb, face_f, face_ov)):
        darts = system.curve_darts(cid)
        if all(d in dead for d in darts):
            # the curve only met the bigon corners; it survives as a loop
            n1, n2 = next_id, next_id + 1
            next_id += 2
            new_opp[n1], new_opp[n2] = n2, n1
            new_rot[n1], new_rot[n2] = n2, n1
            new_curve[n1] = new_curve[n2] = cid
            marker_votes[n1] = fwd_vote
            marker_votes[n2] = bwd_vote
            marked.add(cid)

    def walk(x):
        e = alpha[x]
        while e in dead:
            e = alpha[partner[e]]
        return e

    for d in system.darts:
        if d in dead:
            continue
        if system.curve_of[d] in marked:
            raise InternalTopologyError("marked curve kept a dart")
        new_opp[d] = walk(d)
        r = sigma[d]
        while r in dead:
            r = sigma[r]
        new_rot[d] = r
        new_curve[d] = system.curve_of[d]

    stub = CurveSystem(system.surface, new_opp, new_rot, new_curve, ())
    votes = {d: system.face_index(d) for d in new_opp if d not in marker_votes}
    faces = _merge_faces(system, [(face_f, face_p), (face_ov, face_ow)],
                         [], stub.circuits(), votes, marker_votes)
    out = CurveSystem(system.surface, new_opp, new_rot, new_curve, faces)
    return out.validate()


# ------------------------------------------------------------ triangle flip


def triangle_faces(system: CurveSystem):
    """Empty disc faces with circuit [t1, t2, t3] on three distinct curves."""
    out = []
    for f in system.faces:
        if f.punctures or f.genus != 0 or len(f.circuits) != 1:
            continue
        circ = f.circuits[0]
        if len(circ) != 3:
            continue
        if len({system.curve_of[d] for d in circ}) != 3:
            continue
        out.append(circ)
    return out


def flip_triangle(system: CurveSystem, circ) -> CurveSystem:
    """Slide one side of the empty triangle across the opposite vertex.

    circ = (t1, t2, t3) is the triangle circuit; the side carrying t1 (and
    the crossing at its tail and head) moves across the crossing shared by
    t2 and t3.  Rotations are unchanged; only the six outer edge pairings
    around the triangle are re-spliced, and every face keeps its punctures
    and Euler characteristic.
    """
    t1, t2, t3 = circ
    alpha = dict(system.opposite)
    sigma = system.rotation

    def other(d):
        return sigma[sigma[d]]

    pairs = []
    for t in (t1, t2, t3):
        back = other(t)            # same curve, at tail of t, pointing away
        on = other(alpha[t])       # same curve, at head of t, pointing away
        if alpha[back] == on:
            continue               # the curve has only these two crossings
        pairs.append((alpha[back], on, back, alpha[on]))
    for p_in, on, back, q_in in pairs:
        alpha[p_in], alpha[on] = on, p_in
        alpha[back], alpha[q_in] = q_in, back

    stub = CurveSystem(system.surface, alpha, sigma, system.curve_of, ())
    new_circs = stub.circuits()
    old_by_circ = {}
    for i, f in enumerate(system.faces):
        for c in f.circuits:
            old_by_circ[c] = i

    changed_darts = {t1, t2, t3} | {x for pr in pairs for x in pr} \
        | {system.opposite[t1], system.opposite[t2], system.opposite[t3]}
    tri_vertices = {system.vertex_of(d) for d in (t1, t2, t3)} \
        | {system.vertex_of(system.opposite[d]) for d in (t1, t2, t3)}

    assignment = {}
    unmatched = []
    for c in new_circs:
        if c in old_by_circ:
            # untouched circuit (or the triangle itself, whose three middle
            # edges and corner rotations are all preserved by the flip)
            assignment[c] = old_by_circ[c]
            continue
        anchors = set()
        for d in c:
            if d in changed_darts or system.vertex_of(d) in tri_vertices:
                continue
            anchors.add(system.face_index(d))
        if len(anchors) > 1:
            raise InternalTopologyError(
                f"triangle flip: ambiguous face anchor {sorted(anchors)}")
        if anchors:
            assignment[c] = anchors.pop()
        else:
            unmatched.append(c)
    # faces hugging the triangle keep at least one boundary dart; match each
    # leftover circuit to the unique unclaimed old face sharing a dart
    taken = set(assignment.values())
    for c in unmatched:
        cands = set()
        for d in c:
            fi = system.face_index(d)
            if fi not in taken:
                cands.add(fi)
        if len(cands) != 1:
            raise InternalTopologyError(
                f"triangle flip: unresolved face match {sorted(cands)}")
        assignment[c] = cands.pop()
        taken.add(assignment[c])

    groups = {}
    for c, fi in assignment.items():
        groups.setdefault(fi, []).append(c)
    if sorted(groups) != list(range(len(system.faces))):
        raise InternalTopologyError("triangle flip lost a face")
    from .system import Face
    faces = []
    for fi, cc in sorted(groups.items()):
        old = system.faces[fi]
        if len(cc) != len(old.circuits):
            raise InternalTopologyError("triangle flip changed a face degree")
        faces.append(Face(tuple(sorted(cc)), old.punctures, old.genus))
    out = CurveSystem(system.surface, alpha, sigma, system.curve_of, faces)
    return out.validate()


# ------------------------------------------------------- region flood fills


def flood_region(system: CurveSystem, walk):
    """Faces on the left of the closed dart walk, or None if the flood leaks.

    walk is a dart sequence forming a closed boundary; flooding starts from
    the faces on the left of its darts and never crosses a walk edge.
    """
    walk_edges = set()
    for d in walk:
        walk_edges.add(d)
        walk_edges.add(system.opposite[d])
    seed = {system.face_index(d) for d in walk}
    outside = {system.face_index(system.opposite[d]) for d in walk}
    region = set(seed)
    frontier = list(seed)
    while frontier:
        fi = frontier.pop()
        for circ in system.faces[fi].circuits:
            for d in circ:
                if d in walk_edges:
                    continue
                nf = system.face_index(system.opposite[d])
                if nf not in region:
                    region.add(nf)
                    frontier.append(nf)
    if region & outside:
        return None
    return region


def region_stats(system: CurveSystem, walk, region):
    """(euler, punctures, interior crossing count) of the closed region."""
    walk_edges = set()
    for d in walk:
        walk_edges.add(min(d, system.opposite[d]))
    edges = set(walk_edges)
    for fi in region:
        for circ in system.faces[fi].circuits:
            for d in circ:
                e = min(d, system.opposite[d])
                inner = system.face_index(d) in region \
                    and system.face_index(system.opposite[d]) in region
                if inner:
                    edges.add(e)
    vertices = set()
    for e in edges:
        vertices.add(system.vertex_of(e))
        vertices.add(system.vertex_of(system.opposite[e]))
    walk_vertices = {system.vertex_of(d) for d in walk}
    chi = len(vertices) - len(edges) + sum(system.faces[fi].euler
                                           for fi in region)
    punct = set()
    for fi in region:
        punct |= set(system.faces[fi].punctures)
    interior = sum(1 for vv in vertices - walk_vertices
                   if len(system.vertex_orbit(vv)) == 4)
    return chi, punct, interior


# --------------------------------------------------- pairwise bigon machinery


def _arc_along(system, d0, stop_curve):
    """Darts along curve(d0) starting with d0 until the next stop_curve
    crossing; returns (darts, end vertex) or None if it wraps first."""
    darts = [d0]
    cur = d0
    start = system.vertex_of(d0)
    while True:
        head = system.vertex_of(system.opposite[cur])
        orb = system.vertex_orbit(system.opposite[cur])
        if len(orb) == 4 and \
                any(system.curve_of[x] == stop_curve for x in orb):
            return darts, head
        cur = system.next_along(cur)
        if cur == d0:
            return None
        darts.append(cur)


def pairwise_bigon_walks(system: CurveSystem, ca, cb):
    """Closed walks (a-arc then b-arc) bounding candidate bigons on their
    left; all four corner combinations at each adjacent crossing pair."""
    walks = []
    for d0 in system.darts:
        if system.curve_of[d0] != ca:
            continue
        orb0 = system.vertex_orbit(d0)
        if len(orb0) != 4 or not any(system.curve_of[x] == cb for x in orb0):
            continue
        got = _arc_along(system, d0, cb)
        if got is None:
            continue
        a_arc, v_end = got
        # b darts leaving the end vertex
        for db in system.vertex_orbit(v_end):
            if system.curve_of[db] != cb:
                continue
            got_b = _arc_along(system, db, ca)
            if got_b is None:
                continue
            b_arc, back = got_b
            if back != system.vertex_of(d0):
                continue
            walks.append(tuple(a_arc) + tuple(b_arc))
    return walks


def find_pairwise_bigons(system: CurveSystem, ca, cb):
    """(interior_crossings, region_size, walk, region) for each true bigon."""
    out = []
    seen = set()
    for walk in pairwise_bigon_walks(system, ca, cb):
        region = flood_region(system, walk)
        if region is None:
            continue
        key = frozenset(region)
        if key in seen:
            continue
        chi, punct, interior = region_stats(system, walk, region)
        if chi != 1 or punct:
            continue
        seen.add(key)
        out.append((interior, len(region), walk, region))
    out.sort(key=lambda t: (t[0], t[1], t[2]))
    return out


def clear_and_smooth(system: CurveSystem, ca, cb) -> CurveSystem:
    """Remove one innermost pairwise bigon of (ca, cb), flipping strands out
    of the disc first when necessary."""
    for _ in range(REPAIR_CAP * 8):
        cands = find_pairwise_bigons(system, ca, cb)
        if not cands:
            return system
        _, _, walk, region = cands[0]
        if len(walk) == 2:
            return smooth_bigon(system, walk[0], walk[1])
        flipped = _flip_out_of(system, walk, region)
        if flipped is None:
            raise NonConvergence("no triangle flip available to empty a bigon")
        system = flipped
    raise NonConvergence("bigon emptying did not converge")


def _flip_out_of(system, walk, region):
    """Flip one empty triangle so that a crossing leaves the bigon disc.

    Either a strand cutting a corner slides across the corner crossing, or
    a boundary arc slides across the nearest inner crossing.  Both strictly
    lower the number of crossings in the closed region other than the two
    corners.
    """
    walk_edges = set()
    for d in walk:
        walk_edges.add(d)
        walk_edges.add(system.opposite[d])
    corner_vertices = set()
    for i, d in enumerate(walk):
        nxt = walk[(i + 1) % len(walk)]
        if system.curve_of[d] != system.curve_of[nxt]:
            corner_vertices.add(system.vertex_of(nxt))

    def on_walk(d):
        return d in walk_edges or system.opposite[d] in walk_edges

    best = None
    for circ in triangle_faces(system):
        if system.face_index(circ[0]) not in region:
            continue
        for k in range(3):
            t1, t2, t3 = circ[k], circ[(k + 1) % 3], circ[(k + 2) % 3]
            apex = system.vertex_of(t3)
            if apex in corner_vertices:
                # corner cut by a strand: slide the strand outwards
                ok = on_walk(t2) and on_walk(t3)
            else:
                # slide a boundary arc across the nearest inner crossing
                ok = on_walk(t1)
            if ok:
                cand = (t1, t2, t3)
                if best is None or cand < best:
                    best = cand
    if best is None:
        return None
    return flip_triangle(system, best)


# ------------------------------------------------------------ reduction api


def reduce_to_minimal_position(system: CurveSystem) -> CurveSystem:
    """Smooth bigons until no pair of curves shares one."""
    guard = len(system.darts) * 4 + REPAIR_CAP
    for _ in range(guard):
        big = find_bigon(system)
        if big is not None:
            system = smooth_bigon(system, *big)
            continue
        pair = _violating_pair(system)
        if pair is None:
            return system
        system = clear_and_smooth(system, *pair)
    raise NonConvergence("bigon removal did not converge")


def crossing_count(system: CurveSystem, ca, cb) -> int:
    return len(system.crossing_vertices(ca, cb))


def _violating_pair(system):
    cids = system.curve_ids
    for i, ca in enumerate(cids):
        for cb in cids[i + 1:]:
            now = crossing_count(system, ca, cb)
            if now == 0:
                continue
            if geometric_intersection_number(system, ca, cb) < now:
                return (ca, cb)
    return None


def is_minimal(system: CurveSystem) -> bool:
    if find_bigon(system) is not None:
        return False
    return _violating_pair(system) is None


def geometric_intersection_number(system: CurveSystem, ca, cb) -> int:
    """i(ca, cb) computed on the two-curve subsystem.

    In a two-curve system an innermost bigon is always an empty face, so
    plain bigon-face smoothing reaches minimal position.
    """
    if ca == cb:
        return 0
    sub = system
    if len(system.curve_ids) > 2:
        sub = delete_curves(system, [c for c in system.curve_ids
                                     if c not in (ca, cb)])
    guard = len(sub.darts) + 4
    for _ in range(guard):
        big = find_bigon(sub, ca, cb)
        if big is None:
            return crossing_count(sub, ca, cb)
        sub = smooth_bigon(sub, *big)
    raise NonConvergence("pair reduction did not converge")


# ------------------------------------------------------------ curve classes


def _pair_reduced(system, ca, cb):
    sub = system
    if len(system.curve_ids) > 2:
        sub = delete_curves(system, [c for c in system.curve_ids
                                     if c not in (ca, cb)])
    for _ in range(len(sub.darts) + 4):
        big = find_bigon(sub, ca, cb)
        if big is None:
            return sub
        sub = smooth_bigon(sub, *big)
    raise NonConvergence("pair reduction did not converge")


def is_essential(system: CurveSystem, cid) -> bool:
    sub = system
    if len(system.curve_ids) > 1:
        sub = delete_curves(system, [c for c in system.curve_ids if c != cid])
    for f in sub.faces:
        if f.genus == 0 and len(f.circuits) == 1 and len(f.punctures) <= 1:
            return False
    return True


def are_isotopic(system: CurveSystem, c1, c2) -> bool:
    if c1 == c2:
        return True
    sub = _pair_reduced(system, c1, c2)
    if crossing_count(sub, c1, c2):
        return False
    for f in sub.faces:
        if f.genus == 0 and len(f.circuits) == 2 and not f.punctures:
            curves = {sub.curve_of[c[0]] for c in f.circuits}
            if curves == {c1, c2}:
                return True
    return False


def fills(system: CurveSystem, a, b) -> bool:
    """True when every complementary region of the union of the two curve
    collections is a disc or a once-punctured disc.

    a and b may be curve ids or iterables of curve ids (multicurves); the
    union must already be in minimal position.
    """
    ids_a = [a] if isinstance(a, str) else list(a)
    ids_b = [b] if isinstance(b, str) else list(b)
    keep = ids_a + ids_b
    sub = system
    if set(system.curve_ids) - set(keep):
        sub = delete_curves(system, [c for c in system.curve_ids
                                     if c not in keep])
    for ca in ids_a:
        for cb in ids_b:
            if geometric_intersection_number(sub, ca, cb) \
                    != crossing_count(sub, ca, cb):
                raise NotInMinimalPosition(f"{ca} and {cb} share a bigon")
    return all(f.genus == 0 and len(f.circuits) == 1 and len(f.punctures) <= 1
               for f in sub.faces)


def sign_sequence(system: CurveSystem, cg, ct,
                  reverse_g=False, reverse_t=False):
    """Signs of the crossings of curve cg with ct, ordered along cg.

    Signs are computed for the canonical orientations; reversing either
    curve flips every sign, so the same/opposite classification of any
    pair of entries does not depend on the orientation choice.
    """
    flip = -1 if reverse_g != reverse_t else 1
    out = []
    for d in system.forward_darts(cg):
        v = system.vertex_of(d)
        orb = system.vertex_orbit(d)
        if len(orb) == 4 and any(system.curve_of[x] == ct for x in orb) \
                and ct != cg:
            out.append((v, flip * system.crossing_sign(orb, cg, ct)))
    if reverse_g:
        out.reverse()
    return out


def ensure_sensible(system: CurveSystem):
    for c in system.curve_ids:
        if not is_essential(system, c):
            raise NotSensible(f"curve {c} bounds a disc or once-punctured disc")
    cids = system.curve_ids
    for i, c1 in enumerate(cids):
        for c2 in cids[i + 1:]:
            if are_isotopic(system, c1, c2):
                raise NotSensible(f"curves {c1} and {c2} are isotopic")
    return system
