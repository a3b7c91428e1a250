"""Curve-graph distances at desk scale, with certificates.

Small distances between essential simple closed curves are decided exactly
(0 isotopic, 1 disjoint, 2 crossing but not filling, lower bound 3 for
filling pairs) and every answer carries a checkable witness: an explicit
path of consecutive disjoint curves for the upper bound and a logical tag
(equal / distinct / intersecting / filling) for the lower bound.  On top of
that sit the loop quasipath construction between a boundary component and a
filling partner, the integer constants derived from a hyperbolicity
parameter, and the bounded-geodesic-image experiment harness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import _circuit_walk, ingest_planar
from .errors import (CurveloomError, GeneralPositionViolation, NonConvergence,
                     NotFilling, NotSensible, UncertifiedDistance,
                     VertexMissesSubsurface)
from .geometry import miter_point, sub
from .loops import is_loop, surger_to_loop
from .minpos import are_isotopic, fills
from .plmoves import (REPAIR_CAP, _start_offset, pair_crossings,
                      point_in_polygon, reduce_pair_geometric)
from .projections import (ANNULAR, _check_essential, _sub_chain, d_Y)
from .scene import PLScene

EQUAL = "Equal"
DISTINCT = "Distinct"
INTERSECTING = "Intersecting"
FILLING = "Filling"


# --------------------------------------------------------------- constants

@dataclass(frozen=True)
class ConstantSet:
    """Integer constants derived from a hyperbolicity parameter delta.

    proj_bound is the small projection bound for loops (2 non-annular,
    5 annular); stay_radius is the largest integer n with
    n <= delta * ceil(log2(26 n)) (0 when delta is 0); track_radius is
    stay_radius + 2; image_bound = 2 * track_radius + proj_bound; and
    segment_bound = 4 * delta + 2 * image_bound + 4.
    """
    delta: int
    annular: bool
    proj_bound: int
    stay_radius: int
    track_radius: int
    image_bound: int
    segment_bound: int


def _ceil_log2(y):
    """Exact ceil(log2(y)) for a positive integer y."""
    return (y - 1).bit_length()


def compute_constants(delta, annular=False) -> ConstantSet:
    if delta < 0:
        raise ValueError("delta must be a non-negative integer")
    b = 5 if annular else 2
    stay = 0
    if delta > 0:
        # n <= delta * ceil(log2(26 n)) forces, with k the ceiling,
        # 2^(k-1) < 26 n <= 26 delta k; so k is bounded and the scan
        # range n <= delta * kmax is exhaustive
        kmax = 1
        while 2 ** kmax <= 26 * delta * (kmax + 1):
            kmax += 1
        for n in range(1, delta * kmax + 1):
            if n <= delta * _ceil_log2(26 * n):
                stay = n
    track = stay + 2
    image = 2 * track + b
    return ConstantSet(int(delta), bool(annular), b, stay, track, image,
                       4 * delta + 2 * image + 4)


# ------------------------------------------------------------- certificates

@dataclass(frozen=True)
class DistanceCertificate:
    """Curve-graph distance between two curves with checkable witnesses.

    `path` is the upper witness: curve ids from a to b, consecutive curves
    disjoint, living in `scene` (empty when no path was found).  `witness`
    is the lower tag: Equal (0), Distinct (>=1), Intersecting (>=2),
    Filling (>=3).
    """
    a: str
    b: str
    lower: int
    upper: int | None
    witness: str
    path: tuple
    scene: PLScene

    @property
    def exact(self) -> bool:
        return self.upper == self.lower

    @property
    def value(self):
        return self.lower if self.exact else None


def _inum(scene, a, b):
    """Topological intersection number of two curves of the scene."""
    if a == b:
        return 0
    red = reduce_pair_geometric(scene, a, b)
    return len(pair_crossings(red, a, b))


def _safe_inum(scene, a, b):
    """Like _inum, but None when the pair cannot be reduced."""
    try:
        return _inum(scene, a, b)
    except CurveloomError:
        return None


def _isotopic(scene, a, b):
    if a == b:
        return True
    red = reduce_pair_geometric(scene, a, b)
    return are_isotopic(ingest_planar(red), a, b)


def verify_certificate(cert: DistanceCertificate) -> bool:
    """Re-check both witnesses; raises UncertifiedDistance on any defect."""
    if cert.path:
        if (cert.path[0], cert.path[-1]) != (cert.a, cert.b):
            raise UncertifiedDistance("witness path endpoints differ")
        if cert.upper != len(cert.path) - 1:
            raise UncertifiedDistance("witness path length differs from hi")
        for x, y in zip(cert.path, cert.path[1:]):
            if _inum(cert.scene, x, y) != 0:
                raise UncertifiedDistance(
                    f"witness path steps {x},{y} intersect")
        for x in cert.path[1:-1]:
            _check_essential(cert.scene, x)
    elif cert.upper is not None:
        raise UncertifiedDistance("finite upper bound without a path")
    lo = cert.lower
    if cert.witness == EQUAL:
        ok = lo == 0 and _isotopic(cert.scene, cert.a, cert.b)
    elif cert.witness == DISTINCT:
        ok = lo == 1 and not _isotopic(cert.scene, cert.a, cert.b)
    elif cert.witness == INTERSECTING:
        ok = lo == 2 and _inum(cert.scene, cert.a, cert.b) > 0
    elif cert.witness == FILLING:
        red = reduce_pair_geometric(cert.scene, cert.a, cert.b)
        ok = lo == 3 and fills(ingest_planar(red), cert.a, cert.b)
    else:
        raise UncertifiedDistance(f"unknown lower witness {cert.witness!r}")
    if not ok:
        raise UncertifiedDistance("lower witness does not force the bound")
    return True


# ------------------------------------------------- candidate curve builders

def _offset_walk(pts, eps, side):
    """Miter offset of a closed walk, to its left (+1) or right (-1)."""
    n = len(pts)
    return [miter_point(pts[i], sub(pts[i], pts[i - 1]),
                        sub(pts[(i + 1) % n], pts[i]), side * eps)
            for i in range(n)]


def _polygon_essential(scene, pts):
    inside = sum(1 for p in scene.punctures if point_in_polygon(p, pts))
    outside = len(scene.punctures) - inside + 1
    return inside >= 2 and outside >= 2


def _try_candidate(scene, pts, cid, against):
    """Scene extended with an embedded essential copy of pts under cid,
    verified disjoint in general position from every curve in `against`;
    None when the configuration fails."""
    from .arrangement import _check_simple, _pair_crossings
    cand = scene.copy()
    cand.curves[cid] = pts
    try:
        _check_simple(cand)
        _pair_crossings(cand)
        if any(_inum(cand, cid, o) for o in against):
            return None
        if not _polygon_essential(cand, pts):
            return None
    except (GeneralPositionViolation, ValueError, NonConvergence):
        return None
    return cand


def _face_walks(red, a, b):
    sys = ingest_planar(red)
    arr = sys.geometry
    walks = []
    for f in sys.faces:
        for circ in f.circuits:
            walks.append(_circuit_walk(sys, arr, circ))
    return walks


def _middle_curve(red, a, b, cid):
    """Essential curve disjoint from both a and b: a pushed-in boundary
    circuit of a complementary face of their union."""
    eps0 = _start_offset(red) / 4
    for walk in _face_walks(red, a, b):
        if len(walk) < 3:
            continue
        eps = eps0
        for _ in range(REPAIR_CAP):
            try:
                pts = _offset_walk(walk, eps, 1)
            except ValueError:
                break
            cand = _try_candidate(red, pts, cid, (a, b))
            if cand is not None:
                return cand
            eps = eps / 2
    raise NonConvergence("no essential face push exists for the pair")


def _band_walks(red, a, b):
    """Closed walks of neighborhoods of a with one arc of b attached:
    one arc of a between two consecutive (along b) crossings, closed up
    by the connecting b-arc, both ways around a."""
    crossings = pair_crossings(red, a, b)
    if not crossings:
        return []
    a_pts, b_pts = red.curves[a], red.curves[b]
    evs = sorted(((ib + tb, ia + ta, pt)
                  for pt, (ia, ta), (ib, tb) in crossings))
    walks = []
    for idx in range(len(evs)):
        pb_u, pa_u, pt_u = evs[idx]
        pb_v, pa_v, pt_v = evs[(idx + 1) % len(evs)]
        try:
            e = _sub_chain(b_pts, True, pb_u, pt_u, pb_v, pt_v)
            fwd = _sub_chain(a_pts, True, pa_v, pt_v, pa_u, pt_u)
            bwd = _sub_chain(a_pts, True, pa_u, pt_u, pa_v, pt_v)
        except (GeneralPositionViolation, ValueError):
            continue
        walks.append(list(e[:-1]) + list(fwd[:-1]))
        walks.append(list(e[:-1]) + list(reversed(bwd))[:-1])
    return walks


def _round_walks(red):
    """Rectangles around consecutive runs of collinear punctures; the
    standard representatives of curve classes when the punctures sit on a
    line, used to enrich the bridge search.  Empty otherwise."""
    ps = red.punctures
    if len(ps) < 3 or len({p[1] for p in ps}) != 1 \
            or len({p[0] for p in ps}) != len(ps):
        return []
    xs = sorted(Fraction(p[0]) for p in ps)
    y = Fraction(ps[0][1])
    span = xs[-1] - xs[0]
    walks = []
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            if i == 0 and j == len(xs) - 1:
                continue  # encircles every finite puncture: inessential
            gap_l = xs[i] - xs[i - 1] if i else span
            gap_r = xs[j + 1] - xs[j] if j + 1 < len(xs) else span
            for k in (2, 3, 5, 7):
                m = min(gap_l, gap_r) * Fraction(k, k * 2 + 1) / 2
                h = span * Fraction(k, 13)
                walks.append([(xs[i] - m, y - h), (xs[j] + m, y - h),
                              (xs[j] + m, y + h), (xs[i] - m, y + h)])
    return walks


def _disjoint_candidates(red, base, other, prefix, limit=12):
    """Essential curves disjoint from `base`, as point lists: rectangles
    around puncture runs plus pushed-off band sums of `base` with arcs of
    `other` (surgery curves)."""
    eps0 = _start_offset(red) / 4
    out = []
    for pts in _round_walks(red):
        if len(out) >= limit:
            return out
        if _try_candidate(red, pts, prefix, (base,)) is not None:
            out.append(pts)
    for j, walk in enumerate(_band_walks(red, base, other)):
        if len(walk) < 3:
            continue
        for side in (1, -1):
            eps = eps0 * Fraction(97 + j, 97)
            for _ in range(REPAIR_CAP):
                try:
                    pts = _offset_walk(walk, eps, side)
                except ValueError:
                    break
                cand = _try_candidate(red, pts, prefix, (base,))
                if cand is not None:
                    out.append(pts)
                    break
                eps = eps / 2
        if len(out) >= limit:
            break
    return out


def _assemble(red, extra):
    """Scene with the extra curves added, or None if not in general
    position together."""
    from .arrangement import _check_simple, _pair_crossings
    cand = red.copy()
    cand.curves.update(extra)
    try:
        _check_simple(cand)
        _pair_crossings(cand)
    except (GeneralPositionViolation, ValueError):
        return None
    return cand


def _fresh(scene, stem):
    k = 0
    while f"{stem}{k}" in scene.curves:
        k += 1
    return f"{stem}{k}"


# ---------------------------------------------------------------- distances

def ds_small(scene, a, b) -> DistanceCertificate:
    """Exact curve-graph distance for values 0..2; bracket [3, hi] for
    filling pairs, upgraded to exact 3 when the bounded search finds a
    two-step bridge."""
    _check_essential(scene, a)
    _check_essential(scene, b)
    if a == b:
        return DistanceCertificate(a, b, 0, 0, EQUAL, (a,), scene)
    red = reduce_pair_geometric(scene, a, b)
    sys = ingest_planar(red)
    if not pair_crossings(red, a, b):
        if are_isotopic(sys, a, b):
            return DistanceCertificate(a, b, 0, 0, EQUAL, (a,), red)
        return DistanceCertificate(a, b, 1, 1, DISTINCT, (a, b), red)
    if not fills(sys, a, b):
        mid = _fresh(red, "mid")
        with_mid = _middle_curve(red, a, b, mid)
        return DistanceCertificate(a, b, 2, 2, INTERSECTING,
                                   (a, mid, b), with_mid)
    # filling: search for a path a - c - d - b over surgery candidates
    cands_a = _disjoint_candidates(red, a, b, _fresh(red, "c"))
    cands_b = _disjoint_candidates(red, b, a, _fresh(red, "d"))
    cid, did = _fresh(red, "c"), _fresh(red, "d")
    for ca in cands_a:
        for cb in cands_b:
            full = _assemble(red, {cid: ca, did: cb})
            if full is None or _safe_inum(full, cid, did) != 0:
                continue
            return DistanceCertificate(a, b, 3, 3, FILLING,
                                       (a, cid, did, b), full)
    # no two-step bridge: try a three-step one through a face push
    for ca in cands_a:
        for cb in cands_b:
            full = _assemble(red, {cid: ca, did: cb})
            if full is None or not _safe_inum(full, cid, did):
                continue
            pair = reduce_pair_geometric(full, cid, did)
            if fills(ingest_planar(pair), cid, did):
                continue
            mid = _fresh(full, "mid")
            try:
                with_mid = _middle_curve(pair, cid, did, mid)
            except NonConvergence:
                continue
            full = _assemble(full, {mid: with_mid.curves[mid]})
            if full is None:
                continue
            return DistanceCertificate(a, b, 3, 4, FILLING,
                                       (a, cid, mid, did, b), full)
    return DistanceCertificate(a, b, 3, None, FILLING, (), red)


# ---------------------------------------------------------------- quasipath

@dataclass(frozen=True)
class QuasiPath:
    """Curve path whose interior vertices are loops for the references.

    `steps` holds consecutive intersection numbers (each <= 4); `log`
    records the repair iterations (shortcuts found and re-spliced)."""
    vertices: tuple
    steps: tuple
    scene: PLScene
    log: tuple


def _settle(scene, cid, refs, rounds=16):
    """Move cid into simultaneous minimal position with every reference."""
    for _ in range(rounds):
        changed = False
        for r in refs:
            if r == cid:
                continue
            red = reduce_pair_geometric(scene, cid, r)
            if red.curves[cid] != scene.curves[cid]:
                scene = scene.copy()
                scene.curves[cid] = red.curves[cid]
                changed = True
        if not changed:
            return scene
    raise NonConvergence(f"{cid} never settled against {refs}")


def _splice_scene(scene, donor, ids):
    """Scene with the named donor curves copied in under fresh ids."""
    new = {}
    cand = scene
    for x in ids:
        nid = _fresh(cand, "q")
        got = _assemble(cand, {nid: donor.curves[x]})
        if got is None:
            raise NonConvergence("spliced path curve breaks general position")
        cand = got
        new[x] = nid
    return cand, new


def build_loop_quasipath(scene, alpha_prime, alphas, beta,
                         seed=None, cap=32) -> QuasiPath:
    """Path alpha_prime = g0, ..., gn = beta whose interior vertices are
    (alpha, beta)-loops and whose consecutive intersection numbers are at
    most 4.  Starts from a certified geodesic (or a supplied seed path),
    surgers every interior vertex, then repeatedly splices in any certified
    shortcut and re-surgers until stable or the iteration cap trips."""
    alphas = (alphas,) if isinstance(alphas, str) else tuple(alphas)
    if alpha_prime not in alphas:
        raise NotSensible("alpha_prime must be a component of alpha")
    red = reduce_pair_geometric(scene, alpha_prime, beta)
    if not fills(ingest_planar(red), alpha_prime, beta):
        raise NotFilling("alpha_prime and beta do not fill the surface")
    work = scene.copy()
    if seed is None:
        cert = ds_small(scene, alpha_prime, beta)
        if not cert.exact:
            raise UncertifiedDistance(
                "no certified geodesic between the endpoints")
        work, renames = _splice_scene(work, cert.scene, cert.path[1:-1])
        verts = [alpha_prime] + [renames[x] for x in cert.path[1:-1]] + [beta]
    else:
        verts = list(seed)
        if verts[0] != alpha_prime or verts[-1] != beta:
            raise NotSensible("seed path endpoints differ")
    log = []
    for it in range(cap):
        # surger every interior vertex into a loop
        for k in range(1, len(verts) - 1):
            v = verts[k]
            work = _settle(work, v, alphas + (beta,))
            if not is_loop(work, v, alphas, (beta,)):
                work = surger_to_loop(work, v, alphas, (beta,))
        shortcut = None
        for i in range(len(verts)):
            for j in range(len(verts) - 1, i + 1, -1):
                try:
                    cert = ds_small(work, verts[i], verts[j])
                except CurveloomError:
                    continue
                if cert.exact and cert.upper < j - i:
                    shortcut = (i, j, cert)
                    break
            if shortcut:
                break
        if shortcut is None:
            steps = tuple(_inum(work, x, y)
                          for x, y in zip(verts, verts[1:]))
            if any(s > 4 for s in steps):
                raise NonConvergence(
                    f"consecutive intersection numbers {steps} exceed 4")
            return QuasiPath(tuple(verts), steps, work, tuple(log))
        i, j, cert = shortcut
        work, renames = _splice_scene(work, cert.scene, cert.path[1:-1])
        verts[i + 1:j] = [renames[x] for x in cert.path[1:-1]]
        log.append(f"iteration {it}: spliced d={cert.upper} shortcut "
                   f"between positions {i} and {j}")
    raise NonConvergence("quasipath repair loop hit the iteration cap")


# ------------------------------------------------------------- experiments

def _certify_geodesic(scene, path):
    """Every pair of path curves at exact distance |i - j|."""
    n = len(path) - 1
    if n > 4:
        raise UncertifiedDistance(
            "desk-scale certification covers paths of length at most 4")
    for i in range(len(path)):
        for j in range(i + 1, len(path)):
            cert = ds_small(scene, path[i], path[j])
            if not cert.exact or cert.value != j - i:
                raise UncertifiedDistance(
                    f"d({path[i]}, {path[j]}) is not exactly {j - i}")


def _cuts(scene, v, Y, window):
    try:
        d_Y(scene, (v,), (v,), Y, window=window)
        return True
    except NotSensible:
        return False


def check_bg(scene, alpha, path, Y, delta=17, window=None) -> dict:
    """Projections of the far geodesic vertices to a subsurface whose
    boundary is the first vertex: measured d_Y(g_i, beta) for i >= 2,
    checked against the image bound D."""
    path = tuple(path)
    if len(path) < 4:
        raise UncertifiedDistance("the check needs a geodesic of length >= 3")
    boundary = (Y.core,) if Y.kind == ANNULAR else tuple(Y.boundary)
    if alpha != path[0] or alpha not in boundary:
        raise NotSensible("alpha must be the first vertex and bound Y")
    _certify_geodesic(scene, path)
    cs = compute_constants(delta, Y.kind == ANNULAR)
    beta = path[-1]
    rows = []
    for i in range(2, len(path)):
        v = path[i]
        if v in boundary or not _cuts(scene, v, Y, window):
            rows.append({"i": i, "vertex": v, "skipped": True})
            continue
        res = d_Y(scene, (v,), (beta,), Y, window=window)
        rows.append({"i": i, "vertex": v, "skipped": False,
                     "lower": res.lower, "upper": res.upper,
                     "pass": res.upper is not None
                     and res.upper <= cs.image_bound})
    measured = [r for r in rows if not r["skipped"]]
    return {"D": cs.image_bound, "delta": delta, "rows": rows,
            "max_observed": max((r["lower"] for r in measured), default=0),
            "ok": all(r["pass"] for r in measured)}


def bgit_experiment(scene, Y, path, delta=17, window=None) -> dict:
    """Projection diameter of a certified geodesic to a subsurface every
    vertex cuts, checked against the segment bound M."""
    path = tuple(path)
    boundary = (Y.core,) if Y.kind == ANNULAR else tuple(Y.boundary)
    for v in path:
        if v in boundary or not _cuts(scene, v, Y, window):
            raise VertexMissesSubsurface(
                f"vertex {v} does not cut the subsurface")
    _certify_geodesic(scene, path)
    cs = compute_constants(delta, Y.kind == ANNULAR)
    res = d_Y(scene, path, path, Y, window=window)
    return {"M": cs.segment_bound, "delta": delta,
            "diameter_lower": res.lower, "diameter_upper": res.upper,
            "exact": res.exact,
            "pass": res.upper is not None and res.upper <= cs.segment_bound}
