"""Curve systems as half-edge combinatorial maps.

A system is a set of simple closed curves on a punctured surface, recorded
by its 4-valent intersection graph: darts (half-edges), the opposite
involution, the counterclockwise rotation at each vertex, a curve label per
dart, and an explicit face list.  Faces carry their boundary circuits, the
punctures they contain, and their genus, so Euler counts work for
disconnected systems and non-disc complementary regions.

Vertices of degree 4 are transverse crossings of two distinct curves
(labels alternate in the rotation); vertices of degree 2 are markers kept
so a crossing-free curve still has an edge to hang darts on.

Face circuits follow the convention that the face lies to the LEFT of each
of its darts; the circuit successor of d is rotation[opposite[d]].
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError, InternalTopologyError
from .surface import SurfaceSpec


def canonical_circuit(circ):
    """Rotate a dart cycle so it starts at its minimal dart."""
    i = circ.index(min(circ))
    return tuple(circ[i:]) + tuple(circ[:i])


@dataclass(frozen=True)
class Face:
    """A complementary region: boundary circuits, punctures inside, genus."""

    circuits: tuple          # tuple of canonical dart cycles
    punctures: frozenset
    genus: int = 0

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - len(self.circuits)

    def key(self):
        return (tuple(sorted(self.circuits)), tuple(sorted(self.punctures)),
                self.genus)


class CurveSystem:
    """Immutable half-edge map with labelled curves and explicit faces."""

    def __init__(self, surface: SurfaceSpec, opposite: dict, rotation: dict,
                 curve_of: dict, faces, realization=None, geometry=None):
        self.surface = surface
        self.opposite = dict(opposite)
        self.rotation = dict(rotation)
        self.curve_of = dict(curve_of)
        self.faces = tuple(faces)
        # optional PL data: realization is a PLScene, geometry maps each dart
        # to its point chain from tail vertex to head vertex
        self.realization = realization
        self.geometry = geometry
        self._cache = {}

    # ---------------------------------------------------------------- basic

    @property
    def darts(self):
        if "darts" not in self._cache:
            self._cache["darts"] = tuple(sorted(self.opposite))
        return self._cache["darts"]

    @property
    def curve_ids(self):
        if "cids" not in self._cache:
            self._cache["cids"] = tuple(sorted(set(self.curve_of.values())))
        return self._cache["cids"]

    def curve_darts(self, cid):
        return [d for d in self.darts if self.curve_of[d] == cid]

    # -------------------------------------------------------------- vertices

    def _vertex_data(self):
        if "vertices" not in self._cache:
            seen = set()
            orbits = []
            rep = {}
            for d in self.darts:
                if d in seen:
                    continue
                orbit = [d]
                seen.add(d)
                cur = self.rotation[d]
                while cur != d:
                    orbit.append(cur)
                    seen.add(cur)
                    cur = self.rotation[cur]
                r = min(orbit)
                i = orbit.index(r)
                orbit = orbit[i:] + orbit[:i]
                orbits.append(tuple(orbit))
                for x in orbit:
                    rep[x] = r
            orbits.sort()
            by_rep = {orb[0]: orb for orb in orbits}
            self._cache["vertices"] = (tuple(orbits), rep, by_rep)
        return self._cache["vertices"]

    @property
    def vertices(self):
        """Rotation orbits, each starting at its minimal dart."""
        return self._vertex_data()[0]

    def vertex_of(self, d):
        return self._vertex_data()[1][d]

    def vertex_orbit(self, d):
        return self._vertex_data()[2][self.vertex_of(d)]

    def degree(self, d):
        return len(self.vertex_orbit(d))

    def crossing_vertices(self, cid1=None, cid2=None):
        """Degree-4 vertices; optionally only those of a given curve pair."""
        out = []
        for orb in self.vertices:
            if len(orb) != 4:
                continue
            labels = {self.curve_of[x] for x in orb}
            if cid1 is not None and cid1 not in labels:
                continue
            if cid2 is not None and cid2 not in labels:
                continue
            out.append(orb)
        return out

    # ------------------------------------------------------------- traversal

    def next_along(self, d):
        """Continuation of the curve traversal past the head vertex of d."""
        e = self.opposite[d]
        deg = self.degree(e)
        out = e
        for _ in range(deg // 2):
            out = self.rotation[out]
        if self.curve_of[out] != self.curve_of[d]:
            raise InternalTopologyError("curve continuation left its curve")
        return out

    def curve_cycle(self, d0):
        """Darts met travelling along the curve starting with dart d0."""
        cyc = [d0]
        cur = self.next_along(d0)
        while cur != d0:
            cyc.append(cur)
            cur = self.next_along(cur)
        return cyc

    def forward_darts(self, cid):
        """Canonical orientation of a curve: the cycle through its min dart."""
        key = ("fwd", cid)
        if key not in self._cache:
            d0 = min(d for d in self.darts if self.curve_of[d] == cid)
            self._cache[key] = tuple(self.curve_cycle(d0))
        return self._cache[key]

    # ----------------------------------------------------------------- faces

    @property
    def rotation_inv(self):
        if "rot_inv" not in self._cache:
            self._cache["rot_inv"] = {b: a for a, b in self.rotation.items()}
        return self._cache["rot_inv"]

    def circuit_next(self, d):
        """Successor along the face circuit on the LEFT of d.

        With sigma counterclockwise the left-face walk turns maximally
        clockwise at each vertex: successor = sigma^{-1}(opposite(d)).
        """
        return self.rotation_inv[self.opposite[d]]

    def circuits(self):
        """Face circuits recomputed from opposite and rotation."""
        if "circuits" not in self._cache:
            seen = set()
            out = []
            for d in self.darts:
                if d in seen:
                    continue
                circ = [d]
                seen.add(d)
                cur = self.circuit_next(d)
                while cur != d:
                    circ.append(cur)
                    seen.add(cur)
                    cur = self.circuit_next(cur)
                out.append(canonical_circuit(circ))
            out.sort()
            self._cache["circuits"] = tuple(out)
        return self._cache["circuits"]

    def face_index(self, d):
        """Index into self.faces of the face on the left of dart d."""
        if "face_of" not in self._cache:
            m = {}
            for i, f in enumerate(self.faces):
                for circ in f.circuits:
                    for x in circ:
                        m[x] = i
            self._cache["face_of"] = m
        return self._cache["face_of"][d]

    def face_of(self, d) -> Face:
        return self.faces[self.face_index(d)]

    def puncture_face(self):
        """puncture id -> face index."""
        out = {}
        for i, f in enumerate(self.faces):
            for p in f.punctures:
                out[p] = i
        return out

    # ----------------------------------------------------------------- signs

    def crossing_sign(self, vertex_orbit, cid_gamma, cid_beta):
        """Sign of the crossing w.r.t. the canonical curve orientations.

        +1 when (gamma_out, beta_out) is a positively oriented frame.
        """
        fg = set(self.forward_darts(cid_gamma))
        fb = set(self.forward_darts(cid_beta))
        g_out = [x for x in vertex_orbit if x in fg]
        b_out = [x for x in vertex_orbit if x in fb]
        if len(g_out) != 1 or len(b_out) != 1:
            raise InternalTopologyError("bad crossing orbit for sign")
        nxt = self.rotation[g_out[0]]
        if nxt == b_out[0]:
            return 1
        if self.rotation[nxt] == b_out[0] or self.curve_of[nxt] != cid_beta:
            raise InternalTopologyError("rotation does not alternate at crossing")
        return -1

    # ------------------------------------------------------------ validation

    def validate(self):
        darts = set(self.darts)
        for d in darts:
            e = self.opposite.get(d)
            if e is None or e == d or self.opposite.get(e) != d:
                raise InternalTopologyError(f"opposite not an involution at {d}")
            if self.curve_of[e] != self.curve_of[d]:
                raise InternalTopologyError(f"edge {d} changes curve")
        if set(self.rotation) != darts or set(self.rotation.values()) != darts:
            raise InternalTopologyError("rotation is not a permutation of darts")
        if set(self.curve_of) != darts:
            raise InternalTopologyError("curve labels missing")
        for orb in self.vertices:
            if len(orb) == 2:
                if self.curve_of[orb[0]] != self.curve_of[orb[1]]:
                    raise InternalTopologyError("marker vertex joins two curves")
            elif len(orb) == 4:
                labels = [self.curve_of[x] for x in orb]
                if labels[0] != labels[2] or labels[1] != labels[3] \
                        or labels[0] == labels[1]:
                    raise InternalTopologyError(
                        f"crossing labels do not alternate: {labels}")
            else:
                raise InternalTopologyError(f"vertex of degree {len(orb)}")
        for cid in self.curve_ids:
            cd = set(self.curve_darts(cid))
            fwd = set(self.forward_darts(cid))
            bwd = {self.opposite[d] for d in fwd}
            if fwd | bwd != cd or fwd & bwd:
                raise InternalTopologyError(f"curve {cid} is not a single circle")
        circs = set(self.circuits())
        listed = [c for f in self.faces for c in f.circuits]
        if len(listed) != len(set(listed)) or set(listed) != circs:
            raise InternalTopologyError("face circuits do not partition the map")
        for f in self.faces:
            if f.genus < 0:
                raise InternalTopologyError("negative face genus")
        punct = sorted(p for f in self.faces for p in f.punctures)
        if len(punct) != len(set(punct)):
            raise InternalTopologyError("puncture assigned to two faces")
        expect = list(range(1, self.surface.punctures + 1))
        if punct != expect:
            raise InternalTopologyError(
                f"puncture set {punct} != {expect}")
        v = len(self.vertices)
        e = len(darts) // 2
        chi = sum(f.euler for f in self.faces)
        if v - e + chi != 2 - 2 * self.surface.genus:
            raise InternalTopologyError(
                f"Euler count failed: {v} - {e} + {chi} != "
                f"{2 - 2 * self.surface.genus}")
        return self

    # -------------------------------------------------------------- equality

    def map_key(self):
        rot = tuple(sorted(self.rotation.items()))
        opp = tuple(sorted(self.opposite.items()))
        lab = tuple(sorted(self.curve_of.items()))
        fac = tuple(sorted(f.key() for f in self.faces))
        return (self.surface, opp, rot, lab, fac)

    # ------------------------------------------------------------- text form

    def to_text(self) -> str:
        lines = [f"surface {self.surface.genus} {self.surface.punctures}"]
        for d in self.darts:
            lines.append(f"dart {d} opp {self.opposite[d]} curve {self.curve_of[d]}")
        for orb in self.vertices:
            lines.append("vertex " + " ".join(str(x) for x in orb))
        for f in sorted(self.faces, key=Face.key):
            ps = " ".join(str(p) for p in sorted(f.punctures)) or "-"
            cs = " ".join("[" + " ".join(str(x) for x in c) + "]"
                          for c in sorted(f.circuits))
            lines.append(f"face genus {f.genus} punctures {ps} circuits {cs}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "CurveSystem":
        surface = None
        opposite, rotation, curve_of = {}, {}, {}
        faces = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            try:
                if toks[0] == "surface":
                    surface = SurfaceSpec(int(toks[1]), int(toks[2]))
                elif toks[0] == "dart":
                    d, e = int(toks[1]), int(toks[3])
                    if toks[2] != "opp" or toks[4] != "curve":
                        raise ValueError
                    opposite[d] = e
                    curve_of[d] = toks[5]
                elif toks[0] == "vertex":
                    orb = [int(x) for x in toks[1:]]
                    for a, b in zip(orb, orb[1:] + orb[:1]):
                        rotation[a] = b
                elif toks[0] == "face":
                    if toks[1] != "genus" or toks[3] != "punctures":
                        raise ValueError
                    g = int(toks[2])
                    i = toks.index("circuits")
                    ps = frozenset(int(x) for x in toks[4:i] if x != "-")
                    rest = " ".join(toks[i + 1:])
                    circuits = []
                    for chunk in rest.split("]"):
                        chunk = chunk.strip().lstrip("[").strip()
                        if chunk:
                            circuits.append(canonical_circuit(
                                tuple(int(x) for x in chunk.split())))
                    faces.append(Face(tuple(sorted(circuits)), ps, g))
                else:
                    raise ValueError
            except (ValueError, IndexError) as exc:
                raise ConfigError(f"map file line {lineno}: {raw!r}") from exc
        if surface is None:
            raise ConfigError("map file missing surface line")
        sys_ = CurveSystem(surface, opposite, rotation, curve_of, faces)
        try:
            sys_.validate()
        except InternalTopologyError as exc:
            raise ConfigError(f"inconsistent map file: {exc}") from exc
        return sys_


# ---------------------------------------------------------------- references


@dataclass(frozen=True)
class CurveRef:
    system: CurveSystem
    cid: str

    def __post_init__(self):
        if self.cid not in self.system.curve_ids:
            raise ConfigError(f"no curve {self.cid!r} in system")


@dataclass(frozen=True)
class MulticurveRef:
    system: CurveSystem
    cids: tuple

    def __post_init__(self):
        for c in self.cids:
            if c not in self.system.curve_ids:
                raise ConfigError(f"no curve {c!r} in system")


# ----------------------------------------------------- curve deletion


def _merge_faces(system, edge_unions, removed_vertices, new_circuits,
                 vote_darts, extra_votes=None):
    """Shared face bookkeeping for deletions and smoothings.

    edge_unions: list of (face_index, face_index) pairs glued by a removed
    edge (each costs the class one Euler unit).  removed_vertices: list of
    face_index owning each fully removed vertex (each refunds one unit).
    new_circuits: circuits of the rewired map.  vote_darts: dart -> old face
    index for surviving darts whose left face kept its identity.
    extra_votes: same, for darts whose inherited class is known by
    construction (new or rerouted darts).

    Returns the new face tuple.
    """
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for a, b in edge_unions:
        union(a, b)
    votes = dict(vote_darts)
    if extra_votes:
        votes.update(extra_votes)
    groups = {}
    for circ in new_circuits:
        cls = None
        for d in circ:
            if d in votes:
                c = find(votes[d])
                if cls is None:
                    cls = c
                elif cls != c:
                    raise InternalTopologyError(
                        "circuit darts vote for different face classes")
        if cls is None:
            raise InternalTopologyError("circuit with no face vote")
        groups.setdefault(cls, []).append(circ)
    chi_cost = {}
    for a, b in edge_unions:
        cls = find(a)
        chi_cost[cls] = chi_cost.get(cls, 0) + 1
    chi_refund = {}
    for a in removed_vertices:
        cls = find(a)
        chi_refund[cls] = chi_refund.get(cls, 0) + 1
    new_faces = []
    for cls, circs in sorted(groups.items()):
        members = [i for i in range(len(system.faces)) if find(i) == cls]
        chi = sum(system.faces[i].euler for i in members) \
            - chi_cost.get(cls, 0) + chi_refund.get(cls, 0)
        punct = frozenset().union(*(system.faces[i].punctures for i in members))
        b = len(circs)
        genus2 = 2 - chi - b
        if genus2 < 0 or genus2 % 2:
            raise InternalTopologyError(f"face Euler bookkeeping broke: chi={chi} b={b}")
        new_faces.append(Face(tuple(sorted(circs)), punct, genus2 // 2))
    # classes that lost every circuit (a component vanished entirely) merge
    # their punctures into... that cannot happen while punctures remain, so:
    claimed = {p for f in new_faces for p in f.punctures}
    want = set(range(1, system.surface.punctures + 1))
    if claimed != want:
        raise InternalTopologyError("punctures lost in face merge")
    return tuple(new_faces)


def delete_curves(system: CurveSystem, drop) -> CurveSystem:
    """Forget the named curves, dissolving their crossings.

    Keeps one crossing per surviving curve as a degree-2 marker when the
    curve would otherwise lose all its vertices.
    """
    drop = set(drop)
    keep_ids = [c for c in system.curve_ids if c not in drop]
    if not keep_ids:
        raise ConfigError("cannot delete every curve")
    removed = {d for d in system.darts if system.curve_of[d] in drop}

    # classify vertices
    dissolve = {}      # vertex rep -> (kept dart a, kept dart b)
    marker = {}        # vertex rep -> (a, b) kept as degree-2
    gone_vertices = []  # face index owed a refund per fully removed vertex
    candidates = {}
    for orb in system.vertices:
        kept = [x for x in orb if x not in removed]
        if len(kept) == len(orb):
            continue
        if not kept:
            gone_vertices.append(system.face_index(orb[0]))
        elif len(kept) == 2:
            candidates.setdefault(system.curve_of[kept[0]], []).append(
                (orb[0], kept))
        else:
            raise InternalTopologyError("partial vertex with odd survivors")
    # curves whose every vertex is a candidate for dissolution keep one marker
    for cid in keep_ids:
        cand = candidates.get(cid, [])
        all_vertices = {system.vertex_of(d) for d in system.curve_darts(cid)}
        if cand and len(cand) == len(all_vertices):
            cand.sort()
            rep, kept = cand[0]
            marker[rep] = kept
            cand = cand[1:]
        for rep, kept in cand:
            dissolve[rep] = kept
    dissolving_darts = {d for pair in dissolve.values() for d in pair}

    def through(d):
        """Continuation dart when entering a dissolving vertex along d."""
        e = system.opposite[d]
        rep = system.vertex_of(e)
        a, b = dissolve[rep]
        return b if e == a else a

    new_opp = {}
    new_rot = {}
    for d in system.darts:
        if d in removed or d in dissolving_darts:
            continue
        e = system.opposite[d]
        while e in dissolving_darts:
            e = system.opposite[through(system.opposite[e])]
        new_opp[d] = e
        rep = system.vertex_of(d)
        if rep in marker:
            a, b = marker[rep]
            new_rot[d] = b if d == a else a
        else:
            r = system.rotation[d]
            while r in removed or r in dissolving_darts:
                r = system.rotation[r]
            new_rot[d] = r

    new_curve_of = {d: system.curve_of[d] for d in new_opp}
    edge_unions = []
    seen_edges = set()
    for d in system.darts:
        if d in removed and d not in seen_edges:
            e = system.opposite[d]
            seen_edges.add(d)
            seen_edges.add(e)
            edge_unions.append((system.face_index(d), system.face_index(e)))
    # dissolved darts vanish with their vertex; their edges merge pairwise,
    # which is Euler-neutral, so only removed edges and vertices enter the
    # bookkeeping
    stub = CurveSystem(system.surface, new_opp, new_rot, new_curve_of, ())
    votes = {d: system.face_index(d) for d in new_opp
             if d not in dissolving_darts}
    faces = _merge_faces(system, edge_unions, gone_vertices,
                         stub.circuits(), votes)
    out = CurveSystem(system.surface, new_opp, new_rot, new_curve_of, faces)
    return out.validate()
