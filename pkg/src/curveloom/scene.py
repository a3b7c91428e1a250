"""PL scenes: closed polylines and marked points in the rational plane.

A scene models a punctured sphere of genus zero: the finite punctures are
listed explicitly and the point at infinity is always an extra puncture,
numbered last.  Curves are simple closed polylines given by their vertex
list (closure back to the first vertex is implicit).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError, GeneralPositionViolation
from .geometry import dedupe_collinear
from .surface import SurfaceSpec


def _parse_rat(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational {tok!r}") from exc


def _fmt_rat(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass
class PLScene:
    """Punctures and closed curves in the plane.

    punctures: finite puncture positions, ids 1..n in list order; the point
    at infinity is puncture n+1.
    curves: curve id -> vertex list of a closed polyline.
    """

    punctures: list = field(default_factory=list)
    curves: dict = field(default_factory=dict)

    @property
    def infinity(self) -> int:
        return len(self.punctures) + 1

    @property
    def surface(self) -> SurfaceSpec:
        return SurfaceSpec(0, len(self.punctures) + 1)

    def puncture_ids(self):
        return range(1, len(self.punctures) + 2)

    def copy(self) -> "PLScene":
        return PLScene(list(self.punctures),
                       {k: list(v) for k, v in self.curves.items()})

    def cleaned(self) -> "PLScene":
        """Copy with duplicate and straight-through vertices dropped."""
        out = PLScene(list(self.punctures), {})
        for k, v in self.curves.items():
            pts = dedupe_collinear(v, closed=True)
            if len(pts) < 3:
                raise GeneralPositionViolation(f"curve {k} degenerates to < 3 vertices")
            out.curves[k] = pts
        return out

    def segments(self, curve_id):
        pts = self.curves[curve_id]
        n = len(pts)
        return [(pts[i], pts[(i + 1) % n]) for i in range(n)]

    def all_segments(self):
        """(curve_id, seg_index, a, b) for every segment in the scene."""
        out = []
        for k in sorted(self.curves):
            for i, (a, b) in enumerate(self.segments(k)):
                out.append((k, i, a, b))
        return out

    def rescaled(self, factor) -> "PLScene":
        f = Fraction(factor)
        return PLScene(
            [(p[0] * f, p[1] * f) for p in self.punctures],
            {k: [(x * f, y * f) for (x, y) in v] for k, v in self.curves.items()})

    def integerized(self) -> "PLScene":
        """Scale so every coordinate is an integer (keeps topology)."""
        denoms = set()
        for p in self.punctures:
            denoms.add(Fraction(p[0]).denominator)
            denoms.add(Fraction(p[1]).denominator)
        for v in self.curves.values():
            for (x, y) in v:
                denoms.add(Fraction(x).denominator)
                denoms.add(Fraction(y).denominator)
        m = 1
        for d in denoms:
            m = m * d // math.gcd(m, d)
        sc = self.rescaled(m)
        sc.punctures = [(int(x), int(y)) for (x, y) in sc.punctures]
        sc.curves = {k: [(int(x), int(y)) for (x, y) in v]
                     for k, v in sc.curves.items()}
        return sc


def parse_scene(text: str) -> PLScene:
    scene = PLScene()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kind = toks[0]
        if kind == "puncture":
            if len(toks) != 3:
                raise ConfigError(f"line {lineno}: puncture needs two coordinates")
            scene.punctures.append((_parse_rat(toks[1]), _parse_rat(toks[2])))
        elif kind == "curve":
            if len(toks) < 2:
                raise ConfigError(f"line {lineno}: curve needs an id")
            cid = toks[1]
            nums = toks[2:]
            if len(nums) < 6 or len(nums) % 2 != 0:
                raise ConfigError(
                    f"line {lineno}: curve {cid} needs at least 3 coordinate pairs")
            pts = [(_parse_rat(nums[i]), _parse_rat(nums[i + 1]))
                   for i in range(0, len(nums), 2)]
            if cid in scene.curves:
                raise ConfigError(f"line {lineno}: duplicate curve id {cid}")
            scene.curves[cid] = pts
        else:
            raise ConfigError(f"line {lineno}: unknown directive {kind!r}")
    return scene


def format_scene(scene: PLScene) -> str:
    lines = []
    for (x, y) in scene.punctures:
        lines.append(f"puncture {_fmt_rat(x)} {_fmt_rat(y)}")
    for cid in sorted(scene.curves):
        coords = " ".join(f"{_fmt_rat(x)} {_fmt_rat(y)}" for (x, y) in scene.curves[cid])
        lines.append(f"curve {cid} {coords}")
    return "\n".join(lines) + "\n"


def load_scene(path) -> PLScene:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scene(fh.read())


def save_scene(scene: PLScene, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_scene(scene))
