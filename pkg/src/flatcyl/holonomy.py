"""Holonomy order and the holonomy almost trivializing cover."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .surface import FlatSurface, Gluing, Polygon, euler_genus


@dataclass(frozen=True)
class HolonomyData:
    q: int
    order: int
    chart_rotation: tuple[int, ...]  # per polygon, makes tree gluings rotation free
    residual: tuple[int, ...]  # per gluing, rotation index after normalization
    tree: frozenset[int] = field(default_factory=frozenset)

    @property
    def q0(self) -> int:
        return self.q // 2 if self.q % 2 == 0 else self.q


@dataclass(frozen=True)
class CoveringData:
    degree: int
    sheet_shift: tuple[int, ...]  # per base gluing
    projection: tuple[tuple[int, int], ...]  # cover polygon -> (base polygon, sheet)


def holonomy_order(surface: FlatSurface) -> HolonomyData:
    n = surface.order
    rot = [None] * len(surface.polygons)
    rot[0] = 0
    tree = set()
    by_poly = {}
    for gi, g in enumerate(surface.gluings):
        by_poly.setdefault(g.a[0], []).append(gi)
        by_poly.setdefault(g.b[0], []).append(gi)
    queue = [0]
    while queue:
        p = queue.pop(0)
        for gi in by_poly.get(p, []):
            g = surface.gluings[gi]
            for src, dst, k in ((g.a[0], g.b[0], g.k), (g.b[0], g.a[0], -g.k)):
                if src == p and rot[dst] is None:
                    rot[dst] = (rot[src] - k) % n
                    tree.add(gi)
                    queue.append(dst)
    residual = tuple((g.k + rot[g.b[0]] - rot[g.a[0]]) % n for g in surface.gluings)
    h = n
    for r in residual:
        h = gcd(h, r)
    return HolonomyData(n // h, n, tuple(rot), residual, frozenset(tree))


def trivializing_cover(surface: FlatSurface, data: HolonomyData | None = None):
    """Cover built from q0 rotated copies of the polygons.

    Copy ``g`` of a polygon is its normalized chart rotated by
    ``zeta**(g * N/q)``; crossing a gluing with residual rotation
    ``m * N/q`` moves from sheet ``g`` to sheet ``g - m`` (mod q0).
    """
    data = data or holonomy_order(surface)
    f = surface.field
    n = surface.order
    h = n // data.q
    q0 = data.q0
    polys = []
    index = {}
    projection = []
    comments = {}
    for s in range(q0):
        for pi, p in enumerate(surface.polygons):
            r = f.zeta_power(data.chart_rotation[pi] + s * h)
            name = f"{p.name}~{s}"
            index[(pi, s)] = len(polys)
            polys.append(Polygon(name, tuple(v * r for v in p.vertices)))
            projection.append((pi, s))
            comments[name] = f"sheet {s} of {p.name}"
    gluings = []
    shifts = []
    for gi, g in enumerate(surface.gluings):
        m = data.residual[gi] // h
        shifts.append(m % q0)
        for s in range(q0):
            t = (s - m) % q0
            pa, pb = index[(g.a[0], s)], index[(g.b[0], t)]
            ra = data.chart_rotation[g.a[0]] + s * h
            rb = data.chart_rotation[g.b[0]] + t * h
            gluings.append(Gluing((pa, g.a[1]), (pb, g.b[1]), (g.k + rb - ra) % n))
    boundary = [(index[(pi, s)], e) for s in range(q0) for pi, e in sorted(surface.boundary_edges)]
    punct = []
    for cls in surface.cone_classes:
        if cls.kind == "puncture":
            punct += [(index[(pi, s)], v) for s in range(q0) for pi, v in cls.cycle]
    cover = FlatSurface(f, polys, gluings, boundary, punct, comments)
    return cover, CoveringData(q0, tuple(shifts), tuple(projection))


@dataclass
class CoverReport:
    checks: dict[str, bool]
    details: dict[str, str]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def punctured_euler(surface: FlatSurface) -> int:
    chi, _, _ = euler_genus(surface)
    return chi - sum(1 for c in surface.cone_classes if c.kind == "puncture")


def verify_cover(surface: FlatSurface, cover: FlatSurface, data: CoveringData) -> CoverReport:
    base_q = holonomy_order(surface).q
    expected = base_q // 2 if base_q % 2 == 0 else base_q
    cq = holonomy_order(cover).q
    checks = {
        "holonomy": cq in (1, 2),
        "degree": data.degree == expected and len(cover.polygons) == expected * len(surface.polygons),
        "area": cover.area_form == surface.area_form * data.degree,
    }
    details = {
        "holonomy": f"cover holonomy order {cq}",
        "degree": f"degree {data.degree}, expected {expected}",
        "area": f"cover area {cover.area:.6g}, base area {surface.area:.6g}",
    }
    if surface.cone_classes and all(c.kind != "cone" for c in surface.cone_classes):
        a, b = punctured_euler(cover), punctured_euler(surface)
        checks["euler"] = a == data.degree * b
        details["euler"] = f"punctured euler characteristic {a} vs {data.degree} x {b}"
    return CoverReport(checks, details)
