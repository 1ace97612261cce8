"""Triangulated view of a flat surface.

Every polygon is cut into triangles by exact ear clipping.  Triangles keep
their polygon's chart, so diagonals are glued by the identity; polygon
edges inherit the surface gluings.  Developed positions are tracked by
maps ``x -> zeta**r * x + s`` stored as ``(r, s)`` pairs.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exactnum import Scalar, cross, dot_sign
from .planar import orient, point_in_triangle


@dataclass(frozen=True)
class Tri:
    poly: int
    idx: tuple[int, int, int]
    pts: tuple[Scalar, Scalar, Scalar]


class DevMap:
    """Orientation-preserving isometry x -> zeta**r * x + s."""

    __slots__ = ("r", "s", "_u")

    def __init__(self, r: int, s: Scalar, u: Scalar):
        self.r = r
        self.s = s
        self._u = u

    def __call__(self, x: Scalar) -> Scalar:
        return x * self._u + self.s

    def vec(self, v: Scalar) -> Scalar:
        return v * self._u

    def inverse_point(self, y: Scalar) -> Scalar:
        return (y - self.s) * self._u.conj()

    def inverse_vec(self, v: Scalar) -> Scalar:
        return v * self._u.conj()

    def key(self):
        return (self.r, self.s)


def identity_map(field_) -> DevMap:
    return DevMap(0, field_.zero(), field_.one())


def ear_clip(vertices) -> list[tuple[int, int, int]]:
    """Triangulate a simple counterclockwise polygon; returns index triples."""
    idx = list(range(len(vertices)))
    out = []
    guard = 0
    while len(idx) > 3:
        n = len(idx)
        for pos in range(n):
            i0, i1, i2 = idx[pos - 1], idx[pos], idx[(pos + 1) % n]
            a, b, c = vertices[i0], vertices[i1], vertices[i2]
            if orient(a, b, c) <= 0:
                continue
            if any(
                point_in_triangle(vertices[j], a, b, c)
                for j in idx
                if j not in (i0, i1, i2)
            ):
                continue
            out.append((i0, i1, i2))
            idx.pop(pos)
            break
        else:
            raise RuntimeError("ear clipping failed")
        guard += 1
    out.append(tuple(idx))
    return [_rotate_min(t) for t in out]


def _rotate_min(t):
    k = t.index(min(t))
    return t[k:] + t[:k]


class Mesh:
    def __init__(self, surface):
        self.surface = surface
        self.field = f = surface.field
        self.tris: list[Tri] = []
        edge_owner = {}  # (poly, a, b) directed polygon chord -> (tri, m)
        for pi, poly in enumerate(surface.polygons):
            for t in ear_clip(poly.vertices):
                ti = len(self.tris)
                self.tris.append(Tri(pi, t, tuple(poly.vertices[i] for i in t)))
                for m in range(3):
                    edge_owner[(pi, t[m], t[(m + 1) % 3])] = (ti, m)
        # neighbor across triangle edge: (t', m', DevMap from t chart to t' chart)
        self.nbr: dict[tuple[int, int], tuple[int, int, DevMap] | None] = {}
        self.label: dict[tuple[int, int], tuple[int, int] | None] = {}
        self.edge_tri: dict[tuple[int, int], tuple[int, int]] = {}
        ident = identity_map(f)
        for ti, tri in enumerate(self.tris):
            pi = tri.poly
            n = len(surface.polygons[pi])
            for m in range(3):
                a, b = tri.idx[m], tri.idx[(m + 1) % 3]
                if b == (a + 1) % n:
                    self.label[(ti, m)] = (pi, a)
                    self.edge_tri[(pi, a)] = (ti, m)
                else:
                    self.label[(ti, m)] = None
                    self.nbr[(ti, m)] = (*edge_owner[(pi, b, a)], ident)
        for (ti, m), lab in self.label.items():
            if lab is None:
                continue
            if lab not in surface.partner:
                self.nbr[(ti, m)] = None
                continue
            q, e, k = surface.partner[lab]
            t2, m2 = self.edge_tri[(q, e)]
            u = f.zeta_power(k)
            # start of edge lab maps to the end of edge (q, e)
            src = surface.polygons[lab[0]].vertices[lab[1]]
            dst = surface.polygons[q].vertices[(e + 1) % len(surface.polygons[q])]
            self.nbr[(ti, m)] = (t2, m2, DevMap(k, dst - src * u, u))
        self.corner_class = {}
        for ti, tri in enumerate(self.tris):
            for j in range(3):
                self.corner_class[(ti, j)] = surface.corner_class[(tri.poly, tri.idx[j])]
        self.stop = surface.stop_classes()
        self.endpoints = surface.endpoint_classes()

    # --- developing -----------------------------------------------------------

    def cross_edge(self, g: DevMap, ti: int, m: int):
        """Developed map of the neighbor across edge m, or None at boundary."""
        nb = self.nbr[(ti, m)]
        if nb is None:
            return None
        t2, m2, T = nb
        f = self.field
        r = (g.r - T.r) % f.n
        u = f.zeta_power(r)
        # G o T^{-1}: y -> zeta^{r - k} (y - t) + s
        return t2, m2, DevMap(r, g.s - T.s * u, u)

    def dev_pts(self, g: DevMap, ti: int):
        return tuple(g(p) for p in self.tris[ti].pts)

    # --- walking around a vertex --------------------------------------------

    def corner_ccw(self, g: DevMap, ti: int, j: int):
        """Next corner counterclockwise around the vertex of corner (ti, j)."""
        res = self.cross_edge(g, ti, (j - 1) % 3)
        if res is None:
            return None
        t2, m2, g2 = res
        return t2, m2, g2

    def corner_cw(self, g: DevMap, ti: int, j: int):
        res = self.cross_edge(g, ti, j)
        if res is None:
            return None
        t2, m2, g2 = res
        return t2, (m2 + 1) % 3, g2

    def wedge(self, g: DevMap, ti: int, j: int):
        p = self.tris[ti].pts
        return g.vec(p[(j + 1) % 3] - p[j]), g.vec(p[(j - 1) % 3] - p[j])

    def in_corner(self, g: DevMap, ti: int, j: int, d: Scalar) -> bool:
        """d lies in the half-open corner wedge [right, left)."""
        right, left = self.wedge(g, ti, j)
        c1 = cross(right, d)
        if c1 < 0:
            return False
        if c1 == 0:
            return dot_sign(right, d) > 0
        return cross(d, left) > 0

    def find_corner(self, g: DevMap, ti: int, j: int, d: Scalar, ccw: bool = True, skip_first=False):
        """Walk around a vertex until the corner containing developed direction d.

        Returns (ti, j, g, turns) or None if a boundary edge interrupts.
        """
        cur = (ti, j, g)
        limit = 4 * len(self.tris) + 8
        for turns in range(limit):
            if not (skip_first and turns == 0) and self.in_corner(cur[2], cur[0], cur[1], d):
                return (*cur, turns)
            nxt = self.corner_ccw(cur[2], cur[0], cur[1]) if ccw else self.corner_cw(cur[2], cur[0], cur[1])
            if nxt is None:
                return None
            cur = nxt
        raise RuntimeError("vertex walk did not terminate")

    def corners_of_class(self, cls: int):
        return sorted(c for c, k in self.corner_class.items() if k == cls)

    def locate(self, poly: int, p: Scalar):
        """All (triangle) indices of a polygon whose closed triangle contains p."""
        out = []
        for ti, tri in enumerate(self.tris):
            if tri.poly == poly and point_in_triangle(p, *tri.pts):
                out.append(ti)
        return out
