"""Straight-line flow and saddle connections.

Everything is traced on the triangulated mesh with exact developed
coordinates: a fixed developed direction ``d`` and, per triangle, the
isometry from its chart to the developing plane.  Vertex hits are decided
by exact equality, so a trajectory either meets a vertex or misses it.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import cmp_to_key

from .exactnum import Scalar, compare_real, cross, dot_sign, im_sq4
from .mesh import DevMap, identity_map
from .planar import im_ratio, on_segment, orient, segments_intersect

MAX_STEPS = 200_000


class FlowError(ValueError):
    pass


class LimitError(FlowError):
    """A trajectory needed more than MAX_STEPS edge crossings."""


@dataclass(frozen=True)
class Trajectory:
    segments: tuple  # (polygon index, start, end) in polygon charts
    status: str  # hit_cone, hit_boundary, budget_exhausted, closed
    end_class: int | None
    vector: Scalar  # developed displacement, in the start chart
    word: tuple[str, ...]  # exited polygon edges "P.e"; "@P.v" marks a pass through a vertex
    start: tuple  # (polygon index, point)
    direction: Scalar

    @property
    def length_sq(self) -> Scalar:
        return self.vector.norm_sq()


@dataclass(frozen=True)
class SaddleConnection:
    start_class: int
    end_class: int
    vector: Scalar  # holonomy vector in the chart of the start polygon
    length_sq: Scalar
    word: tuple[str, ...]
    start_corner: tuple[int, int]
    end_corner: tuple[int, int]
    segments: tuple = field(default=(), compare=False, repr=False)
    embedded: bool | None = None


# --- the tracer ------------------------------------------------------------


def _edge_name(mesh, lab):
    return f"{mesh.surface.polygons[lab[0]].name}.{lab[1]}"


def _vertex_token(mesh, ti, j):
    tri = mesh.tris[ti]
    return f"@{mesh.surface.polygons[tri.poly].name}.{tri.idx[j]}"


def _trace(mesh, ti, p, g, d, stop, origin, budget_sq, closing=None):
    """Follow developed direction d from chart point p of triangle ti.

    Returns (raw segments, status, end corner or None, end developed point,
    word, final (triangle, map)).  ``closing`` is (triangle, chart point,
    chart rotation) of a start point whose return closes the orbit.  Raw segments are (poly, a, b, joined) where ``joined`` says the segment
    continues into the next one across a diagonal.
    """
    segs = []
    word = []
    first = True
    for _ in range(MAX_STEPS):
        tri = mesh.tris[ti]
        pts = tri.pts
        v = g.inverse_vec(d)
        best_m, best_t = None, None
        for m in range(3):
            a, b = pts[m], pts[(m + 1) % 3]
            e = b - a
            if cross(e, v) >= 0:
                continue
            t = im_ratio((a - p).conj() * e, v.conj() * e)
            if best_t is None or compare_real(t, best_t) < 0:
                best_m, best_t = m, t
        if best_m is None:
            raise FlowError("trajectory cannot leave its triangle")
        x = p + v * best_t
        if closing is not None and not first and ti == closing[0] and g.r == closing[2]:
            p0 = closing[1]
            if p0 != p and on_segment(p0, p, x) or (p0 == p):
                end = g(p0)
                if compare_real((end - origin).norm_sq(), budget_sq) <= 0:
                    if p0 != p:
                        segs.append((tri.poly, p, p0, False))
                    return segs, "closed", None, end, word, (ti, g)
        first = False
        xd = g(x)
        if compare_real((xd - origin).norm_sq(), budget_sq) > 0:
            return segs, "budget_exhausted", None, g(p), word, (ti, g)
        vert = None
        for j in range(3):
            if pts[j] == x:
                vert = j
                break
        if vert is not None:
            segs.append((tri.poly, p, x, False))
            cls = mesh.corner_class[(ti, vert)]
            if cls in stop:
                return segs, "hit_cone", (ti, vert), xd, word, (ti, g)
            res = mesh.find_corner(g, ti, vert, d)
            if res is None:
                return segs, "hit_boundary", None, xd, word, (ti, g)
            ti, j, g, _ = res
            word.append(_vertex_token(mesh, ti, j))
            p = mesh.tris[ti].pts[j]
            continue
        lab = mesh.label[(ti, best_m)]
        res = mesh.cross_edge(g, ti, best_m)
        segs.append((tri.poly, p, x, lab is None and res is not None))
        if res is None:
            return segs, "hit_boundary", None, xd, word, (ti, g)
        if lab is not None:
            word.append(_edge_name(mesh, lab))
        t2, _, g2 = res
        p = g2.inverse_point(xd)
        ti, g = t2, g2
    raise LimitError(f"step limit of {MAX_STEPS} edge crossings exceeded")


def _merge(raw):
    out = []
    joined = False
    for poly, a, b, j in raw:
        if out and joined and out[-1][0] == poly and out[-1][2] == a:
            out[-1] = (poly, out[-1][1], b)
        else:
            out.append((poly, a, b))
        joined = j
    return tuple(out)


def _enters(tri, p, v) -> bool:
    pts = tri.pts
    for m in range(3):
        a, b = pts[m], pts[(m + 1) % 3]
        if orient(a, b, p) == 0 and on_segment(p, a, b):
            e = b - a
            c = cross(e, v)
            if c < 0 or (c == 0 and dot_sign(e, v) <= 0):
                return False
    return True


def start_state(mesh, poly: int, p: Scalar, v: Scalar):
    """(triangle, chart point, map) for a ray leaving p in chart direction v."""
    cands = mesh.locate(poly, p)
    if not cands:
        raise FlowError("start point lies outside the polygon")
    g = identity_map(mesh.field)
    for ti in cands:
        pts = mesh.tris[ti].pts
        if p in pts:
            j = pts.index(p)
            res = mesh.find_corner(g, ti, j, v)
            if res is None:
                raise FlowError("direction leaves through the boundary")
            t2, j2, g2, _ = res
            return t2, mesh.tris[t2].pts[j2], g2
    for ti in cands:
        if _enters(mesh.tris[ti], p, v):
            return ti, p, g
    # p on a polygon edge with v pointing across it
    for ti in cands:
        pts = mesh.tris[ti].pts
        for m in range(3):
            if mesh.label[(ti, m)] is not None and on_segment(p, pts[m], pts[(m + 1) % 3]):
                res = mesh.cross_edge(g, ti, m)
                if res is None:
                    raise FlowError("direction leaves through the boundary")
                t2, _, g2 = res
                q = g2.inverse_point(p)
                if _enters(mesh.tris[t2], q, g2.inverse_vec(v)):
                    return t2, q, g2
    raise FlowError("could not place the start point")


def straight_flow(surface, start, direction: Scalar, budget: Scalar, stop=None) -> Trajectory:
    """Flow from ``start = (polygon, point)`` for at most length ``budget``."""
    if direction.is_zero():
        raise FlowError("zero direction")
    if budget.is_real() is False or compare_real(budget, budget.field.zero()) <= 0:
        raise FlowError("budget must be a positive real")
    return flow_sq(surface, start, direction, budget * budget, stop)


def flow_sq(surface, start, direction, budget_sq, stop=None) -> Trajectory:
    mesh = surface.mesh
    poly, p = start
    if isinstance(poly, str):
        poly = surface.index[poly]
    stop = surface.stop_classes() if stop is None else stop
    ti, q, g = start_state(mesh, poly, p, direction)
    closing = None
    if q not in mesh.tris[ti].pts:
        closing = (ti, q, g.r)
    raw, status, corner, end, word, _ = _trace(mesh, ti, q, g, direction, stop, p, budget_sq, closing)
    end_class = mesh.corner_class[corner] if corner is not None else None
    return Trajectory(_merge(raw), status, end_class, end - p, tuple(word), (poly, p), direction)


# --- separatrices --------------------------------------------------------------


def class_corners(mesh, cls: int):
    """Triangle corners around a vertex class in counterclockwise order, with maps.

    The maps develop the whole star of the vertex into one chart, starting
    from the first polygon corner of the class.
    """
    surface = mesh.surface
    poly, v = surface.cone_classes[cls].cycle[0]
    start = None
    for ti, tri in enumerate(mesh.tris):
        if tri.poly == poly and v in tri.idx:
            j = tri.idx.index(v)
            # the triangle whose right edge is the polygon edge leaving v
            if tri.idx[(j + 1) % 3] == (v + 1) % len(surface.polygons[poly]):
                start = (ti, j)
                break
    out = []
    g = identity_map(mesh.field)
    cur = (start[0], start[1], g)
    while True:
        out.append(cur)
        nxt = mesh.corner_ccw(cur[2], cur[0], cur[1])
        if nxt is None or (nxt[0], nxt[1]) == start:
            break
        cur = nxt
    return out


def separatrices(surface, cls: int, budget: Scalar, direction: Scalar | None = None, unoriented=False):
    """Rays from a vertex class.

    With a direction (in the chart of the class's first polygon corner) one
    ray per sector containing it, so a cone of angle 2*pi*m gives m rays.
    Without one, a ray into every triangle corner.
    """
    mesh = surface.mesh
    budget_sq = budget * budget
    stop = surface.stop_classes() | {cls}
    out = []
    corners = class_corners(mesh, cls)
    dirs = [direction, -direction] if (direction is not None and unoriented) else [direction]
    for ti, j, g in corners:
        right, left = mesh.wedge(g, ti, j)
        if direction is None:
            cand = [right + left]
        else:
            cand = [d for d in dirs if mesh.in_corner(g, ti, j, d)]
        for d in cand:
            p = mesh.tris[ti].pts[j]
            o = g(p)
            raw, status, corner, end, word, _ = _trace(mesh, ti, p, g, d, stop, o, budget_sq)
            end_class = mesh.corner_class[corner] if corner is not None else None
            tri = mesh.tris[ti]
            out.append(
                Trajectory(_merge(raw), status, end_class, end - o, tuple(word), (tri.poly, p), g.inverse_vec(d))
            )
    return out


# --- saddle connection search ---------------------------------------------------


def _within(o, a, b, limit_sq) -> bool:
    """Closed segment [a, b] meets the closed disk of squared radius limit_sq at o."""
    e = b - a
    if dot_sign(o - a, e) <= 0:
        return compare_real((o - a).norm_sq(), limit_sq) <= 0
    if dot_sign(o - b, -e) <= 0:
        return compare_real((o - b).norm_sq(), limit_sq) <= 0
    return compare_real(im_sq4(e.conj() * (o - a)), e.norm_sq() * limit_sq * 4) <= 0


def root_corners(surface):
    """DFS roots: every triangle corner at an endpoint class."""
    mesh = surface.mesh
    ends = surface.endpoint_classes()
    return sorted(c for c, k in mesh.corner_class.items() if k in ends)


def _dfs_root(surface, root, limit_sq):
    """Raw oriented saddle connections leaving the triangle corner ``root``.

    Returns tuples (end corner, vector, word, continuation flag).
    """
    mesh = surface.mesh
    ends = surface.endpoint_classes()
    f = mesh.field
    t0, j0 = root
    g0 = identity_map(f)
    pts = mesh.tris[t0].pts
    o = pts[j0]
    found = []

    def hit(ti, j, g, wd, word):
        cls = mesh.corner_class[(ti, j)]
        if compare_real((wd - o).norm_sq(), limit_sq) > 0:
            return
        if cls in ends:
            found.append(((ti, j), wd - o, tuple(word)))
            return
        # regular marked vertex: the ray goes straight through
        d = wd - o
        res = mesh.find_corner(g, ti, j, d)
        if res is None:
            return
        t2, j2, g2, _ = res
        w2 = list(word) + [_vertex_token(mesh, t2, j2)]
        raw, status, corner, end, w3, _ = _trace(mesh, t2, mesh.tris[t2].pts[j2], g2, d, ends, o, limit_sq)
        if status == "hit_cone":
            found.append((corner, end - o, tuple(w2 + w3)))

    r, lft = pts[(j0 + 1) % 3], pts[(j0 + 2) % 3]
    hit(t0, (j0 + 1) % 3, g0, r, [])
    if mesh.corner_ccw(g0, t0, j0) is None:
        hit(t0, (j0 + 2) % 3, g0, lft, [])
    stack = []
    m0 = (j0 + 1) % 3
    if _within(o, r, lft, limit_sq):
        stack.append((t0, m0, g0, r - o, lft - o, ()))
    while stack:
        ti, m, g, lo, hi, word = stack.pop()
        res = mesh.cross_edge(g, ti, m)
        if res is None:
            continue
        lab = mesh.label[(ti, m)]
        if lab is not None:
            word = word + (_edge_name(mesh, lab),)
        t2, m2, g2 = res
        p2 = mesh.tris[t2].pts
        a = g2(p2[m2])  # left end as seen from o
        b = g2(p2[(m2 + 1) % 3])  # right end
        jw = (m2 + 2) % 3
        w = g2(p2[jw])
        wd = w - o
        s_lo = cross(lo, wd)
        s_hi = cross(wd, hi)
        if s_lo > 0 and s_hi > 0:
            hit(t2, jw, g2, w, word)
            if _within(o, b, w, limit_sq):
                stack.append((t2, (m2 + 1) % 3, g2, lo, wd, word))
            if _within(o, w, a, limit_sq):
                stack.append((t2, (m2 + 2) % 3, g2, wd, hi, word))
        elif s_lo <= 0:
            if _within(o, w, a, limit_sq):
                stack.append((t2, (m2 + 2) % 3, g2, lo, hi, word))
        else:
            if _within(o, b, w, limit_sq):
                stack.append((t2, (m2 + 1) % 3, g2, lo, hi, word))
    return found


def _dfs_batch(surface, roots, limit_sq):
    return [(root, _dfs_root(surface, root, limit_sq)) for root in roots]


def _scalar_key(x: Scalar):
    return tuple(x.coeffs)


def _segment_key(surface, seg):
    """Canonical form of a segment; runs along glued edges use the lesser side."""
    poly, a, b = seg
    p = surface.polygons[poly]
    n = len(p)
    for e in range(n):
        u, w = p.vertices[e], p.vertices[(e + 1) % n]
        if on_segment(a, u, w) and on_segment(b, u, w) and (poly, e) in surface.partner:
            q, e2, k = surface.partner[(poly, e)]
            if (q, e2) < (poly, e):
                rot = surface.field.zeta_power(k)
                dst = surface.polygons[q].vertices[(e2 + 1) % len(surface.polygons[q])]
                a, b = (a - u) * rot + dst, (b - u) * rot + dst
                poly = q
            break
    return (poly, _scalar_key(a), _scalar_key(b))


def trace_key(surface, segments):
    """Orientation-free identity of a trajectory given by its segments."""
    fwd = tuple(_segment_key(surface, s) for s in segments)
    rev = tuple(_segment_key(surface, (s[0], s[2], s[1])) for s in reversed(segments))
    return min(fwd, rev), fwd <= rev


def replay(surface, sc_start_corner_tri, vector, limit_sq, stop):
    mesh = surface.mesh
    ti, j = sc_start_corner_tri
    g = identity_map(mesh.field)
    p = mesh.tris[ti].pts[j]
    raw, status, corner, end, word, _ = _trace(mesh, ti, p, g, vector, stop, p, limit_sq)
    return _merge(raw), status, corner, end - p, tuple(word)


def _cmp_sc(x, y):
    c = compare_real(x.length_sq, y.length_sq)
    if c:
        return c
    kx = (x.word, x.start_class, x.end_class, x.start_corner, _scalar_key(x.vector))
    ky = (y.word, y.start_class, y.end_class, y.start_corner, _scalar_key(y.vector))
    return (kx > ky) - (kx < ky)


def saddle_connections(surface, max_length_sq: Scalar, workers: int = 1, embedded: bool = False, oriented=False):
    """All saddle connections with squared length at most ``max_length_sq``.

    One entry per unoriented saddle connection unless ``oriented``.
    """
    if not max_length_sq.is_real() or compare_real(max_length_sq, max_length_sq.field.zero()) <= 0:
        raise FlowError("length bound must be positive")
    mesh = surface.mesh
    roots = root_corners(surface)
    if workers > 1 and len(roots) > 1:
        chunks = [roots[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_dfs_batch, [surface] * len(chunks), chunks, [max_length_sq] * len(chunks)))
        results = dict(item for part in parts for item in part)
    else:
        results = dict(_dfs_batch(surface, roots, max_length_sq))
    ends = surface.endpoint_classes()
    seen = {}
    for root in roots:
        for corner, vec, word in results[root]:
            segs, status, c2, v2, w2 = replay(surface, root, vec, vec.norm_sq(), ends)
            if status != "hit_cone" or v2 != vec or c2 != corner:
                raise FlowError(f"replay mismatch for a saddle connection from corner {root}")
            key, forward = trace_key(surface, segs)
            t0 = mesh.tris[root[0]]
            t1 = mesh.tris[corner[0]]
            sc = SaddleConnection(
                mesh.corner_class[root],
                mesh.corner_class[corner],
                vec,
                vec.norm_sq(),
                word,
                (t0.poly, t0.idx[root[1]]),
                (t1.poly, t1.idx[corner[1]]),
                segs,
            )
            if oriented:
                seen[(key, forward)] = sc
            elif forward or key not in seen:
                seen[key] = sc
    out = list(seen.values())
    if embedded:
        out = [replace(sc, embedded=is_embedded_saddle(surface, sc)) for sc in out]
    out.sort(key=cmp_to_key(_cmp_sc))
    return out


# --- embeddedness -----------------------------------------------------------------


def _mirror(surface, seg):
    """Copy of a segment lying on a glued polygon edge, in the partner chart."""
    poly, a, b = seg
    p = surface.polygons[poly]
    n = len(p)
    for e in range(n):
        u, w = p.vertices[e], p.vertices[(e + 1) % n]
        if (poly, e) in surface.partner and on_segment(a, u, w) and on_segment(b, u, w):
            q, e2, k = surface.partner[(poly, e)]
            rot = surface.field.zeta_power(k)
            dst = surface.polygons[q].vertices[(e2 + 1) % len(surface.polygons[q])]
            return (q, (a - u) * rot + dst, (b - u) * rot + dst)
    return None


def self_intersections(surface, segments, closed=False):
    """Points where a trajectory meets itself away from its own joints.

    Returns a list of (polygon, point or overlap) witnesses.
    """
    items = []
    for i, s in enumerate(segments):
        items.append((i, s))
        m = _mirror(surface, s)
        if m is not None:
            items.append((i, m))
    stop = surface.stop_classes()
    n = len(segments)
    witnesses = []
    by_poly = {}
    for i, s in items:
        by_poly.setdefault(s[0], []).append((i, s))
    for poly, lst in sorted(by_poly.items()):
        verts = surface.polygons[poly].vertices
        for x in range(len(lst)):
            for y in range(x + 1, len(lst)):
                i, s = lst[x]
                j, t = lst[y]
                if i == j:
                    continue
                hit = segments_intersect(s[1], s[2], t[1], t[2])
                if hit is None:
                    continue
                if hit[0] == "point":
                    pt = hit[1]
                    if _joint(i, j, s, t, pt, n, closed):
                        continue
                    if pt in verts and surface.corner_class[(poly, verts.index(pt))] in stop:
                        continue
                witnesses.append((poly, hit))
    return witnesses


def _joint(i, j, s, t, pt, n, closed):
    if j == i + 1 and s[2] == pt and t[1] == pt:
        return True
    if i == j + 1 and t[2] == pt and s[1] == pt:
        return True
    if closed and {i, j} == {0, n - 1}:
        last, first = (s, t) if i == n - 1 else (t, s)
        return last[2] == pt and first[1] == pt
    return False


def is_embedded_saddle(surface, sc: SaddleConnection) -> bool:
    segs = sc.segments
    if not segs:
        mesh = surface.mesh
        root = _tri_corner(mesh, sc.start_corner, sc.vector)
        segs = replay(surface, root, sc.vector, sc.length_sq, surface.endpoint_classes())[0]
    return not self_intersections(surface, segs)


def _tri_corner(mesh, corner, vec):
    poly, v = corner
    g = identity_map(mesh.field)
    for ti, tri in enumerate(mesh.tris):
        if tri.poly == poly and v in tri.idx:
            j = tri.idx.index(v)
            res = mesh.find_corner(g, ti, j, vec)
            if res is not None and res[2].r == 0 and res[2].s.is_zero():
                return res[0], res[1]
    # along a boundary edge the direction is the closing ray of the last corner
    for ti, tri in enumerate(mesh.tris):
        if tri.poly == poly and v in tri.idx:
            j = tri.idx.index(v)
            _, left = mesh.wedge(g, ti, j)
            if cross(left, vec) == 0 and dot_sign(left, vec) > 0:
                return ti, j
    raise FlowError("no triangle corner holds the saddle connection direction")


# --- naive oracle ---------------------------------------------------------------------


def naive_saddle_vectors(surface, max_length_sq: Scalar, depth: int):
    """Breadth-first development from every endpoint corner, without visibility cones.

    Develops every triangle reachable by at most ``depth`` crossings (copies
    that miss the disk of the length bound are dropped, repeated copies are
    merged) and tests every developed endpoint vertex by tracing the straight
    segment to it.  Returns the set of unoriented trace keys.
    """
    mesh = surface.mesh
    ends = surface.endpoint_classes()
    keys = set()
    for root in root_corners(surface):
        t0, j0 = root
        g0 = identity_map(mesh.field)
        o = mesh.tris[t0].pts[j0]
        frontier = {(t0, 0, g0.s): g0}
        reached = set(frontier)
        tested = set()
        for _ in range(depth + 1):
            nxt = {}
            for (ti, _, _), g in frontier.items():
                pts = mesh.dev_pts(g, ti)
                for j in range(3):
                    w = pts[j]
                    if w == o or w in tested or mesh.corner_class[(ti, j)] not in ends:
                        continue
                    tested.add(w)
                    vec = w - o
                    if compare_real(vec.norm_sq(), max_length_sq) > 0:
                        continue
                    if not mesh.in_corner(g0, t0, j0, vec):
                        continue
                    segs, status, corner, v2, _ = replay(surface, root, vec, vec.norm_sq(), ends)
                    if status == "hit_cone" and v2 == vec:
                        keys.add(trace_key(surface, segs)[0])
                for m in range(3):
                    res = mesh.cross_edge(g, ti, m)
                    if res is None:
                        continue
                    t2, _, g2 = res
                    key = (t2, g2.r, g2.s)
                    if key in reached:
                        continue
                    reached.add(key)
                    q = mesh.dev_pts(g2, t2)
                    if any(_within(o, q[i], q[(i + 1) % 3], max_length_sq) for i in range(3)):
                        nxt[key] = g2
            frontier = nxt
            if not frontier:
                break
    return keys


__all__ = [
    "FlowError",
    "SaddleConnection",
    "Trajectory",
    "flow_sq",
    "is_embedded_saddle",
    "naive_saddle_vectors",
    "saddle_connections",
    "self_intersections",
    "separatrices",
    "straight_flow",
    "trace_key",
]
