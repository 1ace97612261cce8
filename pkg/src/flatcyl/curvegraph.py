"""Intersection numbers of closed geodesics and disjointness diagnostics.

Two closed regular geodesics in different directions on a non-positively
curved cone surface form no bigons, so counting their transverse crossings
gives the geometric intersection number.  Nothing here proves that; the
torus determinant test checks it.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .exactnum import Scalar, cross, re_part
from .planar import segments_intersect


@dataclass
class IntersectionReport:
    count: int
    points: list[tuple[int, Scalar]] = field(default_factory=list)  # (polygon, point)
    parallel_overlap: bool = False


@dataclass
class DisjointnessGraph:
    vertices: list  # curve keys, in input order
    adjacency: dict[int, tuple[int, ...]]
    components: list[tuple[int, ...]]
    diameters: list[int]
    intersections: dict[tuple[int, int], int]


def _param(seg, x) -> Scalar:
    _, a, b = seg
    w = b - a
    return re_part((x - a) * w.conj()) / w.norm_sq()


def _strand(segs, i, t):
    """Position on a cyclic trace, with a segment end equal to the next start."""
    if t == t.field.one():
        return ((i + 1) % len(segs), t.field.zero())
    return (i, t)


def _vertex_of(surface, poly, x):
    vs = surface.polygons[poly].vertices
    return vs.index(x) if x in vs else None


def _vertex_passes(surface, segs):
    """(class, corner, outgoing chart direction, strand) for each pass through a vertex."""
    out = []
    for i, (poly, a, b) in enumerate(segs):
        v = _vertex_of(surface, poly, a)
        if v is not None:
            out.append((surface.corner_class[(poly, v)], (poly, v), b - a, (i, a.field.zero())))
    return out


def _turn_rotation(surface, src, dst) -> int:
    """Chart rotation index picked up walking counterclockwise around a vertex from src to dst."""
    k, cur = 0, src
    n = surface.order
    for _ in range(sum(len(p) for p in surface.polygons) + 1):
        if cur == dst:
            return k % n
        pi, v = cur
        inc = (pi, (v - 1) % len(surface.polygons[pi]))
        q, e, r = surface.partner[inc]
        k += r
        cur = (q, e)
    raise ValueError("corners are not in one vertex class")


def geometric_intersection(surface, a, b) -> IntersectionReport:
    """Transverse crossings of two closed traces (CurveTrace objects)."""
    sa, sb = a.segments, b.segments
    seen = {}
    overlap = False
    by_poly = {}
    for j, seg in enumerate(sb):
        by_poly.setdefault(seg[0], []).append(j)
    for i, seg in enumerate(sa):
        poly, p1, p2 = seg
        for j in by_poly.get(poly, ()):
            _, q1, q2 = sb[j]
            hit = segments_intersect(p1, p2, q1, q2)
            if hit is None:
                continue
            if hit[0] == "overlap":
                overlap = True
                continue
            x = hit[1]
            if _vertex_of(surface, poly, x) is not None:
                continue  # counted with the vertex passes below
            if cross(p2 - p1, q2 - q1) == 0:
                overlap = True
                continue
            key = (_strand(sa, i, _param(seg, x)), _strand(sb, j, _param(sb[j], x)))
            seen.setdefault(key, (poly, x))
    f = surface.field
    for cls_a, ca, da, pos_a in _vertex_passes(surface, sa):
        for cls_b, cb, db, pos_b in _vertex_passes(surface, sb):
            if cls_a != cls_b:
                continue
            if surface.cone_classes[cls_a].kind != "marked":
                raise ValueError("closed trace passes through a singular point")
            # direction of b in the chart of a's corner
            db_a = db * f.zeta_power(-_turn_rotation(surface, ca, cb))
            if cross(da, db_a) == 0:
                overlap = True
                continue
            seen.setdefault((pos_a, pos_b), (ca[0], surface.polygons[ca[0]].vertices[ca[1]]))
    points = [seen[k] for k in sorted(seen, key=lambda k: (k[0][0], k[1][0], _fkey(k[0][1]), _fkey(k[1][1])))]
    return IntersectionReport(len(points), points, overlap)


def _fkey(t: Scalar):
    return tuple(t.coeffs)


def disjointness_graph(surface, curves) -> DisjointnessGraph:
    """Vertices are curves; edges join distinct curves that do not cross."""
    n = len(curves)
    keys = [c.key for c in curves]
    inter = {}
    adj = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if keys[i] == keys[j]:
                inter[(i, j)] = 0
                continue
            cnt = geometric_intersection(surface, curves[i], curves[j]).count
            inter[(i, j)] = cnt
            if cnt == 0:
                adj[i].append(j)
                adj[j].append(i)
    adjacency = {i: tuple(sorted(v)) for i, v in adj.items()}
    comps, done = [], set()
    for s in range(n):
        if s in done:
            continue
        comp = _bfs(adjacency, s)
        done.update(comp)
        comps.append(tuple(sorted(comp)))
    diams = [max(max(_bfs(adjacency, s).values()) for s in comp) for comp in comps]
    return DisjointnessGraph(keys, adjacency, comps, diams, inter)


def _bfs(adjacency, s) -> dict[int, int]:
    dist = {s: 0}
    q = deque([s])
    while q:
        u = q.popleft()
        for w in adjacency[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def distance_upper_bound(i: int) -> int:
    """Curve-graph distance bound from an intersection number (diagnostic only)."""
    if i < 0:
        raise ValueError("intersection number must be non-negative")
    if i == 0:
        return 1
    # ceil(2 log2 i) is the least k with 2**k >= i*i
    return (i * i - 1).bit_length() + 2


def distance_lower_bound(i: int, same: bool = False) -> int:
    if same:
        return 0
    return 2 if i > 0 else 1
