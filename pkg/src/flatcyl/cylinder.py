"""Maximal cylinders grown from saddle connections.

A cylinder boundary is found by following the leaf that runs infinitely
close to a saddle connection on one side: at each cone point it continues
along the next saddle connection in the same developed direction, on the
same side.  If it returns to its starting tag the leaf is closed and a
cylinder sits on that side.  Its width is then found by flooding the
developed strip in order of height until a cone point (or the boundary)
stops it.

Heights and strip positions are real field elements scaled by fixed
positive constants, so they are compared exactly without square roots.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key

from .exactnum import Scalar, compare_real, cross, re_part, sign_real
from .flow import (
    FlowError,
    SaddleConnection,
    _enters,
    _merge,
    _segment_key,
    _trace,
    _tri_corner,
    flow_sq,
    saddle_connections,
)
from .mesh import DevMap, identity_map
from .planar import (
    area_form,
    ccw_angle_units,
    clip_convex,
    has_positive_area,
    im_ratio,
    on_segment,
    point_in_triangle,
)


@dataclass(frozen=True)
class CurveTrace:
    """A closed regular geodesic as a cyclic list of polygon segments."""

    segments: tuple  # (polygon, start, end)
    direction: Scalar  # chart direction of the first segment
    vector: Scalar  # holonomy translation of one turn
    key: tuple = field(compare=False, repr=False, default=())

    @property
    def length_sq(self) -> Scalar:
        return self.vector.norm_sq()


@dataclass
class Cylinder:
    core: CurveTrace
    circumference_sq: Scalar
    width_sq: Scalar
    boundary: tuple  # two tuples of SaddleConnection
    pieces: list  # (polygon, chart polygon) parallelogram pieces
    embedded: bool | None = None
    witness: tuple | None = None  # (polygon, piece i, piece j) overlap
    area_form: Scalar | None = None
    height: Scalar | None = None  # scaled width, see _Frame

    @property
    def direction(self) -> Scalar:
        return self.core.direction


class _Frame:
    """Strip coordinates relative to origin o and direction d.

    ``h`` is a positive multiple of the signed distance to the line o + t*d,
    positive on the chosen side; ``t`` a positive multiple of the position
    along d.
    """

    def __init__(self, o, d, side):
        self.o = o
        self.d = d
        self.dc = d.conj()
        self.sign = 1 if side == "left" else -1
        self.ref = d.field.zeta_power(1)

    def h(self, x):
        v = im_ratio(self.dc * (x - self.o), self.ref)
        return v if self.sign > 0 else -v

    def t(self, x):
        return re_part(self.dc * (x - self.o))


def _lerp(a, b, s):
    return a + (b - a) * s


def _clip_param(fa, fb, lo, hi):
    """Narrow [lo, hi] to where fa + s*(fb - fa) >= 0; None if empty."""
    sa, sb = sign_real(fa), sign_real(fb)
    if sa >= 0 and sb >= 0:
        return lo, hi
    if sa < 0 and sb < 0:
        return None
    s = fa / (fa - fb)
    if sa < 0:
        lo = s if compare_real(s, lo) > 0 else lo
    else:
        hi = s if compare_real(s, hi) < 0 else hi
    if compare_real(lo, hi) > 0:
        return None
    return lo, hi


def _window_part(frame, a, b, period):
    """Part of segment [a, b] with h >= 0 and 0 <= t <= period, as parameters."""
    f = a.field
    rng = (f.zero(), f.one())
    ha, hb = frame.h(a), frame.h(b)
    ta, tb = frame.t(a), frame.t(b)
    for fa, fb in ((ha, hb), (ta, tb), (period - ta, period - tb)):
        rng = _clip_param(fa, fb, *rng)
        if rng is None:
            return None
    if rng[0] == rng[1]:
        return None
    y1, y2 = _lerp(a, b, rng[0]), _lerp(a, b, rng[1])
    h1, h2 = frame.h(y1), frame.h(y2)
    if sign_real(h1) <= 0 and sign_real(h2) <= 0:
        return None
    return h1 if compare_real(h1, h2) <= 0 else h2


# --- side leaves -------------------------------------------------------------------


@dataclass(frozen=True)
class SideTag:
    tri: int
    corner: int
    chart_dir: Scalar
    side: str


def tag_for(surface, sc: SaddleConnection, side: str) -> SideTag:
    ti, j = _tri_corner(surface.mesh, sc.start_corner, sc.vector)
    return SideTag(ti, j, sc.vector, side)


def trace_side_leaf(surface, tag: SideTag, limit_sq: Scalar):
    """Follow the side leaf of a tag; returns (cycle, status).

    The cycle is a list of (tag, vector, segments, end corner) pieces in the
    developed frame of the first tag, or None if the leaf is cut off by the
    length bound or the boundary.
    """
    mesh = surface.mesh
    ends = surface.endpoint_classes()
    g = identity_map(mesh.field)
    d = tag.chart_dir
    ti, j = tag.tri, tag.corner
    origin = mesh.tris[ti].pts[j]
    pieces = []
    first = (ti, j, d)
    for _ in range(10_000):
        p = mesh.tris[ti].pts[j]
        start_dev = g(p)
        raw, status, corner, end, word, (tE, gE) = _trace(mesh, ti, p, g, d, ends, origin, limit_sq)
        if status != "hit_cone":
            return None, status
        pieces.append((SideTag(ti, j, g.inverse_vec(d), tag.side), end - start_dev, _merge(raw), corner, word))
        res = mesh.find_corner(gE, corner[0], corner[1], d, ccw=(tag.side == "right"), skip_first=True)
        if res is None:
            return None, "hit_boundary"
        ti, j, g, _ = res
        if (ti, j, g.inverse_vec(d)) == first:
            return pieces, "closed"
    return None, "budget_exhausted"


# --- width flood ---------------------------------------------------------------------


def _start_corner(mesh, ti, j, g, d, side):
    """Triangle corner at the strip origin whose interior touches the strip."""
    right, _ = mesh.wedge(g, ti, j)
    if side == "right" and cross(right, d) == 0:
        res = mesh.corner_cw(g, ti, j)
        if res is None:
            return None
        return res
    return ti, j, g


class _Height:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return compare_real(self.v, other.v) < 0


def _width(surface, frame, period, start):
    """Scaled width of the strip: least height of an obstacle seen from below."""
    mesh = surface.mesh
    ends = surface.endpoint_classes()
    counter = itertools.count()
    ti, j, g = start
    zero = frame.d.field.zero()
    heap = [(_Height(zero), next(counter), ti, g, zero)]
    best = None
    best_pt = None
    seen = set()
    while heap:
        _, _, ti, g, lam = heapq.heappop(heap)
        key = (ti, g.r, g.s)
        if key in seen:
            continue
        seen.add(key)
        if best is not None and compare_real(lam, best) >= 0:
            continue
        pts = mesh.dev_pts(g, ti)
        for k in range(3):
            if mesh.corner_class[(ti, k)] in ends:
                h = frame.h(pts[k])
                if sign_real(h) > 0 and (best is None or compare_real(h, best) < 0):
                    best, best_pt = h, (ti, k, g)
        for m in range(3):
            lam2 = _window_part(frame, pts[m], pts[(m + 1) % 3], period)
            if lam2 is None:
                continue
            if best is not None and compare_real(lam2, best) >= 0:
                continue
            res = mesh.cross_edge(g, ti, m)
            if res is None:
                if sign_real(lam2) > 0 and (best is None or compare_real(lam2, best) < 0):
                    best, best_pt = lam2, None
                elif sign_real(lam2) <= 0:
                    return frame.d.field.zero(), None
                continue
            t2, _, g2 = res
            if (t2, g2.r, g2.s) in seen:
                continue
            heapq.heappush(heap, (_Height(lam2), next(counter), t2, g2, lam2))
    return best, best_pt


def _pieces(surface, frame, para, start):
    """Developed triangles meeting the open parallelogram, clipped to it."""
    mesh = surface.mesh
    out = []
    ti, j, g = start
    stack = [(ti, g)]
    seen = {(ti, g.r, g.s)}
    while stack:
        ti, g = stack.pop()
        pts = list(mesh.dev_pts(g, ti))
        clip = clip_convex(pts, para)
        if has_positive_area(clip):
            out.append((mesh.tris[ti].poly, tuple(g.inverse_point(x) for x in clip), ti, g.key()))
        for m in range(3):
            a, b = pts[m], pts[(m + 1) % 3]
            if not _meets_interior(a, b, para):
                continue
            res = mesh.cross_edge(g, ti, m)
            if res is None:
                continue
            t2, _, g2 = res
            k = (t2, g2.r, g2.s)
            if k not in seen:
                seen.add(k)
                stack.append((t2, g2))
    return out


def _meets_interior(a, b, poly):
    """Open segment (a, b) passes through the interior of a convex polygon."""
    f = a.field
    rng = (f.zero(), f.one())
    n = len(poly)
    for i in range(n):
        u, w = poly[i], poly[(i + 1) % n]
        e = w - u
        fa = im_ratio(e.conj() * (a - u), f.zeta_power(1))
        fb = im_ratio(e.conj() * (b - u), f.zeta_power(1))
        rng = _clip_param(fa, fb, *rng)
        if rng is None:
            return False
    if rng[0] == rng[1]:
        return False
    mid = _lerp(a, b, (rng[0] + rng[1]) * Fraction(1, 2))
    for i in range(n):
        if cross(poly[(i + 1) % n] - poly[i], mid - poly[i]) <= 0:
            return False
    return True


# --- assembling a cylinder ----------------------------------------------------------


def _piece_saddle(surface, piece, d0, g_at):
    mesh = surface.mesh
    tag, vec, segs, corner, word = piece
    t0, t1 = mesh.tris[tag.tri], mesh.tris[corner[0]]
    chart_vec = g_at.inverse_vec(vec)
    return SaddleConnection(
        mesh.corner_class[(tag.tri, tag.corner)],
        mesh.corner_class[corner],
        chart_vec,
        vec.norm_sq(),
        tuple(word),
        (t0.poly, t0.idx[tag.corner]),
        (t1.poly, t1.idx[corner[1]]),
        segs,
    )


def _leaf_maps(surface, tag, pieces):
    """Developed maps at the start of each piece of a closed side leaf."""
    mesh = surface.mesh
    g = identity_map(mesh.field)
    maps = [g]
    d = tag.chart_dir
    for tg, vec, segs, corner, word in pieces[:-1]:
        p = mesh.tris[tg.tri].pts[tg.corner]
        raw, status, c2, end, w, (tE, gE) = _trace(
            mesh, tg.tri, p, maps[-1], d, surface.endpoint_classes(), maps[-1](p), vec.norm_sq()
        )
        res = mesh.find_corner(gE, c2[0], c2[1], d, ccw=(tag.side == "right"), skip_first=True)
        maps.append(res[2])
    return maps


def maximal_cylinder_from(surface, tag: SideTag, limit_sq: Scalar, leaf=None):
    """The maximal cylinder bounded by the side leaf of ``tag``, if it closes."""
    mesh = surface.mesh
    if leaf is None:
        leaf, status = trace_side_leaf(surface, tag, limit_sq)
        if leaf is None:
            return None
    d = tag.chart_dir
    circ = d.field.zero()
    for piece in leaf:
        circ = circ + piece[1]
    o = mesh.tris[tag.tri].pts[tag.corner]
    frame = _Frame(o, d, tag.side)
    period = frame.t(o + circ)
    g0 = identity_map(mesh.field)
    start = _start_corner(mesh, tag.tri, tag.corner, g0, d, tag.side)
    if start is None:
        return None
    hmax, top = _width(surface, frame, period, start)
    if hmax is None or sign_real(hmax) <= 0:
        return None
    # parallelogram: base o -> o + circ, slanted sides along e = d * zeta^(+-1)
    f = d.field
    e = d * f.zeta_power(1 if tag.side == "left" else -1)
    y = e * (hmax / frame.h(o + e))
    para = [o, o + circ, o + circ + y, o + y] if tag.side == "left" else [o, o + y, o + circ + y, o + circ]
    pieces = _pieces(surface, frame, para, start)
    total = f.zero()
    for pc in pieces:
        total = total + area_form(list(pc[1]))
    core = _core_trace(surface, frame, para, pieces, o + y * Fraction(1, 2), d, circ)
    width_sq = _width_sq(d, y)
    maps = _leaf_maps(surface, tag, leaf)
    bottom = tuple(_piece_saddle(surface, pc, d, maps[i]) for i, pc in enumerate(leaf))
    top_cycle = ()
    if top is not None:
        tt, tk, tg = top
        # the strip lies on the far side's opposite half; turn toward d through it
        res = mesh.find_corner(tg, tt, tk, d, ccw=(tag.side == "left"))
        if res is not None:
            t2, j2, g2, _ = res
            other = "right" if tag.side == "left" else "left"
            top_tag = SideTag(t2, j2, g2.inverse_vec(d), other)
            top_leaf, st = trace_side_leaf(surface, top_tag, limit_sq)
            if top_leaf is not None:
                tmaps = _leaf_maps(surface, top_tag, top_leaf)
                top_cycle = tuple(_piece_saddle(surface, pc, d, tmaps[i]) for i, pc in enumerate(top_leaf))
    cyl = Cylinder(
        core=core,
        circumference_sq=circ.norm_sq(),
        width_sq=width_sq,
        boundary=(bottom, top_cycle),
        pieces=[(pc[0], pc[1]) for pc in pieces],
        area_form=total,
        height=hmax,
    )
    cyl._para = para
    cyl._tag = tag
    return cyl


def _width_sq(d, y):
    # squared distance between the base line and the parallel line through o + y
    w = d.conj() * y
    im2x4 = -((w - w.conj()) * (w - w.conj()))
    return im2x4 / (d.norm_sq() * 4)


def _core_trace(surface, frame, para, pieces, mid, d, circ):
    """Trace the closed leaf at mid-height and canonicalize it."""
    mesh = surface.mesh
    for poly, clip, ti, gkey in pieces:
        r, s = gkey
        g = _map_from_key(mesh, r, s)
        p = g.inverse_point(mid)
        tri = mesh.tris[ti]
        if point_in_triangle(p, *tri.pts) and _enters(tri, p, g.inverse_vec(d)):
            budget = circ.norm_sq()
            raw, status, corner, end, word, _ = _trace(
                mesh, ti, p, g, d, surface.stop_classes(), mid, budget, closing=(ti, p, g.r)
            )
            segs = list(_merge(raw))
            if status != "closed":
                raise RuntimeError(f"core leaf did not close ({status})")
            if len(segs) > 1 and segs[0][0] == segs[-1][0] and segs[-1][2] == segs[0][1] and _inside_poly(
                surface, segs[0][0], segs[0][1]
            ):
                segs[0] = (segs[0][0], segs[-1][1], segs[0][2])
                segs.pop()
            segs = tuple(segs)
            key = cyclic_key(surface, segs)
            return CurveTrace(segs, g.inverse_vec(d), circ, key)
    raise RuntimeError("no piece holds the core start point")


def _map_from_key(mesh, r, s):
    return DevMap(r, s, mesh.field.zeta_power(r))


def _inside_poly(surface, poly, p):
    """p is not on the boundary of the polygon (so a split there is artificial)."""
    vs = surface.polygons[poly].vertices
    n = len(vs)
    return not any(on_segment(p, vs[i], vs[(i + 1) % n]) for i in range(n))


def cyclic_key(surface, segments):
    """Rotation- and reversal-invariant identity of a closed trace."""
    fwd = [_segment_key(surface, s) for s in segments]
    rev = [_segment_key(surface, (s[0], s[2], s[1])) for s in reversed(segments)]
    cands = []
    for seq in (fwd, rev):
        for i in range(len(seq)):
            cands.append(tuple(seq[i:] + seq[:i]))
    return min(cands)


# --- embeddedness --------------------------------------------------------------------


def is_embedded_cylinder(surface, cyl: Cylinder) -> bool:
    """No two pieces overlap with positive area inside a common polygon."""
    by_poly = {}
    for i, (poly, clip) in enumerate(cyl.pieces):
        by_poly.setdefault(poly, []).append((i, clip))
    for poly in sorted(by_poly):
        lst = by_poly[poly]
        for x in range(len(lst)):
            for y in range(x + 1, len(lst)):
                inter = clip_convex(list(lst[x][1]), list(lst[y][1]))
                if has_positive_area(inter):
                    cyl.witness = (poly, lst[x][0], lst[y][0])
                    return False
    cyl.witness = None
    return True


# --- enumeration -------------------------------------------------------------------------


def _cyl_cmp(a, b):
    c = compare_real(a.circumference_sq, b.circumference_sq)
    if c:
        return c
    return (a.core.key > b.core.key) - (a.core.key < b.core.key)


def _cylinders_for(surface, scs, limit_sq):
    found = []
    for sc in scs:
        for side in ("left", "right"):
            tag = tag_for(surface, sc, side)
            leaf, status = trace_side_leaf(surface, tag, limit_sq)
            if leaf is None:
                continue
            cyl = maximal_cylinder_from(surface, tag, limit_sq, leaf=leaf)
            if cyl is not None:
                found.append(cyl)
    return found


def enumerate_cylinders(surface, max_circumference_sq: Scalar, workers: int = 1, scs=None):
    """All maximal cylinders of circumference at most the bound, with embedded flags."""
    if scs is None:
        scs = saddle_connections(surface, max_circumference_sq, workers=workers)
    if workers > 1 and len(scs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        # contiguous chunks keep the serial order, so deduplication picks the same representatives
        size = -(-len(scs) // (4 * workers))
        chunks = [scs[i : i + size] for i in range(0, len(scs), size)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(
                ex.map(_cyl_batch, [surface] * len(chunks), chunks, [max_circumference_sq] * len(chunks))
            )
        found = [c for part in parts for c in part]
    else:
        found = _cylinders_for(surface, scs, max_circumference_sq)
    uniq = {}
    for cyl in found:
        if cyl.core.key not in uniq:
            uniq[cyl.core.key] = cyl
    out = list(uniq.values())
    for cyl in out:
        cyl.embedded = is_embedded_cylinder(surface, cyl)
    out.sort(key=cmp_to_key(_cyl_cmp))
    return out


def _cyl_batch(surface, scs, limit_sq):
    out = _cylinders_for(surface, scs, limit_sq)
    for c in out:
        c.__dict__.pop("_tag", None)
    return out


# --- inscribed angle locus ---------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    center: Scalar
    radius_sq: Scalar
    start: Scalar
    end: Scalar
    side: int  # +1: arc left of A->B, -1: right


def inscribed_angle_locus(a: Scalar, b: Scalar, theta: Fraction):
    """The two arcs of points c with angle acb = theta*pi, 0 < theta < 1."""
    theta = Fraction(theta)
    if a == b:
        raise ValueError("degenerate segment")
    if not 0 < theta < 1:
        raise ValueError("angle must lie strictly between 0 and pi")
    f = a.field
    j = theta * f.n / 2
    if j.denominator != 1:
        raise ValueError(f"angle {theta}*pi is not a multiple of 2*pi/{f.n}")
    w = f.zeta_power(int(j))
    icot = -(w + w.conj()) / (w - w.conj())  # i * cot(theta)
    m = (a + b) * Fraction(1, 2)
    half = (b - a) * Fraction(1, 2)
    arcs = []
    for sgn in (1, -1):
        c = m + half * icot * sgn
        arcs.append(Arc(c, (a - c).norm_sq(), a, b, sgn))
    return tuple(arcs)


def on_locus(a, b, c, theta: Fraction) -> bool:
    """Exact test that the angle at c subtended by a and b is theta*pi."""
    if c in (a, b):
        return False
    ang = ccw_angle_units(b - c, a - c)
    return ang == theta or ang == 2 - theta


def crossing_word(surface, segments) -> list[tuple[int, int]]:
    """Glued sides (polygon, edge) through which a trace leaves, in order."""
    out = []
    for poly, _, end in segments:
        vs = surface.polygons[poly].vertices
        for e in range(len(vs)):
            if on_segment(end, vs[e], vs[(e + 1) % len(vs)]) and (poly, e) in surface.partner:
                out.append((poly, e))
                break
    return out


def crossing_counts(surface, segments) -> dict[int, int]:
    """How often a closed trace crosses each gluing, keyed by gluing index."""
    gidx = {}
    for i, g in enumerate(surface.gluings):
        gidx[g.a] = i
        gidx[g.b] = i
    out = {}
    for side in crossing_word(surface, segments):
        out[gidx[side]] = out.get(gidx[side], 0) + 1
    return out


def closed_geodesic(surface, start, direction: Scalar, limit_sq: Scalar) -> CurveTrace:
    """Trace a regular closed geodesic from ``start = (polygon, point)``.

    Raises FlowError if the leaf meets a singular point or does not close
    within squared length ``limit_sq``.
    """
    tr = flow_sq(surface, start, direction, limit_sq)
    if tr.status != "closed":
        raise FlowError(f"trajectory did not close ({tr.status})")
    segs = [s[:3] for s in tr.segments]
    if len(segs) > 1 and segs[0][0] == segs[-1][0] and segs[-1][2] == segs[0][1] and _inside_poly(
        surface, segs[0][0], segs[0][1]
    ):
        segs[0] = (segs[0][0], segs[-1][1], segs[0][2])
        segs.pop()
    segs = tuple(segs)
    return CurveTrace(segs, direction, tr.vector, cyclic_key(surface, segs))
