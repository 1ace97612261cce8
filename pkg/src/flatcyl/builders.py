"""Exact constructions of the example surfaces.

Gluing tables are read off the standard pictures edge by edge; each entry
names the label it realizes.  Edges are numbered counterclockwise from
vertex 0 of the polygon.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd

from .exactnum import MAX_ORDER, Field, Scalar, compare_real, cross, dot_sign, re_part, sign_real
from .planar import line_intersection
from .surface import FlatSurface, SurfaceDescription, SurfaceError, build_surface, glue_auto


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def embed(x: Scalar, target: Field) -> Scalar:
    """Image of x under Q(zeta_M) -> Q(zeta_N), zeta_M -> zeta_N**(N/M)."""
    m, n = x.order, target.n
    if n % m:
        raise ValueError(f"Q(zeta_{m}) does not embed in Q(zeta_{n})")
    return target.from_power_terms((c, j * (n // m)) for j, c in enumerate(x.coeffs) if c)


def _assemble(n, polys, pairs, boundary=(), comments=None, punctures=()) -> FlatSurface:
    f = Field(n)
    desc = SurfaceDescription(n)
    for name, verts in polys.items():
        desc.polygons.append((name, list(verts)))
    for a, b in pairs:
        desc.gluings.append(glue_auto(f, polys, a, b))
    desc.boundary = list(boundary)
    desc.punctures = list(punctures)
    desc.comments = dict(comments or {})
    return build_surface(desc)


def torus(n: int = 4) -> FlatSurface:
    """Unit square with opposite sides identified by translations."""
    f = Field(n)
    one, i = f.one(), f.zeta_power(n // 4) if n % 4 == 0 else None
    if i is None:
        raise ValueError("torus needs an order divisible by 4")
    sq = [f.zero(), one, one + i, i]
    return _assemble(n, {"s": sq}, [(("s", 0), ("s", 2)), (("s", 1), ("s", 3))])


def regular_4g_gon(g: int) -> FlatSurface:
    """Regular 4g-gon with vertices at the 4g-th roots of unity.

    In every block of four consecutive edges 4j..4j+3, edge 4j is glued to
    edge 4j+2 and edge 4j+3 to edge 4j+5 (the first edge of the next block).
    For g = 2 this is the octagon picture with labels a, b, c, d.
    """
    if g < 2:
        raise ValueError("g must be at least 2")
    n = 4 * g
    f = Field(n)
    verts = [f.zeta_power(j) for j in range(n)]
    pairs = []
    for j in range(g):
        pairs.append((("P", 4 * j), ("P", 4 * j + 2)))
        pairs.append((("P", 4 * j + 3), ("P", (4 * j + 5) % n)))
    return _assemble(n, {"P": verts}, pairs)


def twelve_gon_genus3() -> FlatSurface:
    """Equilateral triangle of side 4 with each side cut into four unit edges.

    Edges 0-3 run along the bottom, 4-7 up the right side, 8-11 down the
    left side.  Labels: a = 11/1, b = 10/0, c = 7/9, d = 6/8, e = 3/5,
    f = 2/4.
    """
    n = 6
    f = Field(n)
    w2, w4 = f.zeta_power(2), f.zeta_power(4)
    four = f.rational(4)
    verts = [f.rational(j) for j in range(4)]
    verts += [four + w2 * j for j in range(4)]
    apex = four + w2 * 4
    verts += [apex + w4 * j for j in range(4)]
    pairs = [
        (("T", 11), ("T", 1)),  # a
        (("T", 10), ("T", 0)),  # b
        (("T", 7), ("T", 9)),  # c
        (("T", 6), ("T", 8)),  # d
        (("T", 3), ("T", 5)),  # e
        (("T", 2), ("T", 4)),  # f
    ]
    return _assemble(n, {"T": verts}, pairs)


def building_block(chords: int = 3) -> FlatSurface:
    """Equilateral triangle plus a buffer bounded by a circumscribed polygonal arc.

    The triangle has vertices 0, 2, 2*zeta_6.  Its bottom side is cut into
    b = [0, 1], a = [1, 2] and its left side into a = [0, zeta_6],
    b = [zeta_6, 2*zeta_6]; the two a's and the two b's are glued by
    rotations through pi/3.  The buffer is the region between the right
    side and the circular arc of central angle 4*pi/3 tangent to the
    bottom side at 2 and to the left side at the apex; it is replaced by
    ``chords`` tangent segments, so the polygon contains the round region.
    Arc edges are boundary.
    """
    if chords < 3:
        raise ValueError("chords must be at least 3")
    n = _lcm(12, 3 * chords)
    if n > MAX_ORDER:
        raise ValueError(f"{chords} chords need order {n} > {MAX_ORDER}")
    f = Field(n)
    w6 = f.zeta_power(n // 6)
    two = f.rational(2)
    center, radius = circle_of_block(f)
    # tangent points at angles -pi/2 + j*(4pi/3)/chords; corners halfway between
    step = n // 3 // chords  # 4pi/3/chords in units of 2pi/n is 2n/(3 chords); half of it
    half_cos = (f.zeta_power(step) + f.zeta_power(-step)) / 2
    arc = []
    for j in range(chords):
        mid = -n // 4 + (2 * j + 1) * step
        arc.append(center + f.zeta_power(mid) * radius / half_cos)
    verts = [f.zero(), f.one(), two] + arc + [two * w6, w6]
    k = len(verts)
    polys = {"B": verts}
    pairs = [
        (("B", 1), ("B", k - 1)),  # a: [1, 2] on the bottom, [0, zeta_6] on the left
        (("B", 0), ("B", k - 2)),  # b: [0, 1] on the bottom, [zeta_6, 2 zeta_6] on the left
    ]
    boundary = [("B", e) for e in range(2, k - 2)]
    return _assemble(n, polys, pairs, boundary, {"B": f"building block, {chords} buffer chords"})


def circle_of_block(f: Field):
    """Center and radius of the buffer circle for the side-2 triangle."""
    # radius 2/sqrt(3); i*sqrt(3) = 2*zeta_6 - 1
    w6 = f.zeta_power(f.n // 6)
    i_over_sqrt3 = (w6 * 2 - 1) / 3
    radius = (i_over_sqrt3 * 2) * f.zeta_power(-f.n // 4)
    return f.rational(2) + i_over_sqrt3 * 2, radius


def fig7_square_tiled() -> FlatSurface:
    """8 x 1 horizontal cylinder with interval gluings a, b, c, d and sides e.

    Bottom, left to right: a = [0, 3], b = [3, 4], c = [4, 6], d = [6, 8].
    Top, left to right: d = [0, 2], c = [2, 4], b = [4, 5], a = [5, 8].
    """
    f = Field(4)
    i = f.zeta_power(1)
    # edges: 0 a, 1 b, 2 c, 3 d (bottom); 4 e (right); 5 a, 6 b, 7 c, 8 d (top); 9 e (left)
    verts = [f.rational(0), f.rational(3), f.rational(4), f.rational(6), f.rational(8),
             f.rational(8) + i, f.rational(5) + i, f.rational(4) + i, f.rational(2) + i, i]
    pairs = [
        (("R", 0), ("R", 5)),  # a
        (("R", 1), ("R", 6)),  # b
        (("R", 2), ("R", 7)),  # c
        (("R", 3), ("R", 8)),  # d
        (("R", 4), ("R", 9)),  # e
    ]
    return _assemble(4, {"R": verts}, pairs, comments={"R": "one horizontal cylinder of width 8"})


def fig6_translation_h11() -> FlatSurface:
    """Regular decagon with opposite sides glued by translations.

    Vertices are the tenth roots of unity inside Q(zeta_20); labels a..e
    are edges 0..4, glued to edges 5..9.  Vertices alternate between two
    cone points of angle 4*pi.  The order 20 leaves room for quarter-turn
    gluings, which the slit-and-cap surgery needs.
    """
    f = Field(20)
    verts = [f.zeta_power(2 * j) for j in range(10)]
    pairs = [(("D", e), ("D", e + 5)) for e in range(5)]  # a, b, c, d, e
    return _assemble(20, {"D": verts}, pairs, comments={"D": "genus two, two cone points"})


# --- deformation of a single-cylinder square-tiled surface -----------------------


@dataclass(frozen=True)
class IntervalTilt:
    interval: int  # index among the bottom edges, left to right
    psi: Fraction  # tilt of the top copy, as a multiple of pi; the bottom copy gets -psi
    adjust: Fraction | None = Fraction(1)  # length factor; None = solve for equal vertical sides


@dataclass(frozen=True)
class DeformationSpec:
    tilts: tuple[IntervalTilt, ...]
    weights: tuple[int, ...]  # intersection number of the vertical curve with each tilted interval

    def __post_init__(self):
        if len(self.tilts) != len(self.weights):
            raise ValueError("one weight per tilted interval")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")

    def holonomy_angle(self) -> Fraction:
        """sum n_i theta_i with theta_i = -2 psi_i, reduced mod 2 (units of pi)."""
        return sum((-2 * t.psi * n for t, n in zip(self.tilts, self.weights)), Fraction(0)) % 2

    @property
    def balanced(self) -> bool:
        return self.holonomy_angle() == 0


def _rectangle_layout(desc: SurfaceDescription):
    if len(desc.polygons) != 1:
        raise SurfaceError("not-square-tiled", "expected a single rectangle-shaped polygon")
    name, verts = desc.polygons[0]
    n = len(verts)
    kinds = []
    for j in range(n):
        w = verts[(j + 1) % n] - verts[j]
        if w.is_rational():
            kinds.append("bottom" if w.to_fraction() > 0 else "top")
        elif (w + w.conj()).is_zero():
            kinds.append("side")
        else:
            kinds.append("?")
    pattern = "".join({"bottom": "B", "top": "T", "side": "S"}.get(k, "?") for k in kinds)
    if not re.fullmatch(r"B+ST+S", pattern):
        raise SurfaceError("not-square-tiled", f"edge pattern {pattern} is not bottom/side/top/side")
    return name, verts, kinds


def deform_square_tiled(base, spec: DeformationSpec, allow_holonomy: bool = False) -> FlatSurface:
    """Tilt chosen top/bottom intervals of a one-cylinder square-tiled surface.

    The top copy of interval i is turned by psi_i and the bottom copy by
    -psi_i, so the gluing between them rotates by theta_i = -2 psi_i.  The
    vertical sides stay vertical; their lengths agree when
    sum L_i sin(psi_i) = 0, which a tilt with ``adjust=None`` is rescaled
    to achieve (the factor is a field element in general).  Unbalanced
    specs are rejected unless ``allow_holonomy``.
    """
    desc = base.description() if isinstance(base, FlatSurface) else base
    if not spec.balanced and not allow_holonomy:
        raise SurfaceError(
            "holonomy-constraint", f"sum n_i theta_i = {spec.holonomy_angle()}*pi is not 0 mod 2pi"
        )
    name, verts, kinds = _rectangle_layout(desc)
    n_edges = len(verts)
    bottoms = [j for j, k in enumerate(kinds) if k == "bottom"]
    partner = {}
    for a, ea, b, eb, _ in desc.gluings:
        partner[(a, ea)] = eb
        partner[(b, eb)] = ea
    order = desc.order
    for t in spec.tilts:
        if not 0 <= t.interval < len(bottoms):
            raise SurfaceError("unknown-edge", f"no bottom interval {t.interval}")
        order = _lcm(order, 2 * t.psi.denominator)
    order = _lcm(order, 4)
    if order > MAX_ORDER:
        raise SurfaceError("order-too-large", f"tilts need order {order} > {MAX_ORDER}")
    f = Field(order)
    vecs = [embed(verts[(j + 1) % n_edges] - verts[j], f) for j in range(n_edges)]
    rot = {}  # bottom edge -> (top edge, r) with psi = r * 2pi/order
    for t in spec.tilts:
        e = bottoms[t.interval]
        top = partner[(name, e)]
        if kinds[top] != "top":
            raise SurfaceError("not-square-tiled", f"bottom interval {t.interval} is not glued to the top")
        r = t.psi * order / 2
        rot[e] = (top, int(r))
    lengths = {}
    for t in spec.tilts:
        e = bottoms[t.interval]
        lengths[e] = vecs[e] * (t.adjust if t.adjust is not None else 1)
    auto = [bottoms[t.interval] for t in spec.tilts if t.adjust is None]
    if auto:
        # sum L_e (z^r - z^-r) = 0, solved for the first automatic interval
        def s(e):
            r = rot[e][1]
            return f.zeta_power(r) - f.zeta_power(-r)

        e0 = auto[0]
        if s(e0).is_zero():
            raise SurfaceError("degenerate-polygon", "cannot rescale an untilted interval")
        rest = f.zero()
        for e in rot:
            if e != e0:
                rest = rest + lengths[e] * s(e)
        lengths[e0] = -rest / s(e0)
        if not lengths[e0].is_real() or sign_real(lengths[e0]) <= 0:
            raise SurfaceError("degenerate-polygon", "length adjustment is not positive")
    for e, (top, r) in rot.items():
        vecs[e] = lengths[e] * f.zeta_power(-r)
        vecs[top] = -(lengths[e] * f.zeta_power(r))
    sides = [j for j, k in enumerate(kinds) if k == "side"]
    right, left = sides
    vecs[right] = f.zero()
    vecs[right] = -sum(vecs, f.zero())
    if vecs[right] != -vecs[left]:
        raise SurfaceError("unequal-sides", "vertical sides differ in length after the tilts")
    pts = [embed(verts[0], f)]
    for w in vecs[:-1]:
        pts.append(pts[-1] + w)
    polys = {name: pts}
    pairs = [((a, ea), (b, eb)) for a, ea, b, eb, _ in desc.gluings]
    comments = dict(desc.comments)
    comments[name] = "tilted " + ", ".join(f"{t.interval}:{t.psi}pi" for t in spec.tilts)
    return _assemble(order, polys, pairs, [tuple(x) for x in desc.boundary], comments)


def crossing_rotation(surface: FlatSurface, crossings) -> int:
    """Total rotation index of a sequence of edge crossings ((poly, edge), count)."""
    total = 0
    for side, count in crossings:
        q, e, k = surface.partner[side]
        total += k * count
    return total % surface.order


# --- slit and cap ----------------------------------------------------------------


@dataclass(frozen=True)
class SlitSpec:
    cone: int  # index of a cone class of angle 4*pi
    direction: Fraction  # slit angle as a multiple of pi, in the chart of the cone's first corner
    eps: Fraction | Scalar | None = None  # slit length; default from the shortest saddle connection


def default_slit_length(surface: FlatSurface, cone: int) -> Fraction:
    """A rational length at most 1/8 of the shortest saddle connection at the cone."""
    from .flow import saddle_connections

    f = surface.field
    bound = None
    for pi, p in enumerate(surface.polygons):
        for e in range(len(p)):
            l2 = p.edge_vector(e).norm_sq()
            if bound is None or compare_real(l2, bound) < 0:
                bound = l2
    shortest = None
    while shortest is None:
        for sc in saddle_connections(surface, bound):
            if cone in (sc.start_class, sc.end_class):
                if shortest is None or compare_real(sc.length_sq, shortest) < 0:
                    shortest = sc.length_sq
        bound = bound * 4
    eps = Fraction(complex(shortest).real ** 0.5 / 8).limit_denominator(64)
    while compare_real(f.rational(eps * eps * 64), shortest) > 0:
        eps = eps * Fraction(15, 16)
    return eps


def slit_and_cap(surface: FlatSurface, spec: SlitSpec) -> FlatSurface:
    """Cut four slits at a 4*pi cone and glue a square of side 2*eps into the hole.

    A polygon holding a slit is cut along the whole line of the slit, from
    the cone corner to where the line leaves the polygon; the slit tip
    becomes a flat vertex on the cut.  Edges glued to a cut edge are
    subdivided to match.  The square's corners go to the slit tips, which
    become cone points of angle 5*pi/2, and the four copies of the old cone
    point become regular points.  Every corner angle must stay a multiple
    of 2*pi/N, so polygon edges met by a cut must point along roots of unity.
    """
    from .flow import class_corners

    theta = Fraction(spec.direction)
    n = _lcm(_lcm(surface.order, 4), 2 * theta.denominator)
    if n > MAX_ORDER:
        raise SurfaceError("order-too-large", f"slit direction needs order {n} > {MAX_ORDER}")
    if n != surface.order:
        surface = embed_surface(surface, n)
    f = surface.field
    if not 0 <= spec.cone < len(surface.cone_classes):
        raise SurfaceError("unknown-cone", f"no vertex class {spec.cone}")
    cls = surface.cone_classes[spec.cone]
    if cls.angle != 4 or cls.boundary or cls.kind != "cone":
        raise SurfaceError("wrong-cone", f"vertex class {spec.cone} has angle {cls.angle}*pi, need an interior 4*pi cone")
    eps = spec.eps if spec.eps is not None else default_slit_length(surface, spec.cone)
    eps = embed(eps, f) if isinstance(eps, Scalar) else f.rational(eps)
    if not eps.is_real() or sign_real(eps) <= 0:
        raise SurfaceError("bad-slit", "slit length must be a positive real")
    mesh = surface.mesh
    d = f.zeta_power(int(theta * n / 2))
    slits = []  # counterclockwise around the cone: (mesh triangle, corner, chart direction)
    for ti, j, g in class_corners(mesh, spec.cone):
        for dd in (d, -d):
            if mesh.in_corner(g, ti, j, dd):
                slits.append((ti, j, g.inverse_vec(dd)))
    if len(slits) != 4:
        raise SurfaceError("bad-slit", f"expected four sectors containing the slit direction, found {len(slits)}")
    _check_leaves(surface, slits, eps)

    zero, one = f.zero(), f.one()
    pieces = {pi: [[(v, ("e", pi, e, zero, one)) for e, v in enumerate(p.vertices)]] for pi, p in enumerate(surface.polygons)}
    for c, (ti, j, loc) in enumerate(slits):
        tri = mesh.tris[ti]
        _cut(surface, pieces[tri.poly], c, tri.pts[j], loc, eps)

    cuts = {}
    for plist in pieces.values():
        for piece in plist:
            for _, tag in piece:
                if tag[0] == "e":
                    cuts.setdefault((tag[1], tag[2]), []).extend([tag[3], tag[4]])
    for side in list(cuts):
        if side in surface.partner:
            q, e2, _ = surface.partner[side]
            cuts.setdefault((q, e2), []).extend(one - t for t in cuts[side])
    polys, comments, where = {}, dict(surface.comments), {}
    for pi, plist in pieces.items():
        p = surface.polygons[pi]
        for k, piece in enumerate(plist):
            name = p.name if len(plist) == 1 else f"{p.name}_{k}"
            if len(plist) > 1:
                comments[name] = f"piece of {p.name}"
            verts = []
            for v, tag in piece:
                if tag[0] != "e":
                    where[tag] = (name, len(verts))
                    verts.append(v)
                    continue
                _, pi2, e, t0, t1 = tag
                inner = sorted(
                    {t for t in cuts.get((pi2, e), []) if compare_real(t, t0) > 0 and compare_real(t, t1) < 0},
                    key=cmp_to_key(compare_real),
                )
                a0, a1 = p.vertices[e], p.vertices[(e + 1) % len(p)]
                ts = [t0] + inner + [t1]
                for x in range(len(ts) - 1):
                    where[("e", pi2, e, ts[x], ts[x + 1])] = (name, len(verts))
                    verts.append(a0 + (a1 - a0) * ts[x])
            polys[name] = verts
    pairs, boundary = [], []
    for tag, loc in sorted(where.items(), key=lambda kv: kv[1]):
        if tag[0] == "e":
            side = (tag[1], tag[2])
            if side in surface.boundary_edges:
                boundary.append(loc)
            elif side in surface.partner:
                q, e2, _ = surface.partner[side]
                other = where[("e", q, e2, one - tag[4], one - tag[3])]
                if loc < other:
                    pairs.append((loc, other))
        elif tag[0] == "c" and tag[2] == one:
            pairs.append((loc, where[("c", tag[1], tag[3], one)]))
    # square C0 M0 C1 M1 C2 M2 C3 M3; Ci is the tip of slit i, Mi the old cone point between slits i and i+1
    u, i = slits[0][2], f.zeta_power(n // 4)
    corners = [zero, u * eps * 2, (u + u * i) * eps * 2, u * i * eps * 2]
    square = []
    for c in range(4):
        square.append(corners[c])
        square.append((corners[c] + corners[(c + 1) % 4]) / 2)
    polys["cap"] = square
    comments["cap"] = "square glued over the slits"
    for c in range(4):
        pairs.append((("cap", 2 * c), where[("s", c, "ccw")]))
        pairs.append((("cap", 2 * c + 1), where[("s", (c + 1) % 4, "cw")]))
    punct = []
    for c in surface.cone_classes:
        if c.kind == "puncture":
            pi, v = c.cycle[0]
            sub = [loc for tag, loc in where.items() if tag[0] == "e" and tag[1:3] == (pi, v) and tag[3] == zero]
            punct.append(sub[0])
    return _assemble(n, polys, pairs, boundary, comments, punct)


def embed_surface(surface: FlatSurface, order: int) -> FlatSurface:
    """The same surface presented over Q(zeta_order)."""
    f = Field(order)
    scale = order // surface.order
    if order % surface.order:
        raise ValueError(f"order {surface.order} does not divide {order}")
    desc = surface.description()
    desc.order = order
    desc.polygons = [(name, [embed(v, f) for v in verts]) for name, verts in desc.polygons]
    desc.gluings = [(a, ea, b, eb, k * scale) for a, ea, b, eb, k in desc.gluings]
    return build_surface(desc)


def _in_open_wedge(right, left, d) -> bool:
    c1, c2 = cross(right, d), cross(d, left)
    if cross(right, left) > 0:
        return c1 > 0 and c2 > 0
    if c1 == 0 and dot_sign(right, d) > 0 or c2 == 0 and dot_sign(left, d) > 0:
        return False
    return c1 > 0 or c2 > 0


def _cut(surface, plist, c, v, loc, eps):
    """Split the piece with corner v around direction loc along the line v + t*loc."""
    f = surface.field
    for k, piece in enumerate(plist):
        m = len(piece)
        for a in range(m):
            if piece[a][0] != v:
                continue
            if _in_open_wedge(piece[(a + 1) % m][0] - v, piece[a - 1][0] - v, loc):
                break
        else:
            continue
        break
    else:
        raise SurfaceError("bad-slit", "slit runs along an edge or along another slit (a saddle connection direction)")
    seq = piece[a:] + piece[:a]
    best = None
    for x in range(1, m - 1):
        p, q = seq[x][0], seq[x + 1][0]
        s1, s2 = cross(loc, p - v), cross(loc, q - v)
        if s1 * s2 > 0 or (s1 == 0 and s2 == 0):
            continue
        hit = p if s1 == 0 else q if s2 == 0 else line_intersection(v, loc, p, q)
        lam = re_part((hit - v) * loc.conj())
        if sign_real(lam) <= 0:
            continue
        if best is None or compare_real(lam, best[0]) < 0:
            best = (lam, x, hit)
    lam, x, hit = best
    if compare_real(lam, eps) <= 0:
        raise SurfaceError("bad-slit", "slit reaches the far side of its polygon; choose a shorter slit")
    if hit == seq[x][0]:
        bi = x
    elif hit == seq[x + 1][0]:
        bi = x + 1
    else:
        tag = seq[x][1]
        if tag[0] != "e":
            raise SurfaceError("bad-slit", "slit line meets another slit line")
        _, pi, e, t0, t1 = tag
        poly = surface.polygons[pi]
        a0, a1 = poly.vertices[e], poly.vertices[(e + 1) % len(poly)]
        t = re_part((hit - a0) * (a1 - a0).conj()) / (a1 - a0).norm_sq()
        seq = seq[:x] + [(seq[x][0], ("e", pi, e, t0, t)), (hit, ("e", pi, e, t, t1))] + seq[x + 1 :]
        bi = x + 1
    tip = v + loc * eps
    tau = eps / lam
    one = f.one()
    cw_side = seq[:bi] + [(hit, ("c", c, one, tau)), (tip, ("s", c, "cw"))]
    ccw_side = [(v, ("s", c, "ccw")), (tip, ("c", c, tau, one))] + seq[bi:]
    plist[k : k + 1] = [cw_side, ccw_side]


def _check_leaves(surface, slits, eps):
    """The four leaves of length eps must not run into a singular point."""
    from .flow import flow_sq

    mesh = surface.mesh
    for ti, j, loc in slits:
        tri = mesh.tris[ti]
        start = tri.pts[j] + loc * (eps / 2)
        tr = flow_sq(surface, (tri.poly, start), loc, eps * eps / 4)
        if tr.status == "hit_cone":
            raise SurfaceError("bad-slit", f"leaf hits vertex class {tr.end_class} within the slit length")
