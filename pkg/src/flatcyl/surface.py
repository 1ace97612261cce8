"""Flat surfaces presented as Euclidean polygons glued along edges.

Edge ``e`` of a polygon runs from vertex ``e`` to vertex ``e + 1``.  A
gluing ``(A, B, k)`` identifies edge A with edge B reversed, with the
rotational part ``zeta**k``: the edge vector of B equals ``-zeta**k``
times the edge vector of A.  Directions crossing from A's polygon into
B's polygon are multiplied by ``zeta**k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .exactnum import Field, Scalar, compare_length_sq, sign_im
from .planar import area_float, area_form, ccw_angle_units, segments_intersect


class SurfaceError(ValueError):
    """Invalid surface presentation; ``code`` names the violated invariant."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class Polygon:
    name: str
    vertices: tuple[Scalar, ...]

    def __len__(self):
        return len(self.vertices)

    def edge_vector(self, e: int) -> Scalar:
        n = len(self.vertices)
        return self.vertices[(e + 1) % n] - self.vertices[e % n]


@dataclass(frozen=True)
class Gluing:
    a: tuple[int, int]
    b: tuple[int, int]
    k: int


@dataclass(frozen=True)
class ConeClass:
    index: int
    cycle: tuple[tuple[int, int], ...]
    angle: Fraction  # multiple of pi
    kind: str  # "cone", "marked" or "puncture"
    boundary: bool = False

    @property
    def is_singular(self) -> bool:
        return self.kind != "marked"


@dataclass
class SurfaceDescription:
    """Parsed-but-unvalidated surface data, as read from a surface file."""

    order: int
    polygons: list[tuple[str, list[Scalar]]] = field(default_factory=list)
    gluings: list[tuple[str, int, str, int, int]] = field(default_factory=list)
    boundary: list[tuple[str, int]] = field(default_factory=list)
    punctures: list[tuple[str, int]] = field(default_factory=list)
    comments: dict[str, str] = field(default_factory=dict)


class FlatSurface:
    """Validated glued-polygon complex with derived vertex classes."""

    def __init__(self, field_, polygons, gluings, boundary=(), punctures=(), comments=None):
        self.field = field_
        self.polygons = tuple(polygons)
        self.gluings = tuple(gluings)
        self.boundary_edges = frozenset(boundary)
        self.puncture_corners = frozenset(punctures)
        self.comments = dict(comments or {})
        self.index = {p.name: i for i, p in enumerate(self.polygons)}
        self.partner: dict[tuple[int, int], tuple[int, int, int]] = {}
        for g in self.gluings:
            self.partner[g.a] = (g.b[0], g.b[1], g.k)
            self.partner[g.b] = (g.a[0], g.a[1], (-g.k) % self.order)
        self._validate()

    @property
    def order(self) -> int:
        return self.field.n

    # --- construction checks ----------------------------------------------

    def _validate(self):
        for p in self.polygons:
            _check_polygon(p)
        seen = set()
        for g in self.gluings:
            if g.a == g.b:
                raise SurfaceError("self-glued-edge", f"edge {self.edge_name(g.a)} glued to itself")
            for side in (g.a, g.b):
                pi, e = side
                if not (0 <= pi < len(self.polygons)) or not (0 <= e < len(self.polygons[pi])):
                    raise SurfaceError("unknown-edge", f"edge {self.edge_name(side)} does not exist")
                if side in seen:
                    raise SurfaceError("duplicate-edge", f"edge {self.edge_name(side)} glued twice")
                seen.add(side)
            ea = self.edge_vector(g.a)
            eb = self.edge_vector(g.b)
            if compare_length_sq(ea, eb) != 0:
                raise SurfaceError(
                    "length-mismatch", f"edges {self.edge_name(g.a)} and {self.edge_name(g.b)} differ in length"
                )
            if eb != -(ea * self.field.zeta_power(g.k)):
                raise SurfaceError(
                    "orientation-mismatch",
                    f"edge {self.edge_name(g.b)} is not -u({g.k}) times edge {self.edge_name(g.a)}",
                )
        for side in self.boundary_edges:
            if side in seen:
                raise SurfaceError("duplicate-edge", f"edge {self.edge_name(side)} both glued and boundary")
            seen.add(side)
        for pi, p in enumerate(self.polygons):
            for e in range(len(p)):
                if (pi, e) not in seen:
                    raise SurfaceError("unmatched-edge", f"edge {self.edge_name((pi, e))} is not glued")
        # connectivity of the polygon adjacency graph
        adj = {i: set() for i in range(len(self.polygons))}
        for g in self.gluings:
            adj[g.a[0]].add(g.b[0])
            adj[g.b[0]].add(g.a[0])
        stack, reached = [0], {0}
        while stack:
            for j in adj[stack.pop()]:
                if j not in reached:
                    reached.add(j)
                    stack.append(j)
        if len(reached) != len(self.polygons):
            missing = sorted(self.polygons[i].name for i in set(adj) - reached)
            raise SurfaceError("disconnected", f"polygons {', '.join(missing)} unreachable")
        for c in self.cone_classes:
            if not c.boundary and c.kind != "puncture" and c.angle < 2:
                raise SurfaceError(
                    "illegal-cone-angle",
                    f"vertex class at {self.corner_name(c.cycle[0])} has angle {c.angle}*pi < 2*pi",
                )

    # --- naming -------------------------------------------------------------

    def edge_name(self, side) -> str:
        return f"{self.polygons[side[0]].name}.{side[1]}"

    def corner_name(self, corner) -> str:
        return f"{self.polygons[corner[0]].name}.{corner[1]}"

    def edge_vector(self, side) -> Scalar:
        return self.polygons[side[0]].edge_vector(side[1])

    def vertex(self, corner) -> Scalar:
        return self.polygons[corner[0]].vertices[corner[1]]

    # --- derived data -------------------------------------------------------

    @cached_property
    def corner_angles(self) -> dict[tuple[int, int], Fraction]:
        out = {}
        for pi, p in enumerate(self.polygons):
            n = len(p)
            for v in range(n):
                u = p.vertices[(v + 1) % n] - p.vertices[v]
                w = p.vertices[(v - 1) % n] - p.vertices[v]
                out[(pi, v)] = ccw_angle_units(u, w)
        return out

    def next_corner_ccw(self, corner):
        """Corner met when turning counterclockwise across the incoming edge."""
        pi, v = corner
        n = len(self.polygons[pi])
        inc = (pi, (v - 1) % n)
        if inc not in self.partner:
            return None
        q, e, _ = self.partner[inc]
        return (q, e)

    def next_corner_cw(self, corner):
        pi, v = corner
        if (pi, v) not in self.partner:
            return None
        q, e, _ = self.partner[(pi, v)]
        return (q, (e + 1) % len(self.polygons[q]))

    @cached_property
    def cone_classes(self) -> tuple[ConeClass, ...]:
        angles = self.corner_angles
        done = set()
        classes = []
        for pi, p in enumerate(self.polygons):
            for v in range(len(p)):
                start = (pi, v)
                if start in done:
                    continue
                # rewind clockwise to a boundary end if there is one
                cur, boundary = start, False
                while True:
                    prev = self.next_corner_cw(cur)
                    if prev is None:
                        boundary = True
                        break
                    if prev == start:
                        break
                    cur = prev
                first = cur
                cycle = [first]
                while True:
                    nxt = self.next_corner_ccw(cycle[-1])
                    if nxt is None:
                        boundary = True
                        break
                    if nxt == first:
                        break
                    cycle.append(nxt)
                done.update(cycle)
                angle = sum((angles[c] for c in cycle), Fraction(0))
                if any(c in self.puncture_corners for c in cycle):
                    kind = "puncture"
                elif angle == 2 and not boundary:
                    kind = "marked"
                else:
                    kind = "cone"
                classes.append(ConeClass(len(classes), tuple(cycle), angle, kind, boundary))
        return tuple(classes)

    @cached_property
    def corner_class(self) -> dict[tuple[int, int], int]:
        return {c: cls.index for cls in self.cone_classes for c in cls.cycle}

    @cached_property
    def area_form(self) -> Scalar:
        acc = self.field.zero()
        for p in self.polygons:
            acc = acc + area_form(p.vertices)
        return acc

    @property
    def area(self) -> float:
        return area_float(self.area_form)

    @property
    def has_boundary(self) -> bool:
        return bool(self.boundary_edges)

    @cached_property
    def mesh(self):
        from .mesh import Mesh

        return Mesh(self)

    def endpoint_classes(self) -> frozenset[int]:
        """Vertex classes where saddle connections may start and end.

        Cone points and punctures; when a closed surface has neither (a flat
        torus), its marked points play that role.
        """
        sing = frozenset(c.index for c in self.cone_classes if c.is_singular)
        if sing:
            return sing
        return frozenset(c.index for c in self.cone_classes)

    def stop_classes(self) -> frozenset[int]:
        """Vertex classes where a straight trajectory terminates."""
        return frozenset(c.index for c in self.cone_classes if c.is_singular)

    def description(self) -> SurfaceDescription:
        desc = SurfaceDescription(self.order)
        for p in self.polygons:
            desc.polygons.append((p.name, list(p.vertices)))
        for g in self.gluings:
            desc.gluings.append((self.polygons[g.a[0]].name, g.a[1], self.polygons[g.b[0]].name, g.b[1], g.k))
        for pi, e in sorted(self.boundary_edges):
            desc.boundary.append((self.polygons[pi].name, e))
        for cls in self.cone_classes:
            if cls.kind == "puncture":
                pi, v = cls.cycle[0]
                desc.punctures.append((self.polygons[pi].name, v))
        desc.comments = dict(self.comments)
        return desc

    def __repr__(self):
        return f"<FlatSurface N={self.order} polygons={len(self.polygons)} gluings={len(self.gluings)}>"


def _check_polygon(p: Polygon):
    vs = p.vertices
    n = len(vs)
    if n < 3:
        raise SurfaceError("non-simple-polygon", f"polygon {p.name} has fewer than 3 vertices")
    for i in range(n):
        if vs[i] == vs[(i + 1) % n]:
            raise SurfaceError("non-simple-polygon", f"polygon {p.name} has a zero-length edge {i}")
    for i in range(n):
        for j in range(i + 1, n):
            hit = segments_intersect(vs[i], vs[(i + 1) % n], vs[j], vs[(j + 1) % n])
            if hit is None:
                continue
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent and hit[0] == "point":
                continue
            raise SurfaceError("non-simple-polygon", f"polygon {p.name} edges {i} and {j} intersect")
    if sign_im(area_form(vs)) <= 0:
        raise SurfaceError("negative-orientation", f"polygon {p.name} is not counterclockwise")


def build_surface(desc: SurfaceDescription) -> FlatSurface:
    """Validate a description and return the surface it presents."""
    field_ = Field(desc.order)
    polys = []
    names = {}
    for name, verts in desc.polygons:
        if name in names:
            raise SurfaceError("duplicate-polygon", f"polygon name {name} repeated")
        names[name] = len(polys)
        polys.append(Polygon(name, tuple(verts)))

    def side(name, e):
        if name not in names:
            raise SurfaceError("unknown-edge", f"no polygon named {name}")
        return (names[name], e)

    gluings = [Gluing(side(a, ea), side(b, eb), k % desc.order) for a, ea, b, eb, k in desc.gluings]
    boundary = [side(a, e) for a, e in desc.boundary]
    punct = [side(a, v) for a, v in desc.punctures]
    return FlatSurface(field_, polys, gluings, boundary, punct, desc.comments)


def glue_auto(field_: Field, polys: dict[str, list[Scalar]], a, b) -> tuple[str, int, str, int, int]:
    """Gluing tuple for edges a=(name, e), b=(name, e) with the rotation solved for."""
    pa, pb = polys[a[0]], polys[b[0]]
    ea = pa[(a[1] + 1) % len(pa)] - pa[a[1]]
    eb = pb[(b[1] + 1) % len(pb)] - pb[b[1]]
    for k in range(field_.n):
        if eb == -(ea * field_.zeta_power(k)):
            return (a[0], a[1], b[0], b[1], k)
    raise SurfaceError("orientation-mismatch", f"no rotation maps edge {a} onto edge {b}")


def cone_points(surface: FlatSurface) -> list[ConeClass]:
    return list(surface.cone_classes)


def cone_angle_multiset(surface: FlatSurface, include_marked: bool = False) -> list[Fraction]:
    return sorted(
        (c.angle for c in surface.cone_classes if include_marked or c.kind != "marked"), reverse=True
    )


def euler_genus(surface: FlatSurface) -> tuple[int, int, int]:
    """(Euler characteristic, genus, number of cone points)."""
    v = len(surface.cone_classes)
    e = len(surface.gluings) + len(surface.boundary_edges)
    f = len(surface.polygons)
    chi = v - e + f
    if surface.has_boundary:
        nbound = _boundary_components(surface)
        genus = (2 - chi - nbound) // 2
    else:
        genus = (2 - chi) // 2
    cones = sum(1 for c in surface.cone_classes if c.kind != "marked" and not c.boundary)
    return chi, genus, cones


def _boundary_components(surface: FlatSurface) -> int:
    # each boundary edge ends at a corner whose class leads to the next boundary edge
    edges = set(surface.boundary_edges)
    comps = 0
    while edges:
        comps += 1
        start = min(edges)
        cur = start
        while True:
            edges.discard(cur)
            pi, e = cur
            corner = (pi, (e + 1) % len(surface.polygons[pi]))
            # turn clockwise around the end vertex until an outgoing boundary edge
            while corner not in surface.boundary_edges:
                corner = surface.next_corner_cw(corner)
            cur = corner
            if cur == start:
                break
    return comps


def gauss_bonnet_check(surface: FlatSurface) -> bool:
    """Exact angle-defect identity, with boundary turning for bordered surfaces."""
    chi, _, _ = euler_genus(surface)
    total = Fraction(0)
    for c in surface.cone_classes:
        if c.boundary:
            total += c.angle - 1
        else:
            total += c.angle - 2
    return total == -2 * chi


def fully_puncture(surface: FlatSurface) -> FlatSurface:
    """Same geometry with every cone point marked as a puncture."""
    extra = [c.cycle[0] for c in surface.cone_classes if c.kind == "cone" and not c.boundary]
    return FlatSurface(
        surface.field,
        surface.polygons,
        surface.gluings,
        surface.boundary_edges,
        set(surface.puncture_corners) | set(extra),
        surface.comments,
    )


def relabel(surface: FlatSurface, order: list[int], rotations: dict[int, int] | None = None) -> FlatSurface:
    """Permute polygons and rotate individual charts, adjusting gluing rotations."""
    rotations = rotations or {}
    f = surface.field
    new_index = {old: new for new, old in enumerate(order)}
    polys = []
    for old in order:
        p = surface.polygons[old]
        r = f.zeta_power(rotations.get(old, 0))
        polys.append(Polygon(p.name, tuple(v * r for v in p.vertices)))
    gl = []
    for g in surface.gluings:
        ra, rb = rotations.get(g.a[0], 0), rotations.get(g.b[0], 0)
        gl.append(
            Gluing((new_index[g.a[0]], g.a[1]), (new_index[g.b[0]], g.b[1]), (g.k + rb - ra) % surface.order)
        )
    return FlatSurface(
        f,
        polys,
        gl,
        [(new_index[a], e) for a, e in surface.boundary_edges],
        [(new_index[a], v) for a, v in surface.puncture_corners],
        surface.comments,
    )


__all__ = [
    "ConeClass",
    "FlatSurface",
    "Gluing",
    "Polygon",
    "SurfaceDescription",
    "SurfaceError",
    "build_surface",
    "cone_angle_multiset",
    "cone_points",
    "euler_genus",
    "fully_puncture",
    "gauss_bonnet_check",
    "glue_auto",
    "relabel",
]
