"""Line-oriented surface files.

::

    order 8
    polygon P 1*u(0) 1*u(1) ...
    glue P.0 P.2 rot 6
    boundary P.3
    puncture P.0

Vertices are sums of rational multiples of ``u(k)``, the unit vector at
angle ``2*pi*k/N``; a vertex must not contain spaces.  ``#`` starts a
comment.  A comment line directly above a polygon line is kept as that
polygon's note and printed back.
"""
from __future__ import annotations

import re

from .exactnum import ExactError, Field, MAX_ORDER, format_expr, parse_expr
from .surface import FlatSurface, SurfaceDescription, SurfaceError, build_surface


class ParseError(ValueError):
    def __init__(self, line: int, message: str, source: str = "<input>"):
        super().__init__(f"{source}:{line}: {message}")
        self.line = line
        self.source = source


_SIDE = re.compile(r"^([^\s.]+)\.(\d+)$")


def _side(tok, lineno, source):
    m = _SIDE.match(tok)
    if not m:
        raise ParseError(lineno, f"expected <polygon>.<index>, got {tok!r}", source)
    return m.group(1), int(m.group(2))


def parse_description(text: str, source: str = "<input>") -> SurfaceDescription:
    desc = None
    pending_note = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            note = raw.strip()[1:].strip() if raw.strip().startswith("#") else None
            pending_note = note or None
            continue
        toks = line.split()
        kw = toks[0]
        if kw == "order":
            if desc is not None:
                raise ParseError(lineno, "order given twice", source)
            if len(toks) != 2 or not toks[1].isdigit():
                raise ParseError(lineno, "usage: order <N>", source)
            n = int(toks[1])
            if not 1 <= n <= MAX_ORDER:
                raise ParseError(lineno, f"order {n} outside 1..{MAX_ORDER}", source)
            desc = SurfaceDescription(n)
            continue
        if desc is None:
            raise ParseError(lineno, "the first statement must be 'order <N>'", source)
        f = Field(desc.order)
        if kw == "polygon":
            if len(toks) < 5:
                raise ParseError(lineno, "a polygon needs a name and at least 3 vertices", source)
            name = toks[1]
            if "." in name:
                raise ParseError(lineno, f"polygon name {name!r} may not contain '.'", source)
            try:
                verts = [parse_expr(t, f) for t in toks[2:]]
            except ExactError as exc:
                raise ParseError(lineno, str(exc), source) from None
            desc.polygons.append((name, verts))
            if pending_note:
                desc.comments[name] = pending_note
        elif kw == "glue":
            if len(toks) != 5 or toks[3] != "rot":
                raise ParseError(lineno, "usage: glue <P>.<e> <Q>.<e> rot <k>", source)
            a, ea = _side(toks[1], lineno, source)
            b, eb = _side(toks[2], lineno, source)
            try:
                k = int(toks[4])
            except ValueError:
                raise ParseError(lineno, f"rotation {toks[4]!r} is not an integer", source) from None
            desc.gluings.append((a, ea, b, eb, k))
        elif kw == "boundary":
            for t in toks[1:]:
                desc.boundary.append(_side(t, lineno, source))
        elif kw == "puncture":
            for t in toks[1:]:
                desc.punctures.append(_side(t, lineno, source))
        else:
            raise ParseError(lineno, f"unknown statement {kw!r}", source)
        pending_note = None
    if desc is None:
        raise ParseError(1, "empty surface file", source)
    return desc


def parse_surface(text: str, source: str = "<input>") -> FlatSurface:
    return build_surface(parse_description(text, source))


def format_surface(surface: FlatSurface) -> str:
    """Canonical text: polygons by name, gluings sorted, each gluing listed once."""
    names = [p.name for p in surface.polygons]
    out = [f"order {surface.order}"]
    for p in sorted(surface.polygons, key=lambda p: p.name):
        note = surface.comments.get(p.name)
        if note:
            out.append(f"# {note}")
        out.append(" ".join(["polygon", p.name] + [format_expr(v) for v in p.vertices]))
    rows = []
    for g in surface.gluings:
        a = (names[g.a[0]], g.a[1])
        b = (names[g.b[0]], g.b[1])
        k = g.k
        if b < a:
            a, b, k = b, a, (-k) % surface.order
        rows.append((a, b, k))
    for a, b, k in sorted(rows):
        out.append(f"glue {a[0]}.{a[1]} {b[0]}.{b[1]} rot {k}")
    for pi, e in sorted(surface.boundary_edges, key=lambda s: (names[s[0]], s[1])):
        out.append(f"boundary {names[pi]}.{e}")
    for cls in surface.cone_classes:
        if cls.kind == "puncture":
            pi, v = min(cls.cycle, key=lambda c: (names[c[0]], c[1]))
            out.append(f"puncture {names[pi]}.{v}")
    return "\n".join(out) + "\n"


def read_surface(path) -> FlatSurface:
    with open(path, encoding="utf-8") as fh:
        return parse_surface(fh.read(), str(path))


__all__ = ["ParseError", "SurfaceError", "format_surface", "parse_description", "parse_surface", "read_surface"]
