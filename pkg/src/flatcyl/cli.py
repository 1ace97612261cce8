"""Command line front end.

Exit codes: 0 success, 1 invalid surface, 2 usage error, 3 internal limit.
Surfaces are read from a file or from stdin when the path is ``-`` or
omitted, so ``flatcyl build twelve-gon | flatcyl info`` works.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import builders
from .curvegraph import disjointness_graph, distance_lower_bound, distance_upper_bound
from .cylinder import enumerate_cylinders
from .exactnum import ExactError, compare_real, format_expr, parse_expr, sign_real
from .fileformat import ParseError, format_surface, parse_surface
from .flow import FlowError, LimitError, saddle_connections
from .holonomy import holonomy_order, trivializing_cover, verify_cover
from .surface import SurfaceError, cone_angle_multiset, euler_genus
from .svg import Overlays, emit_svg

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path):
    if path in (None, "-"):
        return parse_surface(sys.stdin.read(), "<stdin>")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_surface(text, path)


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def length_bound_sq(surface, text: str):
    """Squared bound from ``<rational>s`` (multiples of the shortest edge) or an exact expression."""
    f = surface.field
    text = text.strip()
    if text.endswith("s"):
        try:
            c = Fraction(text[:-1] or "1")
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad length {text!r}") from None
        if c <= 0:
            raise UsageError("length must be positive")
        edges = [p.edge_vector(e).norm_sq() for p in surface.polygons for e in range(len(p))]
        shortest = edges[0]
        for e in edges[1:]:
            if compare_real(e, shortest) < 0:
                shortest = e
        return shortest * (c * c)
    try:
        x = parse_expr(text, f)
    except ExactError as exc:
        raise UsageError(f"bad length {text!r}: {exc}") from None
    if not x.is_real() or sign_real(x) <= 0:
        raise UsageError("length must be a positive real")
    return x * x


def _angle(a: Fraction) -> str:
    return f"{a}pi"


def _multiset(angles) -> str:
    out = []
    for a in sorted(set(angles), reverse=True):
        k = angles.count(a)
        out.append(_angle(a) + (f" x{k}" if k > 1 else ""))
    return "{" + ", ".join(out) + "}"


# --- verbs ---------------------------------------------------------------------------


def cmd_validate(args):
    s = _read(args.input)
    chi, genus, cones = euler_genus(s)
    print(f"valid: {len(s.polygons)} polygons, {len(s.gluings)} gluings, order {s.order}")
    return EXIT_OK


def info_lines(s):
    chi, genus, cones = euler_genus(s)
    h = holonomy_order(s)
    lines = [
        f"polygons: {len(s.polygons)}",
        f"order: {s.order}",
        f"cone angles: {_multiset(cone_angle_multiset(s))}",
        f"euler characteristic: {chi}",
        f"genus: {genus}",
        f"cone points: {cones}",
        f"boundary edges: {len(s.boundary_edges)}",
        f"area: {s.area:.12g}",
        f"holonomy order q: {h.q}",
        f"cover degree q0: {h.q0}",
    ]
    return lines


def cmd_info(args):
    s = _read(args.input)
    print("\n".join(info_lines(s)))
    return EXIT_OK


def cmd_cover(args):
    s = _read(args.input)
    cover, data = trivializing_cover(s)
    report = verify_cover(s, cover, data)
    _write(format_surface(cover), args.output)
    for name in report.checks:
        flag = "ok" if report.checks[name] else "FAILED"
        print(f"# {name}: {flag} ({report.details[name]})", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_INVALID


def saddle_rows(s, scs):
    rows = []
    for i, sc in enumerate(scs):
        emb = "" if sc.embedded is None else f" embedded={'yes' if sc.embedded else 'no'}"
        rows.append(
            f"sc {i} {sc.start_class}->{sc.end_class} vec={format_expr(sc.vector)} "
            f"len2={format_expr(sc.length_sq)}{emb} word={','.join(sc.word) or '-'}"
        )
    return rows


def cmd_saddles(args):
    s = _read(args.input)
    bound = length_bound_sq(s, args.max_length)
    scs = saddle_connections(s, bound, workers=args.workers, embedded=True)
    if args.embedded_only:
        scs = [sc for sc in scs if sc.embedded]
    print("\n".join(saddle_rows(s, scs)))
    print(f"# {len(scs)} saddle connections")
    return EXIT_OK


def _cylinders(args, s):
    bound = length_bound_sq(s, args.max_length)
    cyls = enumerate_cylinders(s, bound, workers=args.workers)
    if args.embedded_only:
        cyls = [c for c in cyls if c.embedded]
    return cyls


def cylinder_rows(s, cyls):
    rows = []
    for i, c in enumerate(cyls):
        first = c.core.key[0]
        name = s.polygons[first[0]].name
        polys = ",".join(s.polygons[k[0]].name for k in c.core.key)
        wit = ""
        if c.witness is not None:
            poly, a, b = c.witness
            wit = f" witness={s.polygons[poly].name}:{a}/{b}"
        d = parse_key_vector(s, first)
        rows.append(
            f"cyl {i} circ2={format_expr(c.circumference_sq)} width2={format_expr(c.width_sq)} "
            f"embedded={'yes' if c.embedded else 'no'}{wit} dir={name}:{format_expr(d)} core={polys}"
        )
    return rows


def parse_key_vector(s, key_seg):
    f = s.field
    _, a, b = key_seg
    return f(list(b)) - f(list(a))


def cmd_cylinders(args):
    s = _read(args.input)
    cyls = _cylinders(args, s)
    print("\n".join(cylinder_rows(s, cyls)))
    print(f"# {len(cyls)} cylinders, {sum(1 for c in cyls if c.embedded)} embedded")
    if args.svg:
        _write(emit_svg(s, Overlays(cylinders=cyls)), args.svg)
    return EXIT_OK


def cmd_intersections(args):
    s = _read(args.input)
    cyls = _cylinders(args, s)
    g = disjointness_graph(s, [c.core for c in cyls])
    n = len(cyls)
    print(f"# intersection numbers of {n} cylinder cores")
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append("-")
            else:
                row.append(str(g.intersections[(min(i, j), max(i, j))]))
        print(f"cyl {i}: " + " ".join(row))
    return EXIT_OK


def cmd_graph(args):
    s = _read(args.input)
    cyls = _cylinders(args, s)
    g = disjointness_graph(s, [c.core for c in cyls])
    n = len(cyls)
    print(f"# disjointness graph on {n} cylinder cores")
    for i in range(n):
        print(f"adj {i}: " + " ".join(str(j) for j in g.adjacency[i]))
    for comp, diam in zip(g.components, g.diameters):
        print(f"component {' '.join(map(str, comp))}: diameter {diam}")
    print("# curve-graph distance bounds per pair: i lower upper")
    for (i, j), cnt in sorted(g.intersections.items()):
        same = g.vertices[i] == g.vertices[j]
        print(f"pair {i} {j}: i={cnt} lower={distance_lower_bound(cnt, same)} upper={distance_upper_bound(cnt)}")
    return EXIT_OK


def _deform_from_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read deformation spec {path}: {exc}") from None
    base_name = data.get("base", "fig7")
    base = builders.fig7_square_tiled() if base_name == "fig7" else _read(base_name)
    try:
        tilts = tuple(
            builders.IntervalTilt(
                int(t["interval"]),
                Fraction(str(t["psi"])),
                None if t.get("adjust", "1") is None else Fraction(str(t.get("adjust", "1"))),
            )
            for t in data["tilts"]
        )
        spec = builders.DeformationSpec(tilts, tuple(int(w) for w in data["weights"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"bad deformation spec: {exc}") from None
    return builders.deform_square_tiled(base, spec, bool(data.get("allow_holonomy", False)))


def cmd_build(args):
    name = args.name
    if name == "torus":
        s = builders.torus()
    elif name == "4g-gon":
        s = builders.regular_4g_gon(args.g)
    elif name == "twelve-gon":
        s = builders.twelve_gon_genus3()
    elif name == "building-block":
        s = builders.building_block(args.chords)
    elif name == "fig7":
        s = builders.fig7_square_tiled()
    elif name == "fig6":
        s = builders.fig6_translation_h11()
    elif name == "slit-cap":
        base = _read(args.input) if args.input else builders.fig6_translation_h11()
        eps = Fraction(args.eps) if args.eps else None
        s = builders.slit_and_cap(base, builders.SlitSpec(args.cone, Fraction(args.direction), eps))
    elif name == "deform":
        if not args.spec:
            raise UsageError("deform needs --spec FILE")
        s = _deform_from_spec(args.spec)
    else:
        raise UsageError(f"unknown surface {name!r}")
    _write(format_surface(s), args.output)
    return EXIT_OK


def cmd_svg(args):
    s = _read(args.input)
    cyls = _cylinders(args, s) if args.max_length else []
    scs = []
    if args.saddles:
        if not args.max_length:
            raise UsageError("--saddles needs --max-length")
        scs = saddle_connections(s, length_bound_sq(s, args.max_length), workers=args.workers)
    _write(emit_svg(s, Overlays(cylinders=cyls, saddles=scs)), args.output)
    return EXIT_OK


# --- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flatcyl", description="Cylinders and saddle connections on flat cone surfaces.")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, fn, help_, surface=True):
        sp = sub.add_parser(name, help=help_)
        if surface:
            sp.add_argument("input", nargs="?", default="-", help="surface file (default: stdin)")
        sp.set_defaults(fn=fn)
        return sp

    def enum_opts(sp, required=True):
        sp.add_argument("--max-length", required=required, help="length bound: exact expression or <k>s")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--embedded-only", action="store_true")

    add("validate", cmd_validate, "check a surface file")
    add("info", cmd_info, "print invariants")
    sp = add("cover", cmd_cover, "holonomy almost trivializing cover")
    sp.add_argument("-o", "--output")
    enum_opts(add("saddles", cmd_saddles, "list saddle connections"))
    sp = add("cylinders", cmd_cylinders, "list maximal cylinders")
    enum_opts(sp)
    sp.add_argument("--svg", help="also draw the listed cylinders")
    enum_opts(add("intersections", cmd_intersections, "intersection numbers of cylinder cores"))
    enum_opts(add("graph", cmd_graph, "disjointness graph of cylinder cores"))
    sp = add("build", cmd_build, "write an example surface", surface=False)
    sp.add_argument(
        "name", choices=["torus", "4g-gon", "twelve-gon", "building-block", "fig7", "fig6", "slit-cap", "deform"]
    )
    sp.add_argument("--g", type=int, default=2)
    sp.add_argument("--chords", type=int, default=3)
    sp.add_argument("--input", help="slit-cap: surface to cut (default: fig6)")
    sp.add_argument("--cone", type=int, default=0)
    sp.add_argument("--direction", default="1/20", help="slit-cap: slit angle as a multiple of pi")
    sp.add_argument("--eps", help="slit-cap: rational slit length")
    sp.add_argument("--spec", help="deform: JSON deformation spec")
    sp.add_argument("-o", "--output")
    sp = add("svg", cmd_svg, "draw a surface")
    enum_opts(sp, required=False)
    sp.add_argument("--saddles", action="store_true")
    sp.add_argument("-o", "--output")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LimitError as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except SurfaceError as exc:
        print(f"invalid surface: {exc}", file=sys.stderr)
        return EXIT_LIMIT if exc.code == "order-too-large" else EXIT_INVALID
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (FlowError, ExactError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
