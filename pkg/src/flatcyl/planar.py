"""Exact planar predicates on field-valued points.

Areas are carried as the purely imaginary "area form" ``4i * area`` so
that no square roots or ``i`` are needed in the field; two areas are equal
exactly when their forms are equal.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import cmp_to_key

from .exactnum import (
    ExactError,
    Scalar,
    cross,
    dot_sign,
    sign_im,
    sign_real,
)


def orient(a: Scalar, b: Scalar, c: Scalar) -> int:
    """+1 if a, b, c turn left, -1 if right, 0 if collinear."""
    return cross(b - a, c - a)


def im_ratio(x: Scalar, y: Scalar) -> Scalar:
    """Im(x) / Im(y) as a real field element."""
    return (x - x.conj()) / (y - y.conj())


def area_form(vertices) -> Scalar:
    """4i times the signed area of a closed polygon."""
    acc = None
    n = len(vertices)
    for k in range(n):
        w = vertices[k].conj() * vertices[(k + 1) % n]
        t = w - w.conj()
        acc = t if acc is None else acc + t
    return acc


def area_float(form: Scalar) -> float:
    return complex(form).imag / 4


def on_segment(p: Scalar, a: Scalar, b: Scalar) -> bool:
    """p lies on the closed segment [a, b]."""
    if orient(a, b, p) != 0:
        return False
    return dot_sign(p - a, b - a) >= 0 and dot_sign(p - b, a - b) >= 0


def point_in_triangle(p, a, b, c, closed=True) -> bool:
    o1, o2, o3 = orient(a, b, p), orient(b, c, p), orient(c, a, p)
    if closed:
        return o1 >= 0 and o2 >= 0 and o3 >= 0
    return o1 > 0 and o2 > 0 and o3 > 0


def line_intersection(p: Scalar, d: Scalar, a: Scalar, b: Scalar) -> Scalar:
    """Intersection of the line p + t*d with the line through a, b."""
    e = b - a
    den = d.conj() * e
    num = (a - p).conj() * e
    return p + d * im_ratio(num, den)


def segments_intersect(p1, p2, q1, q2):
    """Return None, ("point", x) or ("overlap", (x, y)) for closed segments."""
    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if d1 == 0 and d2 == 0:
        # collinear: project onto the segment direction
        d = p2 - p1
        pts = []
        for x in (q1, q2):
            if on_segment(x, p1, p2):
                pts.append(x)
        for x in (p1, p2):
            if on_segment(x, q1, q2) and x not in pts:
                pts.append(x)
        if not pts:
            return None
        if len(pts) == 1:
            return ("point", pts[0])
        pts.sort(key=cmp_to_key(lambda x, y: dot_sign(x - y, d)))
        if pts[0] == pts[-1]:
            return ("point", pts[0])
        return ("overlap", (pts[0], pts[-1]))
    if d1 * d2 > 0 or d3 * d4 > 0:
        return None
    if d1 == 0:
        return ("point", p1)
    if d2 == 0:
        return ("point", p2)
    if d3 == 0:
        return ("point", q1)
    if d4 == 0:
        return ("point", q2)
    return ("point", line_intersection(p1, p2 - p1, q1, q2))


def clip_halfplane(poly, a: Scalar, b: Scalar):
    """Keep the part of a convex polygon on the closed left side of a->b."""
    if not poly:
        return []
    out = []
    e = b - a
    n = len(poly)
    sides = [cross(e, v - a) for v in poly]
    for i in range(n):
        cur, nxt = poly[i], poly[(i + 1) % n]
        sc, sn = sides[i], sides[(i + 1) % n]
        if sc >= 0:
            out.append(cur)
        if (sc > 0 and sn < 0) or (sc < 0 and sn > 0):
            out.append(line_intersection(cur, nxt - cur, a, b))
    return _dedupe(out)


def _dedupe(pts):
    res = []
    for p in pts:
        if not res or res[-1] != p:
            res.append(p)
    if len(res) > 1 and res[0] == res[-1]:
        res.pop()
    return res


def clip_convex(subject, clipper):
    """Intersection of two convex polygons given counterclockwise."""
    out = list(subject)
    n = len(clipper)
    for i in range(n):
        out = clip_halfplane(out, clipper[i], clipper[(i + 1) % n])
        if not out:
            return []
    return out


def has_positive_area(poly) -> bool:
    # the area form is 4i*area, so its imaginary part carries the sign
    return len(poly) >= 3 and sign_im(area_form(poly)) > 0


def ccw_angle_units(u: Scalar, w: Scalar) -> Fraction:
    """Counterclockwise angle from u to w as a multiple of pi, in (0, 2].

    Requires the angle to be a multiple of pi/N.
    """
    f = u.field
    n = f.n
    z = u.conj() * w
    z2 = z * z
    # 2*theta = 2*pi*j/N for some j; guess from floating arg, then verify
    guess = round(cmath.phase(complex(z2)) / (2 * cmath.pi) * n) % n
    order = [guess] + [j for j in range(n) if j != guess]
    for j in order:
        t = z2 * f.zeta_power(-j)
        if t.is_real() and not t.is_zero() and _positive_real(t):
            base = Fraction(j, n)  # theta is base*pi or base*pi + pi
            s_im = sign_im(z)
            if s_im > 0:
                return base
            if s_im < 0:
                return base + 1
            return Fraction(1) if dot_sign(u, w) < 0 else Fraction(2)
    raise ExactError("angle is not a rational multiple of pi compatible with the field order")


def _positive_real(t: Scalar) -> bool:
    return sign_real(t) > 0
