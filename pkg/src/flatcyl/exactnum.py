"""Exact arithmetic in the cyclotomic field Q(zeta_N).

A plane point is a single field element: the plane is identified with the
complex line, so rotation by 2*pi*k/N is multiplication by ``zeta**k`` and
translation is addition.  Elements are stored as integer coefficients over
the power basis ``1, zeta, ..., zeta**(phi(N)-1)`` together with a positive
common denominator, always fully reduced modulo the N-th cyclotomic
polynomial.  Equality is therefore coefficient equality.

Signs of real quantities are decided exactly: zero by the canonical form,
nonzero values by evaluating at increasing floating precision until the
error interval excludes zero.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

MAX_ORDER = 60

NEGATIVE, ZERO, POSITIVE = -1, 0, 1
LESS, EQUAL, GREATER = -1, 0, 1


class ExactError(ValueError):
    pass


def _poly_divexact(num, den):
    # integer polynomials, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _poly_divexact(p, cyclotomic_poly(d))
    return tuple(p)


def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


class Field:
    """The cyclotomic field of order N with its precomputed reduction tables."""

    _cache: dict[int, "Field"] = {}

    def __new__(cls, n: int):
        if n in cls._cache:
            return cls._cache[n]
        if n < 1 or n > MAX_ORDER:
            raise ExactError(f"order {n} outside supported range 1..{MAX_ORDER}")
        self = super().__new__(cls)
        self.n = n
        phi_poly = cyclotomic_poly(n)
        self.phi = phi = len(phi_poly) - 1
        # powers[k] = zeta**k reduced, for 0 <= k < max(2*phi, n)
        powers = []
        cur = [1] + [0] * (phi - 1)
        for _ in range(max(2 * phi, n)):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(phi):
                    cur[j] -= top * phi_poly[j]
        self.powers = powers
        self.cos = [math.cos(2 * math.pi * j / n) for j in range(phi)]
        self.sin = [math.sin(2 * math.pi * j / n) for j in range(phi)]
        self.units = [k for k in range(1, n + 1) if gcd(k, n) == 1]
        cls._cache[n] = self
        return self

    def __reduce__(self):
        return (Field, (self.n,))

    def __repr__(self):
        return f"Field({self.n})"

    def zeta_power(self, k: int) -> "Scalar":
        return Scalar._raw(self, self.powers[k % self.n], 1)

    def zero(self) -> "Scalar":
        return Scalar._raw(self, (0,) * self.phi, 1)

    def one(self) -> "Scalar":
        return self.rational(1)

    def rational(self, r) -> "Scalar":
        r = Fraction(r)
        return Scalar._raw(self, (r.numerator,) + (0,) * (self.phi - 1), r.denominator)

    def from_power_terms(self, terms) -> "Scalar":
        """Build sum of r * zeta**k from (r, k) pairs with rational r."""
        acc = self.zero()
        for r, k in terms:
            acc = acc + self.zeta_power(k) * Fraction(r)
        return acc

    def __call__(self, coeffs) -> "Scalar":
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > self.phi:
            acc = self.zero()
            for k, c in enumerate(coeffs):
                if c:
                    acc = acc + self.zeta_power(k) * c
            return acc
        coeffs += [Fraction(0)] * (self.phi - len(coeffs))
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return Scalar._make(self, [int(c * den) for c in coeffs], den)


class Scalar:
    """Element of Q(zeta_N); also used as a point of the plane."""

    __slots__ = ("field", "c", "d", "_hash")

    @classmethod
    def _raw(cls, field, c, d):
        self = object.__new__(cls)
        self.field = field
        self.c = c
        self.d = d
        self._hash = None
        return self

    @classmethod
    def _make(cls, field, c, d):
        g = d
        for x in c:
            if x:
                g = gcd(g, x)
                if g == 1:
                    break
        if d < 0:
            g = -g
        if g != 1:
            c = tuple(x // g for x in c)
            d //= g
        else:
            c = tuple(c)
        return cls._raw(field, c, d)

    def __reduce__(self):
        return (_rebuild, (self.field.n, self.c, self.d))

    @property
    def order(self) -> int:
        return self.field.n

    @property
    def coeffs(self) -> list[Fraction]:
        return [Fraction(x, self.d) for x in self.c]

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise ExactError(f"mixing orders {self.field.n} and {other.field.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.d == o.d:
            return Scalar._make(self.field, [a + b for a, b in zip(self.c, o.c)], self.d)
        return Scalar._make(
            self.field, [a * o.d + b * self.d for a, b in zip(self.c, o.c)], self.d * o.d
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.field, tuple(-a for a in self.c), self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Scalar._make(
                self.field, [a * other.numerator for a in self.c], self.d * other.denominator
            )
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        f = self.field
        phi = f.phi
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    if y:
                        prod[i + j] += x * y
        res = prod[:phi]
        powers = f.powers
        for k in range(phi, 2 * phi - 1):
            p = prod[k]
            if p:
                t = powers[k]
                for j in range(phi):
                    if t[j]:
                        res[j] += p * t[j]
        return Scalar._make(f, res, self.d * o.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero Scalar")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def galois(self, j: int) -> "Scalar":
        """Image under the automorphism zeta -> zeta**j (j coprime to N)."""
        f = self.field
        res = [0] * f.phi
        for i, x in enumerate(self.c):
            if x:
                t = f.powers[(i * j) % f.n]
                for k in range(f.phi):
                    if t[k]:
                        res[k] += x * t[k]
        return Scalar._make(f, res, self.d)

    def conj(self) -> "Scalar":
        return self.galois(-1 % self.field.n)

    def inverse(self) -> "Scalar":
        return _inverse(self)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ExactError(f"{self} is not rational")
        return Fraction(self.c[0], self.d)

    def is_real(self) -> bool:
        return self == self.conj()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.d == other.d and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.c[0], self.d) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.n, self.c, self.d))
        return self._hash

    def __repr__(self):
        return format_scalar(self)

    def __complex__(self):
        f = self.field
        re_ = sum(x * cs for x, cs in zip(self.c, f.cos))
        im_ = sum(x * sn for x, sn in zip(self.c, f.sin))
        return complex(re_ / self.d, im_ / self.d)

    # plane helpers
    def norm_sq(self) -> "Scalar":
        return self * self.conj()

    def rotate(self, k: int) -> "Scalar":
        return rotate(self, k)


def _rebuild(n, c, d):
    return Scalar._raw(Field(n), c, d)


@lru_cache(maxsize=65536)
def _inverse(a: Scalar) -> Scalar:
    if a.is_zero():
        raise ZeroDivisionError("division by zero Scalar")
    if a.is_rational():
        return a.field.rational(1 / a.to_fraction())
    # product of the other Galois conjugates; a * rest is the (rational) norm
    rest = a.field.one()
    for j in a.field.units:
        if j != 1:
            rest = rest * a.galois(j)
    norm = (a * rest).to_fraction()
    return rest * (1 / norm)


def arith(a: Scalar, b: Scalar | None, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "conj":
        return a.conj()
    raise ValueError(f"unknown operation {op!r}")


def rotate(p: Scalar, k: int) -> Scalar:
    """Rotate the plane point ``p`` by 2*pi*k/N about the origin."""
    k %= p.field.n
    if k == 0:
        return p
    return p * p.field.zeta_power(k)


# --- signs -----------------------------------------------------------------

_FLOAT_EPS = 2.0 ** -45


def _refine_sign(vals, d, prec_start=120):
    """Sign of sum(c_j * vals_j(prec)) with certified error bound."""
    weight = sum(abs(x) for x in d)
    prec = prec_start
    while True:
        with mpmath.workprec(prec + weight.bit_length() + 16):
            total = mpmath.fsum(mpmath.mpf(x) * v for x, v in zip(d, vals(prec)))
            err = mpmath.mpf(weight) * mpmath.mpf(2) ** (-prec + 4)
            if total > err:
                return POSITIVE
            if total < -err:
                return NEGATIVE
        prec *= 2
        if prec > 1 << 20:
            raise ExactError("sign refinement did not terminate")


def _fast_sign(c, table):
    try:
        total = 0.0
        bound = 0.0
        for x, t in zip(c, table):
            if x:
                fx = float(x)
                total += fx * t
                bound += abs(fx)
    except OverflowError:
        return None
    bound *= _FLOAT_EPS
    if total > bound:
        return POSITIVE
    if total < -bound:
        return NEGATIVE
    return None


def sign_real(x: Scalar) -> int:
    """Exact sign of a real element of the field."""
    if not x.is_real():
        raise ExactError(f"sign_real of non-real element {x}")
    if x.is_zero():
        return ZERO
    s = _fast_sign(x.c, x.field.cos)
    if s is not None:
        return s
    n = x.field.n
    return _refine_sign(lambda p: [mpmath.cos(2 * mpmath.pi * j / n) for j in range(len(x.c))], x.c)


def sign_im(z: Scalar) -> int:
    """Exact sign of the imaginary part of ``z`` (z need not be real)."""
    zc = z.conj()
    if z == zc:
        return ZERO
    s = _fast_sign(z.c, z.field.sin)
    if s is not None:
        return s
    n = z.field.n
    return _refine_sign(lambda p: [mpmath.sin(2 * mpmath.pi * j / n) for j in range(len(z.c))], z.c)


def sign_re(z: Scalar) -> int:
    """Exact sign of the real part of ``z``."""
    zc = z.conj()
    if z == -zc:
        return ZERO
    s = _fast_sign(z.c, z.field.cos)
    if s is not None:
        return s
    n = z.field.n
    return _refine_sign(lambda p: [mpmath.cos(2 * mpmath.pi * j / n) for j in range(len(z.c))], z.c)


def compare_real(a: Scalar, b: Scalar) -> int:
    return sign_real(a - b)


def compare_length_sq(u: Scalar, v: Scalar) -> int:
    """Compare |u|^2 with |v|^2 exactly."""
    return sign_real(u.norm_sq() - v.norm_sq())


def cross(u: Scalar, v: Scalar) -> int:
    """Sign of the 2D cross product u x v = Im(conj(u) * v)."""
    return sign_im(u.conj() * v)


def dot_sign(u: Scalar, v: Scalar) -> int:
    return sign_re(u.conj() * v)


def re_part(z: Scalar) -> Scalar:
    """Real part, as a real field element."""
    return (z + z.conj()) * Fraction(1, 2)


def im_sq4(z: Scalar) -> Scalar:
    """4 * Im(z)**2 as a real field element (no i needed)."""
    w = z - z.conj()
    return -(w * w)


# --- text form ---------------------------------------------------------------

def format_scalar(x: Scalar) -> str:
    parts = []
    for q in x.coeffs:
        parts.append(str(q))
    return f"q{x.field.n}:[{', '.join(parts)}]"


_SCALAR_RE = re.compile(r"^\s*q(\d+)\s*:\s*\[(.*)\]\s*$")


def parse_scalar(text: str) -> Scalar:
    m = _SCALAR_RE.match(text)
    if not m:
        raise ExactError(f"malformed scalar {text!r}")
    f = Field(int(m.group(1)))
    body = m.group(2).strip()
    items = [Fraction(t.strip()) for t in body.split(",")] if body else []
    if len(items) != f.phi:
        raise ExactError(f"expected {f.phi} coefficients, got {len(items)}")
    return f(items)


_TERM_RE = re.compile(r"([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?u\(\s*(-?\d+)\s*\)|([+-]?)\s*(\d+(?:/\d+)?)")


def parse_expr(text: str, field: Field) -> Scalar:
    """Parse ``1/2*u(0)+u(3)-2`` style sums of rational multiples of unit vectors."""
    s = text.replace(" ", "")
    if not s:
        raise ExactError("empty expression")
    pos = 0
    acc = field.zero()
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ExactError(f"cannot parse {text!r} at offset {pos}")
        if pos > 0 and not (m.group(1) or m.group(4)):
            raise ExactError(f"missing operator in {text!r} at offset {pos}")
        if m.group(3) is not None:
            r = Fraction(m.group(2) or 1)
            if m.group(1) == "-":
                r = -r
            acc = acc + field.zeta_power(int(m.group(3))) * r
        else:
            r = Fraction(m.group(5))
            if m.group(4) == "-":
                r = -r
            acc = acc + r
        pos = m.end()
    return acc


def format_expr(x: Scalar) -> str:
    """Inverse of :func:`parse_expr` using the power basis."""
    terms = []
    for k, q in enumerate(x.coeffs):
        if q:
            sign = "-" if q < 0 else "+"
            terms.append(f"{sign}{abs(q)}*u({k})")
    if not terms:
        return "0*u(0)"
    out = "".join(terms)
    return out[1:] if out[0] == "+" else out


def to_mpc(x: Scalar, prec: int = 200):
    with mpmath.workprec(prec):
        n = x.field.n
        re_ = mpmath.fsum(mpmath.mpf(c) * mpmath.cos(2 * mpmath.pi * j / n) for j, c in enumerate(x.c))
        im_ = mpmath.fsum(mpmath.mpf(c) * mpmath.sin(2 * mpmath.pi * j / n) for j, c in enumerate(x.c))
        return mpmath.mpc(re_, im_) / x.d
