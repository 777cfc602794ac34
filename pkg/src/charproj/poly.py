"""Dense univariate polynomials over a :class:`~charproj.field.FieldContext`.

Coefficients are stored lowest degree first without trailing zeros, so the
zero polynomial has an empty coefficient tuple.  Besides ring arithmetic the
module carries the small Euclidean toolkit needed to build projection
polynomials: division with remainder, extended gcd, division by ``X - a``
(Horner), root valuation and Taylor shifts.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .field import QQ, ContextMismatch, FieldContext, FieldElement, _rational_roots, parse_rational


class Polynomial:
    __slots__ = ("context", "coeffs")

    def __init__(self, coeffs: Iterable = (), context: FieldContext = QQ):
        cs = [context(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.context = context
        self.coeffs: tuple[FieldElement, ...] = tuple(cs)

    @classmethod
    def _raw(cls, context: FieldContext, coeffs: list[FieldElement]) -> Polynomial:
        # trusted constructor: coefficients already in ``context``
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        p = cls.__new__(cls)
        p.context = context
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def x(cls, context: FieldContext = QQ) -> Polynomial:
        return cls([0, 1], context)

    @classmethod
    def constant(cls, c, context: FieldContext = QQ) -> Polynomial:
        return cls([c], context)

    @classmethod
    def linear(cls, alpha: FieldElement) -> Polynomial:
        """``X - alpha``."""
        ctx = alpha.context
        return cls._raw(ctx, [-alpha, ctx.one()])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.context.zero()

    def __getitem__(self, k: int) -> FieldElement:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.context.zero()

    def __iter__(self):
        # without this, iteration would fall back on __getitem__ and never stop
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.context == other.context and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.context)
        return NotImplemented

    def __hash__(self):
        return hash((self.context, self.coeffs))

    def _coerce(self, g) -> Polynomial:
        if isinstance(g, Polynomial):
            if g.context != self.context:
                raise ContextMismatch("polynomials over different fields")
            return g
        if isinstance(g, (int, Fraction, FieldElement)):
            return Polynomial([g], self.context)
        return NotImplemented

    def __add__(self, g):
        g = self._coerce(g)
        if g is NotImplemented:
            return g
        a, b = self.coeffs, g.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial._raw(self.context, [x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.context, [-c for c in self.coeffs])

    def __sub__(self, g):
        g = self._coerce(g)
        if g is NotImplemented:
            return g
        return self + (-g)

    def __rsub__(self, g):
        return (-self) + g

    def __mul__(self, g):
        if isinstance(g, (int, Fraction, FieldElement)):
            return Polynomial._raw(self.context, [c * g for c in self.coeffs])
        g = self._coerce(g)
        if g is NotImplemented:
            return g
        if not self or not g:
            return Polynomial._raw(self.context, [])
        out = [self.context.zero()] * (len(self.coeffs) + len(g.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(g.coeffs):
                    out[i + j] = out[i + j] + x * y
        return Polynomial._raw(self.context, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return Polynomial._raw(self.context, [x / c for x in self.coeffs])

    def __pow__(self, e: int) -> Polynomial:
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1, self.context)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = poly_square(base)
        return result

    def __divmod__(self, g):
        return poly_divrem(self, self._coerce(g))

    def __floordiv__(self, g):
        return poly_divrem(self, self._coerce(g))[0]

    def __mod__(self, g):
        return poly_divrem(self, self._coerce(g))[1]

    def __call__(self, x):
        return poly_eval(self, x)

    def monic(self) -> Polynomial:
        if not self:
            return self
        return self / self.coeffs[-1]

    def derivative(self) -> Polynomial:
        return Polynomial._raw(self.context, [c * k for k, c in enumerate(self.coeffs)][1:])

    def base_change(self, ctx: FieldContext) -> Polynomial:
        """Embed a polynomial over Q into ``ctx``."""
        if self.context == ctx:
            return self
        if not self.context.is_rational:
            raise ContextMismatch("only polynomials over Q can be base-changed")
        return Polynomial([c.coeffs[0] for c in self.coeffs], ctx)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def to_rational(self) -> Polynomial:
        """Descend a polynomial with rational coefficients to Q."""
        return Polynomial([c.to_rational() for c in self.coeffs], QQ)

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data: list, context: FieldContext = QQ) -> Polynomial:
        return cls(data, context)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({self})"


def format_poly(f: Polynomial, var: str = "X") -> str:
    """Human-readable form, highest degree first: ``a_n*X^n + ... + a_0``."""
    if not f:
        return "0"
    terms = []
    for k in range(f.degree, -1, -1):
        c = f.coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if c.is_rational():
            r = c.coeffs[0]
            sign = "-" if r < 0 else "+"
            mag = abs(r)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
        else:
            sign, body = "+", f"({c})" + (f"*{mono}" if mono else "")
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def parse_poly(text: str, context: FieldContext = QQ) -> Polynomial:
    """Parse a comma separated coefficient list, lowest degree first."""
    return Polynomial([parse_rational(c) for c in text.split(",") if c.strip()], context)


def _same(f: Polynomial, g: Polynomial) -> None:
    if f.context != g.context:
        raise ContextMismatch("polynomials over different fields")


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    _same(f, g)
    return f + g


def poly_sub(f: Polynomial, g: Polynomial) -> Polynomial:
    _same(f, g)
    return f - g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    _same(f, g)
    return f * g


def poly_square(f: Polynomial) -> Polynomial:
    """Square using the symmetric products once each."""
    cs = f.coeffs
    n = len(cs)
    if not n:
        return f
    out = [f.context.zero()] * (2 * n - 1)
    for i in range(n):
        x = cs[i]
        if not x:
            continue
        out[2 * i] = out[2 * i] + x * x
        x2 = x * 2
        for j in range(i + 1, n):
            out[i + j] = out[i + j] + x2 * cs[j]
    return Polynomial._raw(f.context, out)


def poly_divrem(f: Polynomial, g: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Euclidean division: ``f == q*g + r`` with ``deg r < deg g``."""
    _same(f, g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(f.coeffs)
    dg = g.degree
    if len(r) <= dg:
        return Polynomial._raw(f.context, []), f
    inv_lc = 1 / g.coeffs[-1]
    q = [f.context.zero()] * (len(r) - dg)
    for k in range(len(r) - 1 - dg, -1, -1):
        c = r[k + dg] * inv_lc
        q[k] = c
        if c:
            for j in range(dg):
                r[k + j] = r[k + j] - c * g.coeffs[j]
    return Polynomial._raw(f.context, q), Polynomial._raw(f.context, r[:dg])


def poly_xgcd(f: Polynomial, g: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Extended Euclid: ``(d, u, v)`` with ``u*f + v*g == d`` and ``d`` the monic gcd."""
    _same(f, g)
    if not f and not g:
        raise ValueError("gcd of two zero polynomials")
    ctx = f.context
    zero, one = Polynomial._raw(ctx, []), Polynomial.constant(1, ctx)
    r0, r1 = f, g
    u0, u1 = one, zero
    v0, v1 = zero, one
    while r1:
        q, r = poly_divrem(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    lc = r0.coeffs[-1]
    return r0 / lc, u0 / lc, v0 / lc


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    return poly_xgcd(f, g)[0]


def poly_lcm(f: Polynomial, g: Polynomial) -> Polynomial:
    if not f or not g:
        return Polynomial._raw(f.context, [])
    return (poly_divrem(f * g, poly_gcd(f, g))[0]).monic()


def synthetic_divide(f: Polynomial, alpha: FieldElement) -> tuple[Polynomial, FieldElement]:
    """Horner division by ``X - alpha``: returns ``(q, f(alpha))``."""
    if alpha.context != f.context:
        raise ContextMismatch("evaluation point lives in another field")
    if not f:
        return f, f.context.zero()
    cs = f.coeffs
    acc = cs[-1]
    q = [acc]
    for c in reversed(cs[:-1]):
        acc = acc * alpha + c
        q.append(acc)
    r = q.pop()
    q.reverse()
    return Polynomial._raw(f.context, q), r


def root_valuation(f: Polynomial, alpha: FieldElement) -> tuple[int, Polynomial]:
    """Return ``(nu, Q)`` with ``f == (X - alpha)**nu * Q`` and ``Q(alpha) != 0``."""
    if not f:
        raise ValueError("root valuation of the zero polynomial")
    nu = 0
    while True:
        q, r = synthetic_divide(f, alpha)
        if r:
            return nu, f
        nu, f = nu + 1, q


def poly_eval(f: Polynomial, x: FieldElement) -> FieldElement:
    if isinstance(x, (int, Fraction)):
        x = f.context(x)
    if x.context != f.context:
        raise ContextMismatch("evaluation point lives in another field")
    acc = f.context.zero()
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def taylor_shift(f: Polynomial, alpha: FieldElement) -> Polynomial:
    """``f(X + alpha)`` by repeated synthetic division (``n^2/2`` multiply-adds)."""
    if isinstance(alpha, (int, Fraction)):
        alpha = f.context(alpha)
    if alpha.context != f.context:
        raise ContextMismatch("shift lives in another field")
    cs = list(f.coeffs)
    n = len(cs)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            cs[k] = cs[k] + alpha * cs[k + 1]
    return Polynomial._raw(f.context, cs)


def squarefree_part(f: Polynomial) -> Polynomial:
    """Monic ``f / gcd(f, f')``: same roots as ``f``, all simple."""
    if not f:
        raise ValueError("squarefree part of the zero polynomial")
    g = poly_gcd(f, f.derivative())
    return poly_divrem(f, g)[0].monic()


def squarefree_decomposition(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime ``(a_i, i)`` with ``f = c * prod a_i**i``."""
    if not f:
        raise ValueError("squarefree decomposition of the zero polynomial")
    out = []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = poly_divrem(f, a)[0]
    c = poly_divrem(df, a)[0]
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = poly_divrem(b, a)[0]
        c = poly_divrem(d, a)[0]
        if a.degree > 0:
            out.append((a.monic(), i))
        d = c - b.derivative()
        i += 1
    return out


def rational_roots(f: Polynomial) -> list[Fraction]:
    """All rational roots of a polynomial over Q, by the rational root test."""
    if not f.context.is_rational:
        raise ContextMismatch("rational root search needs a polynomial over Q")
    return sorted(_rational_roots([c.coeffs[0] for c in f.coeffs]))
