"""Exact scalars: the rationals and simple extensions Q[Y]/(m(Y)).

Rationals are plain :class:`fractions.Fraction` values, which are always
kept in lowest terms with a positive denominator.  Every field element
carries the :class:`FieldContext` it lives in; arithmetic between elements
of different contexts raises :class:`ContextMismatch`.  Plain ``int`` and
``Fraction`` operands are accepted as rational constants of any context.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class FieldError(ArithmeticError):
    """Base class for errors raised by exact field arithmetic."""


class ContextMismatch(FieldError, ValueError):
    pass


class ReducibleModulus(FieldError):
    """An element turned out to be a zero divisor: the modulus is not irreducible."""


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a reduced Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc


def format_rational(r: Fraction) -> str:
    return str(r)


# -- raw coefficient-list helpers (lowest degree first, Fractions) ----------

def _trim(c: list[Fraction]) -> list[Fraction]:
    while c and not c[-1]:
        c.pop()
    return c


def _raw_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _raw_rem(a: Sequence[Fraction], m: Sequence[Fraction]) -> list[Fraction]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    r = list(a)
    d = len(m) - 1
    for k in range(len(r) - 1, d - 1, -1):
        c = r[k]
        if c:
            for j in range(d):
                r[k - d + j] -= c * m[j]
        r[k] = Fraction(0)
    return _trim(r)


def _raw_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lc = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lc
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    return _trim(q), _trim(a[: len(b) - 1])


def _raw_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    for i, y in enumerate(b):
        a[i] -= y
    return _trim(a)


def _raw_eval(c: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _rational_roots(c: Sequence[Fraction]) -> list[Fraction]:
    """Rational roots of a polynomial with rational coefficients."""
    c = _trim(list(c))
    if len(c) < 2:
        return []
    roots = []
    while c and not c[0]:
        roots.append(Fraction(0))
        c = c[1:]
    if len(c) < 2:
        return roots
    den = 1
    for a in c:
        den = den * a.denominator // _gcd(den, a.denominator)
    ints = [int(a * den) for a in c]
    lead, const = abs(ints[-1]), abs(ints[0])
    for p in _divisors(const):
        for q in _divisors(lead):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if r not in roots and _raw_eval(c, r) == 0:
                    roots.append(r)
    return roots


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


# -- contexts ----------------------------------------------------------------

@dataclass(frozen=True)
class FieldContext:
    """Either Q (``modulus is None``) or Q[Y]/(modulus).

    ``modulus`` holds the monic defining polynomial, lowest degree first.
    Only the absence of rational roots is checked; irreducibility is the
    caller's responsibility.
    """

    modulus: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.modulus is None:
            return
        m = tuple(Fraction(c) for c in self.modulus)
        while m and not m[-1]:
            m = m[:-1]
        if len(m) < 3:
            raise ValueError("extension modulus must have degree >= 2")
        if m[-1] != 1:
            raise ValueError("extension modulus must be monic")
        if _rational_roots(m):
            raise ValueError(f"modulus has a rational root {_rational_roots(m)[0]}")
        object.__setattr__(self, "modulus", m)

    @classmethod
    def extension(cls, modulus: Iterable[Scalar | str]) -> FieldContext:
        return cls(tuple(parse_rational(c) for c in modulus))

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    @property
    def kind(self) -> str:
        return "RationalField" if self.modulus is None else "Extension"

    @property
    def degree(self) -> int:
        return 1 if self.modulus is None else len(self.modulus) - 1

    def zero(self) -> FieldElement:
        return FieldElement(self, (Fraction(0),) * self.degree)

    def one(self) -> FieldElement:
        return embed_rational(1, self)

    def gen(self) -> FieldElement:
        """The class of Y (only meaningful for extensions)."""
        if self.is_rational:
            raise ValueError("Q has no generator")
        return FieldElement(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def __call__(self, value) -> FieldElement:
        """Coerce a rational, a coefficient list or an element into this context."""
        if isinstance(value, FieldElement):
            if value.context != self:
                raise ContextMismatch("element belongs to another field")
            return value
        if isinstance(value, (int, Fraction, str)):
            return embed_rational(parse_rational(value), self)
        coeffs = [parse_rational(c) for c in value]
        if len(coeffs) > self.degree:
            raise ValueError(f"expected at most {self.degree} coefficients, got {len(coeffs)}")
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def __repr__(self):
        if self.modulus is None:
            return "QQ"
        return f"FieldContext.extension({[str(c) for c in self.modulus]})"


QQ = FieldContext()


def embed_rational(r: Scalar, ctx: FieldContext) -> FieldElement:
    r = Fraction(r)
    return FieldElement(ctx, (r,) + (Fraction(0),) * (ctx.degree - 1))


class FieldElement:
    """An element of a FieldContext, stored by its coefficients on 1, Y, Y^2, ...

    Instances are immutable and hashable.
    """

    __slots__ = ("context", "coeffs")

    def __init__(self, context: FieldContext, coeffs: tuple[Fraction, ...]):
        if len(coeffs) != context.degree:
            raise ValueError(f"expected {context.degree} coefficients, got {len(coeffs)}")
        self.context = context
        self.coeffs = coeffs

    # coercion of the other operand
    def _other(self, b) -> tuple[Fraction, ...] | None:
        if isinstance(b, FieldElement):
            if b.context is not self.context and b.context != self.context:
                raise ContextMismatch(f"cannot combine elements of {self.context!r} and {b.context!r}")
            return b.coeffs
        if isinstance(b, (int, _RationalABC)):
            return (Fraction(b),) + (Fraction(0),) * (self.context.degree - 1)
        return None

    def _new(self, coeffs) -> FieldElement:
        return FieldElement(self.context, tuple(coeffs))

    def __add__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        return self._new(x + y for x, y in zip(self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        return self._new(x - y for x, y in zip(self.coeffs, o))

    def __rsub__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        return self._new(y - x for x, y in zip(self.coeffs, o))

    def __neg__(self):
        return self._new(-x for x in self.coeffs)

    def __mul__(self, b):
        o = self._other(b)
        if o is None:
            return NotImplemented
        m = self.context.modulus
        if m is None:
            return FieldElement(self.context, (self.coeffs[0] * o[0],))
        if not isinstance(b, FieldElement):
            return self._new(x * o[0] for x in self.coeffs)
        prod = _raw_rem(_raw_mul(self.coeffs, o), m)
        return self._new(prod + [Fraction(0)] * (self.context.degree - len(prod)))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        return field_inv(self)

    def __truediv__(self, b):
        if isinstance(b, FieldElement):
            return self * field_inv(b)
        if isinstance(b, (int, _RationalABC)):
            if b == 0:
                raise ZeroDivisionError("division by zero")
            return self._new(x / b for x in self.coeffs)
        return NotImplemented

    def __rtruediv__(self, b):
        if isinstance(b, (int, _RationalABC)):
            return field_inv(self) * b
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            return field_inv(self) ** (-e)
        result = self.context.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, b):
        if isinstance(b, FieldElement):
            return self.context == b.context and self.coeffs == b.coeffs
        if isinstance(b, (int, _RationalABC)):
            return self.coeffs[0] == b and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.context, self.coeffs))

    def is_rational(self) -> bool:
        """True when the element is a rational constant."""
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def to_json(self):
        if self.context.is_rational:
            return str(self.coeffs[0])
        return [str(c) for c in self.coeffs]

    def __str__(self):
        if self.context.is_rational:
            return str(self.coeffs[0])
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("Y" if k == 1 else f"Y^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self):
        return f"FieldElement({self})"


def _check(a: FieldElement, b: FieldElement) -> None:
    if a.context != b.context:
        raise ContextMismatch(f"cannot combine elements of {a.context!r} and {b.context!r}")


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check(a, b)
    return a + b


def field_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    _check(a, b)
    return a - b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check(a, b)
    return a * b


def field_inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse; extended Euclid against the modulus for extensions."""
    if not a:
        raise ZeroDivisionError("inverse of zero")
    ctx = a.context
    if ctx.modulus is None:
        return FieldElement(ctx, (1 / a.coeffs[0],))
    # Track s with s*a == r (mod m); stop when r is a constant.
    r0, r1 = list(ctx.modulus), _trim(list(a.coeffs))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _raw_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _raw_sub(s0, _raw_mul(q, s1))
    if not r1:
        raise ReducibleModulus(
            f"{a} is a zero divisor modulo {ctx!r}; the modulus is not irreducible"
        )
    inv = [c / r1[0] for c in _raw_rem(s1, ctx.modulus)]
    return FieldElement(ctx, tuple(inv) + (Fraction(0),) * (ctx.degree - len(inv)))
