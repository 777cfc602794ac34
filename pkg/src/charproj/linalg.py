"""Dense exact matrices over Q or a simple number field.

Entries are stored in "raw" form for speed: plain ``Fraction`` values when
the context is Q, :class:`FieldElement` values otherwise.  The public
accessors always hand out :class:`FieldElement` objects.  Products and
polynomial evaluation over Q clear denominators and run on Python integers.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .field import QQ, ContextMismatch, FieldContext, FieldElement
from .poly import Polynomial, poly_lcm


class DimensionMismatch(ValueError):
    pass


class InconsistentSystem(ArithmeticError):
    """``a @ x == b`` has no solution."""


class SingularMatrix(ArithmeticError):
    pass


def _to_raw(ctx: FieldContext, value):
    if ctx.modulus is None:
        if isinstance(value, FieldElement):
            if value.context != ctx:
                raise ContextMismatch("entry belongs to another field")
            return value.coeffs[0]
        return ctx(value).coeffs[0]
    return ctx(value)


def _wrap(ctx: FieldContext, raw) -> FieldElement:
    if ctx.modulus is None:
        return FieldElement(ctx, (raw,))
    return raw


def _zero(ctx: FieldContext):
    return Fraction(0) if ctx.modulus is None else ctx.zero()


def _one(ctx: FieldContext):
    return Fraction(1) if ctx.modulus is None else ctx.one()


class Matrix:
    """Immutable dense matrix; ``rows`` and ``cols`` may be zero only for kernels."""

    __slots__ = ("context", "rows", "cols", "_data")

    def __init__(self, entries: Iterable[Iterable], context: FieldContext = QQ, cols: int | None = None):
        data = [[_to_raw(context, x) for x in row] for row in entries]
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise DimensionMismatch("ragged matrix rows")
        self.context = context
        self.rows = len(data)
        self.cols = cols
        self._data = data

    @classmethod
    def _raw(cls, ctx: FieldContext, data: list[list], cols: int | None = None) -> Matrix:
        m = cls.__new__(cls)
        m.context = ctx
        m.rows = len(data)
        m.cols = cols if cols is not None else (len(data[0]) if data else 0)
        m._data = data
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, context: FieldContext = QQ) -> Matrix:
        z = _zero(context)
        return cls._raw(context, [[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int, context: FieldContext = QQ) -> Matrix:
        return mat_identity(n, context)

    @classmethod
    def diagonal(cls, values: Sequence, context: FieldContext = QQ) -> Matrix:
        n = len(values)
        m = cls.zeros(n, n, context)
        for i, v in enumerate(values):
            m._data[i][i] = _to_raw(context, v)
        return m

    @classmethod
    def column(cls, values: Sequence, context: FieldContext = QQ) -> Matrix:
        return cls([[v] for v in values], context, cols=1)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> FieldElement:
        i, j = ij
        return _wrap(self.context, self._data[i][j])

    @property
    def entries(self) -> list[FieldElement]:
        """Row-major list of entries."""
        return [_wrap(self.context, x) for row in self._data for x in row]

    def row(self, i: int) -> list[FieldElement]:
        return [_wrap(self.context, x) for x in self._data[i]]

    def col(self, j: int) -> list[FieldElement]:
        return [_wrap(self.context, row[j]) for row in self._data]

    def tolist(self) -> list[list[FieldElement]]:
        return [self.row(i) for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int] | range, cols: Sequence[int] | range) -> Matrix:
        return Matrix._raw(self.context, [[self._data[i][j] for j in cols] for i in rows], len(cols))

    def columns(self, cols: Sequence[int] | range) -> Matrix:
        return self.submatrix(range(self.rows), cols)

    @property
    def T(self) -> Matrix:
        return Matrix._raw(self.context, [list(c) for c in zip(*self._data)] if self.rows else [], self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.context == other.context and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self):
        return hash((self.context, self.shape, tuple(map(tuple, self._data))))

    def is_zero(self) -> bool:
        return not any(x for row in self._data for x in row)

    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_add(self, mat_scale(other, -1))

    def __neg__(self):
        return mat_scale(self, -1)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return mat_mul(self, c)
        return mat_scale(self, c)

    def __rmul__(self, c):
        return mat_scale(self, c)

    def __pow__(self, e: int) -> Matrix:
        if not self.is_square():
            raise DimensionMismatch("power of a non-square matrix")
        result = mat_identity(self.rows, self.context)
        base = self
        while e:
            if e & 1:
                result = mat_mul(result, base)
            e >>= 1
            if e:
                base = mat_mul(base, base)
        return result

    def is_rational(self) -> bool:
        if self.context.is_rational:
            return True
        return all(x.is_rational() for row in self._data for x in row)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.tolist())
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def pretty(self) -> str:
        cells = [[str(x) for x in row] for row in self.tolist()]
        if not cells:
            return "[]"
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)


def _check_ctx(a: Matrix, b: Matrix) -> None:
    if a.context != b.context:
        raise ContextMismatch("matrices over different fields")


def mat_identity(n: int, context: FieldContext = QQ) -> Matrix:
    z, o = _zero(context), _one(context)
    return Matrix._raw(context, [[o if i == j else z for j in range(n)] for i in range(n)], n)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    _check_ctx(a, b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot add {a.shape} and {b.shape}")
    return Matrix._raw(a.context, [[x + y for x, y in zip(r, s)] for r, s in zip(a._data, b._data)], a.cols)


def mat_scale(m: Matrix, c) -> Matrix:
    c = _to_raw(m.context, c)
    return Matrix._raw(m.context, [[c * x for x in row] for row in m._data], m.cols)


def _int_form(m: Matrix) -> tuple[list[list[int]], int]:
    """Write a rational matrix as ``rows / d`` with integer rows."""
    d = 1
    for row in m._data:
        for x in row:
            d = lcm(d, x.denominator)
    return [[x.numerator * (d // x.denominator) for x in row] for row in m._data], d


def _int_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _from_int(rows: list[list[int]], d: int, cols: int) -> Matrix:
    return Matrix._raw(QQ, [[Fraction(x, d) for x in row] for row in rows], cols)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    _check_ctx(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if a.context.is_rational:
        ai, da = _int_form(a)
        bi, db = _int_form(b)
        if not b.cols or not a.rows:
            return Matrix.zeros(a.rows, b.cols)
        return _from_int(_int_mul(ai, bi), da * db, b.cols)
    bt = list(zip(*b._data))
    zero = _zero(a.context)
    data = [[sum((x * y for x, y in zip(row, col)), zero) for col in bt] for row in a._data]
    return Matrix._raw(a.context, data, b.cols)


def mat_trace(m: Matrix) -> FieldElement:
    if not m.is_square():
        raise DimensionMismatch("trace of a non-square matrix")
    acc = _zero(m.context)
    for i in range(m.rows):
        acc = acc + m._data[i][i]
    return _wrap(m.context, acc)


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    ctx = blocks[0].context if blocks else QQ
    n = sum(b.rows for b in blocks)
    c = sum(b.cols for b in blocks)
    out = Matrix.zeros(n, c, ctx)
    r0 = c0 = 0
    for b in blocks:
        _check_ctx(out, b)
        for i in range(b.rows):
            out._data[r0 + i][c0:c0 + b.cols] = b._data[i]
        r0 += b.rows
        c0 += b.cols
    return out


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    ctx = blocks[0].context
    rows = blocks[0].rows
    for b in blocks:
        _check_ctx(blocks[0], b)
        if b.rows != rows:
            raise DimensionMismatch("hstack needs equal row counts")
    return Matrix._raw(ctx, [sum((b._data[i] for b in blocks), []) for i in range(rows)],
                       sum(b.cols for b in blocks))


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    ctx = blocks[0].context
    cols = blocks[0].cols
    for b in blocks:
        _check_ctx(blocks[0], b)
        if b.cols != cols:
            raise DimensionMismatch("vstack needs equal column counts")
    return Matrix._raw(ctx, [list(r) for b in blocks for r in b._data], cols)


# -- elimination --------------------------------------------------------------

def _rref_raw(data: list[list], ncols: int, limit: int | None = None):
    """In-place Gauss-Jordan elimination on the first ``limit`` columns."""
    limit = ncols if limit is None else limit
    pivots = []
    r = 0
    nrows = len(data)
    for c in range(limit):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if data[i][c]), None)
        if p is None:
            continue
        data[r], data[p] = data[p], data[r]
        piv = data[r]
        inv = 1 / piv[c]
        piv[:] = [x * inv for x in piv]
        for i in range(nrows):
            if i != r:
                f = data[i][c]
                if f:
                    data[i] = [x - f * y for x, y in zip(data[i], piv)]
        pivots.append(c)
        r += 1
    return pivots


def mat_rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    data = [list(row) for row in m._data]
    pivots = _rref_raw(data, m.cols)
    return Matrix._raw(m.context, data, m.cols), pivots


def mat_rank(m: Matrix) -> int:
    return len(mat_rref(m)[1])


def mat_kernel(m: Matrix) -> Matrix:
    """Basis of the right null space, one column per free variable."""
    r, pivots = mat_rref(m)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    ctx = m.context
    z, o = _zero(ctx), _one(ctx)
    basis = []
    for f in free:
        v = [z] * m.cols
        v[f] = o
        for i, p in enumerate(pivots):
            v[p] = -r._data[i][f]
        basis.append(v)
    data = [[basis[k][i] for k in range(len(free))] for i in range(m.cols)]
    return Matrix._raw(ctx, data, len(free))


def mat_solve(a: Matrix, b: Matrix) -> Matrix:
    """A solution of ``a @ x == b``; free variables are set to zero."""
    _check_ctx(a, b)
    if a.rows != b.rows:
        raise DimensionMismatch(f"cannot solve {a.shape} against {b.shape}")
    data = [list(ra) + list(rb) for ra, rb in zip(a._data, b._data)]
    pivots = _rref_raw(data, a.cols + b.cols, limit=a.cols)
    for row in data[len(pivots):]:
        if any(row[a.cols:]):
            raise InconsistentSystem("the linear system has no solution")
    x = Matrix.zeros(a.cols, b.cols, a.context)
    for i, p in enumerate(pivots):
        x._data[p] = data[i][a.cols:]
    return x


def mat_inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    data = [list(ra) + list(rb) for ra, rb in zip(m._data, mat_identity(m.rows, m.context)._data)]
    pivots = _rref_raw(data, 2 * m.cols, limit=m.cols)
    if len(pivots) < m.rows:
        raise SingularMatrix("matrix is not invertible")
    return Matrix._raw(m.context, [row[m.cols:] for row in data], m.cols)


# -- polynomials attached to a matrix -----------------------------------------

def mat_charpoly(m: Matrix) -> Polynomial:
    """``det(X*I - m)`` through a Hessenberg reduction."""
    if not m.is_square():
        raise DimensionMismatch("characteristic polynomial of a non-square matrix")
    n = m.rows
    h = [list(row) for row in m._data]
    for k in range(1, n - 1):
        p = next((i for i in range(k, n) if h[i][k - 1]), None)
        if p is None:
            continue
        if p != k:
            h[p], h[k] = h[k], h[p]
            for row in h:
                row[p], row[k] = row[k], row[p]
        t = h[k][k - 1]
        for i in range(k + 1, n):
            u = h[i][k - 1] / t
            if u:
                h[i] = [x - u * y for x, y in zip(h[i], h[k])]
                for row in h:
                    row[k] = row[k] + u * row[i]
    ctx = m.context
    X = Polynomial.x(ctx)
    ps = [Polynomial.constant(1, ctx)]
    for k in range(n):
        nxt = (X - _wrap(ctx, h[k][k])) * ps[k]
        t = _one(ctx)
        for i in range(k - 1, -1, -1):
            t = t * h[i + 1][i]
            if not t:
                break
            c = t * h[i][k]
            if c:
                nxt = nxt - ps[i] * _wrap(ctx, c)
        ps.append(nxt)
    return ps[n]


def mat_poly_eval(f: Polynomial, m: Matrix) -> Matrix:
    """``f(m)`` by Horner's scheme, using ``deg f`` matrix products."""
    if not m.is_square():
        raise DimensionMismatch("polynomial of a non-square matrix")
    if f.context != m.context:
        raise ContextMismatch("polynomial and matrix over different fields")
    n = m.rows
    if not f:
        return Matrix.zeros(n, n, m.context)
    if m.context.is_rational:
        return _poly_eval_int(f, m)
    cs = f.coeffs
    acc = mat_scale(mat_identity(n, m.context), cs[-1])
    for c in reversed(cs[:-1]):
        acc = mat_mul(acc, m)
        for i in range(n):
            acc._data[i][i] = acc._data[i][i] + c
    return acc


def _poly_eval_int(f: Polynomial, m: Matrix) -> Matrix:
    # f(m) = (sum_k a_k M^k / d^k) / D with integer M, a_k; track R/d^j exactly.
    mi, d = _int_form(m)
    cs = [c.coeffs[0] for c in f.coeffs]
    big_d = 1
    for c in cs:
        big_d = lcm(big_d, c.denominator)
    a = [c.numerator * (big_d // c.denominator) for c in cs]
    n = m.rows
    acc = [[a[-1] if i == j else 0 for j in range(n)] for i in range(n)]
    scale = 1
    for ak in reversed(a[:-1]):
        acc = _int_mul(acc, mi)
        scale *= d
        if ak:
            add = ak * scale
            for i in range(n):
                acc[i][i] += add
    g = 0
    for row in acc:
        for x in row:
            g = gcd(g, x)
    den = scale * big_d
    g = gcd(g, den) or 1
    return _from_int([[x // g for x in row] for row in acc], den // g, n)


def _mat_vec(m: Matrix, v: list) -> list:
    return [sum((x * y for x, y in zip(row, v)), _zero(m.context)) for row in m._data]


def _poly_vec(f: Polynomial, m: Matrix, v: list) -> list:
    acc = [_zero(m.context)] * len(v)
    for c in reversed(f.coeffs):
        c = _to_raw(m.context, c)
        acc = [x + c * y for x, y in zip(_mat_vec(m, acc), v)]
    return acc


def _berlekamp_massey(seq: list, ctx: FieldContext) -> Polynomial:
    """Monic minimal generating polynomial of a linearly recurrent sequence."""
    z, o = _zero(ctx), _one(ctx)
    c, b = [o], [o]
    length, shift, last = 0, 1, o
    for k, s in enumerate(seq):
        d = s
        for i in range(1, length + 1):
            d = d + c[i] * seq[k - i]
        if not d:
            shift += 1
            continue
        coef = d / last
        t = list(c)
        c = c + [z] * max(0, len(b) + shift - len(c))
        for i, y in enumerate(b):
            c[i + shift] = c[i + shift] - coef * y
        if 2 * length <= k:
            length, b, last, shift = k + 1 - length, t, d, 1
        else:
            shift += 1
    c = c + [z] * max(0, length + 1 - len(c))
    return Polynomial([_wrap(ctx, x) for x in reversed(c[:length + 1])], ctx)


def _rescale(g: Polynomial, d: int) -> Polynomial:
    """Turn a monic annihilator of ``d*m`` into the monic annihilator ``g(dX)/d^r`` of ``m``."""
    r = g.degree
    return Polynomial([c.coeffs[0] * Fraction(d) ** k / Fraction(d) ** r for k, c in enumerate(g.coeffs)])


def mat_minpoly(m: Matrix, seed: int = 0, max_tries: int | None = None) -> Polynomial:
    """Minimal polynomial by Wiedemann's algorithm.

    Random projections ``u^T m^k v`` (``k < 2n``) feed Berlekamp-Massey; the
    lcm of the generators found is accepted once it annihilates ``m`` exactly.
    After ``2n`` unsuccessful pairs the deterministic Krylov method takes over.
    Over Q the sequence is computed on the integer matrix ``d*m``.
    """
    if not m.is_square():
        raise DimensionMismatch("minimal polynomial of a non-square matrix")
    n = m.rows
    ctx = m.context
    rng = random.Random(seed)
    tries = 2 * n if max_tries is None else max_tries
    if ctx.is_rational:
        mi, d = _int_form(m)
        scaled = Matrix._raw(QQ, [[Fraction(x) for x in row] for row in mi], n)

        def matvec(v):
            return [sum(x * y for x, y in zip(row, v)) for row in mi]

        def sample():
            return rng.randint(-9, 9)
    else:
        d, scaled = 1, m

        def matvec(v):
            return _mat_vec(m, v)

        def sample():
            return _to_raw(ctx, rng.randint(-9, 9))

    f = Polynomial.constant(1, ctx)
    for _ in range(tries):
        u = [sample() for _ in range(n)]
        v = [sample() for _ in range(n)]
        seq = []
        for _k in range(2 * n):
            seq.append(sum((x * y for x, y in zip(u, v)), _zero(ctx)))
            v = matvec(v)
        g = _berlekamp_massey([_to_raw(ctx, x) if ctx.is_rational else x for x in seq], ctx)
        if g.degree <= 0:
            continue
        f = poly_lcm(f, g)
        if mat_poly_eval(f, scaled).is_zero():
            return _rescale(f, d) if d != 1 else f
    return krylov_minpoly(m)


def krylov_minpoly(m: Matrix) -> Polynomial:
    """Deterministic minimal polynomial: lcm of the Krylov minimal polynomials of e_1..e_n."""
    if not m.is_square():
        raise DimensionMismatch("minimal polynomial of a non-square matrix")
    n = m.rows
    ctx = m.context
    z, o = _zero(ctx), _one(ctx)
    f = Polynomial.constant(1, ctx)
    for i in range(n):
        e_i = [o if j == i else z for j in range(n)]
        if not any(_poly_vec(f, m, e_i)):
            continue
        # basis entries: (pivot, vector, coefficients of the polynomial producing it)
        basis: list[tuple[int, list, list]] = []
        w = e_i
        k = 0
        while True:
            vec = list(w)
            coeffs = [z] * k + [o]
            for piv, bv, bc in basis:
                c = vec[piv]
                if c:
                    vec = [x - c * y for x, y in zip(vec, bv)]
                    coeffs = [x - c * (bc[j] if j < len(bc) else z) for j, x in enumerate(coeffs)]
            piv = next((j for j, x in enumerate(vec) if x), None)
            if piv is None:
                g = Polynomial([_wrap(ctx, x) for x in coeffs], ctx)
                break
            inv = 1 / vec[piv]
            basis.append((piv, [x * inv for x in vec], [x * inv for x in coeffs]))
            w = _mat_vec(m, w)
            k += 1
        f = poly_lcm(f, g)
    return f


def base_change_context(m: Matrix, ctx: FieldContext) -> Matrix:
    """Embed a rational matrix into ``ctx`` (or descend a rational-valued one back to Q)."""
    if m.context == ctx:
        return m
    if m.context.is_rational:
        return Matrix._raw(ctx, [[ctx(x) for x in row] for row in m._data], m.cols)
    if ctx.is_rational:
        if not m.is_rational():
            raise ContextMismatch("matrix has irrational entries")
        return Matrix._raw(ctx, [[x.coeffs[0] for x in row] for row in m._data], m.cols)
    raise ContextMismatch("base change is only defined out of (or back into) Q")
