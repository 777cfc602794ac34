"""Characteristic projections written as polynomials in the operator.

For an annihilating polynomial ``(X - a)^nu * Q`` with ``Q(a) != 0``, a
Bezout relation ``(X - a)^nu * A + Q * B = 1`` gives the projector onto
``Ker (u - a)^nu`` along the complementary stable subspace as ``(Q*B)(u)``.
Two routes to ``Q*B`` are provided: the extended Euclidean algorithm
(with a Horner shortcut for simple roots) and a division-free product of
shifted squares that needs a single scalar division at the end.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Union

from .field import QQ, FieldContext, FieldElement, parse_rational
from .linalg import (
    Matrix,
    base_change_context,
    krylov_minpoly,
    mat_charpoly,
    mat_identity,
    mat_kernel,
    mat_minpoly,
    mat_mul,
    mat_poly_eval,
    mat_trace,
)
from .poly import (
    Polynomial,
    poly_divrem,
    poly_square,
    poly_xgcd,
    root_valuation,
    squarefree_part,
    synthetic_divide,
    taylor_shift,
)

log = logging.getLogger(__name__)


class ProjectionError(ValueError):
    pass


class NotAnEigenvalue(ProjectionError):
    pass


class MultiplicityError(ProjectionError):
    """The multiplicity passed does not match the annihilator."""


class NotAnnihilating(ProjectionError):
    pass


class CorruptProjector(ProjectionError):
    pass


class Variant(str, enum.Enum):
    EUCLID = "euclid"
    DIVISION_FREE = "division-free"


@dataclass(frozen=True)
class Eigenvalue:
    """A rational number, or an element of Q[Y]/(modulus) (by default the class of Y)."""

    element: FieldElement

    @classmethod
    def rational(cls, value) -> Eigenvalue:
        return cls(QQ(parse_rational(value)))

    @classmethod
    def algebraic(cls, modulus, element=None) -> Eigenvalue:
        ctx = modulus if isinstance(modulus, FieldContext) else FieldContext.extension(modulus)
        return cls(ctx.gen() if element is None else ctx(element))

    @classmethod
    def coerce(cls, value) -> Eigenvalue:
        if isinstance(value, Eigenvalue):
            return value
        if isinstance(value, FieldElement):
            return cls(value)
        return cls.rational(value)

    @property
    def context(self) -> FieldContext:
        return self.element.context

    @property
    def modulus(self):
        return self.context.modulus

    def is_rational(self) -> bool:
        return self.element.is_rational()

    def minimal_polynomial(self) -> Polynomial:
        """Minimal polynomial of the eigenvalue over Q."""
        if self.context.is_rational:
            return Polynomial([-self.element.coeffs[0], 1])
        ctx, d = self.context, self.context.degree
        # multiplication-by-element on the basis 1, Y, ..., Y^(d-1)
        y = ctx.gen()
        cols, power = [], ctx.one()
        for _ in range(d):
            cols.append((self.element * power).coeffs)
            power = power * y
        mult = Matrix([[cols[j][i] for j in range(d)] for i in range(d)])
        return krylov_minpoly(mult)

    def to_json(self) -> dict:
        if self.context.is_rational:
            return {"value": str(self.element.coeffs[0])}
        return {"modulus": [str(c) for c in self.modulus], "element": self.element.to_json()}

    def __str__(self):
        if self.context.is_rational:
            return str(self.element)
        return f"{self.element} in Q[Y]/({Polynomial(self.modulus).__str__().replace('X', 'Y')})"


AnnihilatorChoice = Union[str, Polynomial]


@dataclass(frozen=True)
class ProjectionResult:
    eigenvalue: Eigenvalue
    nu: int
    proj_poly: Polynomial
    projector: Matrix
    annihilator: Polynomial
    variant: Variant
    annihilator_source: str = "minpoly"

    @property
    def trace(self) -> FieldElement:
        return mat_trace(self.projector)

    def violations(self, operator: Matrix) -> list[str]:
        """Names of the projector invariants that fail against ``operator``."""
        pi = self.projector
        if operator.context != pi.context:
            operator = base_change_context(operator, pi.context)
        bad = []
        if mat_mul(pi, pi) != pi:
            bad.append("idempotent")
        if mat_mul(pi, operator) != mat_mul(operator, pi):
            bad.append("commutes")
        shifted = operator - mat_identity(operator.rows, operator.context) * self.eigenvalue.element
        if self.nu and not mat_mul(shifted ** self.nu, pi).is_zero():
            bad.append("annihilated")
        if mat_poly_eval(self.proj_poly, operator) != pi:
            bad.append("poly_eval")
        return bad

    def to_json(self) -> dict:
        from .formats import matrix_to_json

        return {
            "eigenvalue": self.eigenvalue.to_json(),
            "nu": self.nu,
            "proj_poly": self.proj_poly.to_json(),
            "projector": matrix_to_json(self.projector),
            "annihilator": self.annihilator.to_json(),
            "annihilator_source": self.annihilator_source,
            "variant": self.variant.value,
        }


def _split_root(annihilator: Polynomial, alpha: FieldElement, nu: int) -> Polynomial:
    """Return the cofactor of ``(X - alpha)^nu`` after checking ``nu`` is the exact multiplicity."""
    if nu < 1:
        raise MultiplicityError("multiplicity must be positive")
    if alpha.context != annihilator.context:
        alpha = annihilator.context(alpha)
    full, cofactor = root_valuation(annihilator, alpha)
    if full < nu:
        raise MultiplicityError(f"(X - {alpha})^{nu} does not divide the annihilator (multiplicity {full})")
    if full > nu:
        raise MultiplicityError(
            f"multiplicity of {alpha} is {full}, not {nu}: the cofactor would vanish at the eigenvalue"
        )
    return cofactor


def polyproj(annihilator: Polynomial, alpha, nu: int) -> Polynomial:
    """Projection polynomial ``Q*B`` for the root ``alpha`` of multiplicity ``nu``.

    ``B`` is the Bezout cofactor of ``Q = annihilator / (X - alpha)^nu``
    against ``(X - alpha)^nu``.  The result is congruent to 1 modulo
    ``(X - alpha)^nu`` and to 0 modulo ``Q``.
    """
    ctx = annihilator.context
    alpha = alpha if isinstance(alpha, FieldElement) else ctx(alpha)
    q = _split_root(annihilator, alpha, nu)
    if nu == 1:
        # one Horner division: B is the constant 1/Q(alpha)
        _, value = synthetic_divide(q, alpha)
        return q / value
    power = Polynomial.linear(alpha) ** nu
    _, b, _ = poly_xgcd(q, power)
    return q * b


def polyproj_division_free(annihilator: Polynomial, alpha, nu: int) -> Polynomial:
    """Same projection polynomial, built from shifts and squarings plus one scalar division.

    With ``P = annihilator / (X - alpha)^nu = a + (X - alpha)^mu * Qt`` the
    telescoping product, with ``t = (X - alpha)^mu * Qt``,
    ``P * (a - t) * prod_{j=2..e} (a^(2^(j-1)) + t^(2^(j-1)))``
    equals ``a^(2^e) - t^(2^e)``, which is ``a^(2^e)`` modulo
    ``(X - alpha)^nu`` as soon as ``2^e * mu >= nu``.  Only the first
    factor carries a minus sign; alternating signs break the telescoping
    from the third factor on.
    """
    ctx = annihilator.context
    alpha = alpha if isinstance(alpha, FieldElement) else ctx(alpha)
    p = _split_root(annihilator, alpha, nu)
    shifted = taylor_shift(p, alpha)
    a = shifted[0]
    if p.degree <= 0:
        return p / a
    mu = next(k for k in range(1, len(shifted.coeffs)) if shifted.coeffs[k])
    qt = taylor_shift(Polynomial._raw(ctx, list(shifted.coeffs[mu:])), -alpha)
    e = 0
    while (mu << e) < nu:
        e += 1
    term = (Polynomial.linear(alpha) ** mu * qt) % annihilator  # == P - a
    acc = p
    a_pow = a
    for j in range(1, e + 1):
        factor = a_pow - term if j == 1 else a_pow + term
        acc = (acc * factor) % annihilator
        if j < e:
            term = poly_square(term) % annihilator
            a_pow = a_pow * a_pow
    scale = a ** (1 << e)
    return (acc % annihilator) / scale


def _annihilator(m: Matrix, choice: AnnihilatorChoice, ctx: FieldContext, seed: int,
                 squarefree: bool) -> tuple[Polynomial, str]:
    if isinstance(choice, Polynomial):
        ann = choice.base_change(ctx) if choice.context != ctx else choice
        source = "supplied"
    elif choice == "minpoly":
        ann, source = mat_minpoly(m, seed=seed), "minpoly"
    elif choice == "charpoly":
        ann, source = mat_charpoly(m), "charpoly"
    else:
        raise ValueError(f"unknown annihilator choice {choice!r}")
    if squarefree:
        ann, source = squarefree_part(ann), source + "+squarefree"
    if ann.context != ctx:
        ann = ann.base_change(ctx)
    return ann, source


def projector(
    m: Matrix,
    alpha,
    annihilator: AnnihilatorChoice = "minpoly",
    variant: Variant | str = Variant.EUCLID,
    seed: int = 0,
    squarefree: bool = False,
) -> ProjectionResult:
    """Characteristic projector of ``m`` for the eigenvalue ``alpha``.

    ``annihilator`` is ``"minpoly"``, ``"charpoly"`` or an explicit
    polynomial, which is checked to annihilate ``m``.  ``squarefree=True``
    replaces the annihilator by its squarefree part, the simple-root shortcut
    valid when ``m`` is semisimple (otherwise the check rejects it).
    When ``alpha`` is algebraic the computation runs in its number field.
    """
    if not m.is_square():
        raise ValueError("projector of a non-square matrix")
    eig = Eigenvalue.coerce(alpha)
    variant = Variant(variant)
    ctx = eig.context
    # minimal and characteristic polynomials do not change under field extension
    ann_source = m if m.context.is_rational else base_change_context(m, ctx)
    ann, source = _annihilator(ann_source, annihilator, ctx, seed, squarefree)
    mm = base_change_context(m, ctx) if m.context != ctx else m
    if isinstance(annihilator, Polynomial) or squarefree:
        if not mat_poly_eval(ann, mm).is_zero():
            raise NotAnnihilating("the supplied polynomial does not annihilate the matrix")
    nu, _ = root_valuation(ann, eig.element)
    if nu == 0:
        raise NotAnEigenvalue(f"{eig} is not an eigenvalue (not a root of the annihilator)")
    build = polyproj if variant is Variant.EUCLID else polyproj_division_free
    poly = build(ann, eig.element, nu) % ann
    pi = mat_poly_eval(poly, mm)
    log.debug("projector for %s: nu=%d, deg proj_poly=%d", eig, nu, poly.degree)
    return ProjectionResult(eig, nu, poly, pi, ann, variant, source)


def generalized_eigenspace_oracle(m: Matrix, alpha, nu: int) -> Matrix:
    """Basis (as columns) of ``Ker (m - alpha)^nu``, computed by brute force."""
    eig = Eigenvalue.coerce(alpha)
    mm = base_change_context(m, eig.context) if m.context != eig.context else m
    shifted = mm - mat_identity(mm.rows, mm.context) * eig.element
    return mat_kernel(shifted ** nu)


def char_dimension(m: Matrix, alpha) -> int:
    """Algebraic multiplicity of ``alpha`` in the characteristic polynomial of ``m``."""
    eig = Eigenvalue.coerce(alpha)
    if not m.context.is_rational:
        mm = m if m.context == eig.context else base_change_context(m, eig.context)
        return root_valuation(mat_charpoly(mm), eig.element)[0]
    chi = mat_charpoly(m)
    if eig.context.is_rational:
        return root_valuation(chi, eig.element)[0]
    mu = eig.minimal_polynomial()
    v = 0
    while True:
        q, r = poly_divrem(chi, mu)
        if r:
            return v
        chi, v = q, v + 1


def projector_rank_by_trace(p: ProjectionResult) -> int:
    """Dimension of the characteristic space, read off the trace of the projector."""
    t = p.trace
    if not t.is_rational():
        raise CorruptProjector(f"projector trace {t} is not rational")
    r = t.coeffs[0]
    if r.denominator != 1 or r < 0:
        raise CorruptProjector(f"projector trace {r} is not a non-negative integer")
    return int(r)

