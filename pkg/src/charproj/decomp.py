"""Computing projections through maps that commute with the operator.

If ``j`` is injective with ``j u = v j`` then ``j pi(u) = pi(v) j`` for every
eigenvalue.  This gives three shortcuts: projections on a direct sum are
assembled from the summands (then moved to another basis by conjugation),
and projections high in a tower are pulled back from a lower floor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .field import FieldElement
from .formats import FormatError, matrix_from_json, matrix_to_json
from .linalg import (
    InconsistentSystem,
    Matrix,
    SingularMatrix,
    base_change_context,
    block_diagonal,
    mat_identity,
    mat_inverse,
    mat_charpoly,
    mat_minpoly,
    mat_mul,
    mat_rank,
    mat_rref,
    mat_solve,
    vstack,
)
from .poly import Polynomial, poly_lcm, root_valuation
from .projection import (
    Eigenvalue,
    NotAnEigenvalue,
    ProjectionError,
    ProjectionResult,
    Variant,
    polyproj,
    polyproj_division_free,
    projector,
)


class InvalidIntertwiner(ProjectionError):
    pass


class EquivarianceViolation(AssertionError):
    """Projectors failed to commute with an intertwiner: a bug, never an input error."""


class NotInSpan(ArithmeticError):
    pass


class DependentBasis(ValueError):
    pass


class TowerError(ProjectionError):
    pass


@dataclass(frozen=True)
class BlockDecomposition:
    """Operator blocks plus the change of basis whose rows are the block basis in ambient coordinates."""

    ambient_dim: int
    blocks: tuple[tuple[str, Matrix], ...]
    change_of_basis: Matrix

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple((str(l), m) for l, m in self.blocks))
        if sum(m.rows for _, m in self.blocks) != self.ambient_dim:
            raise ValueError("block dimensions do not add up to the ambient dimension")
        for label, m in self.blocks:
            if not m.is_square():
                raise ValueError(f"block {label!r} is not square")
        p = self.change_of_basis
        if p.shape != (self.ambient_dim, self.ambient_dim):
            raise ValueError("change of basis must be ambient_dim x ambient_dim")
        if mat_rank(p) != self.ambient_dim:
            raise SingularMatrix("change of basis is singular")

    @property
    def labels(self) -> list[str]:
        return [l for l, _ in self.blocks]

    def block_operator(self) -> Matrix:
        return block_diagonal([m for _, m in self.blocks])

    def ambient_operator(self) -> Matrix:
        return conjugate_operator(self.block_operator(), self.change_of_basis)

    @classmethod
    def from_json(cls, data: dict) -> BlockDecomposition:
        try:
            blocks = [(b["label"], matrix_from_json(b["matrix"])) for b in data["blocks"]]
            return cls(int(data["ambient_dim"]), tuple(blocks), matrix_from_json(data["change_of_basis"]))
        except (KeyError, TypeError) as exc:
            raise FormatError("decomposition needs 'ambient_dim', 'blocks' and 'change_of_basis'") from exc

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "blocks": [{"label": l, "matrix": matrix_to_json(m)} for l, m in self.blocks],
            "change_of_basis": matrix_to_json(self.change_of_basis),
        }


@dataclass(frozen=True)
class Intertwiner:
    j: Matrix
    source_op: Matrix
    target_op: Matrix


def check_intertwiner(i: Intertwiner) -> tuple[bool, int | None]:
    """Check ``j`` is injective and ``j u == v j``.

    Returns ``(ok, witness)``; the witness is the first column of ``j`` that is
    dependent on the previous ones, or else the first column of ``j u - v j``
    that is nonzero.
    """
    j, u, v = i.j, i.source_op, i.target_op
    if not (u.is_square() and v.is_square()) or j.shape != (v.rows, u.rows):
        raise ValueError(f"incompatible shapes j{j.shape}, u{u.shape}, v{v.shape}")
    _, pivots = mat_rref(j)
    if len(pivots) < j.cols:
        return False, next(c for c in range(j.cols) if c not in pivots)
    diff = mat_mul(j, u) - mat_mul(v, j)
    for c in range(diff.cols):
        if any(diff.col(c)):
            return False, c
    return True, None


@dataclass(frozen=True)
class TransportResult:
    source: ProjectionResult
    target: ProjectionResult
    commutes: bool


def equivariant_transport(i: Intertwiner, alpha, **options) -> TransportResult:
    """Project on both sides independently and confirm ``j pi_source == pi_target j``."""
    ok, witness = check_intertwiner(i)
    if not ok:
        raise InvalidIntertwiner(f"not an intertwiner (column {witness})")
    src = projector(i.source_op, alpha, **options)
    tgt = projector(i.target_op, alpha, **options)
    ctx = src.projector.context
    j = base_change_context(i.j, ctx) if i.j.context != ctx else i.j
    commutes = mat_mul(j, src.projector) == mat_mul(tgt.projector, j)
    if not commutes:
        raise EquivarianceViolation("projectors do not commute with the intertwiner")
    return TransportResult(src, tgt, commutes)


def conjugate_operator(m: Matrix, p: Matrix) -> Matrix:
    """``p^-1 m p``: rewrites an operator given in the basis formed by the rows of ``p``."""
    if p.shape != m.shape:
        raise ValueError("dimension mismatch in conjugation")
    if p.context != m.context:
        p = base_change_context(p, m.context)
    return mat_mul(mat_mul(mat_inverse(p), m), p)


def block_projections(d: BlockDecomposition, alpha, **options) -> list[ProjectionResult | None]:
    """Per-block projections; ``None`` where ``alpha`` is not an eigenvalue of the block."""
    out = []
    for _, m in d.blocks:
        try:
            out.append(projector(m, alpha, **options))
        except NotAnEigenvalue:
            out.append(None)
    return out


def block_projector(d: BlockDecomposition, alpha, **options) -> Matrix:
    """Block-diagonal projector in block coordinates."""
    eig = Eigenvalue.coerce(alpha)
    parts = []
    for (_, m), res in zip(d.blocks, block_projections(d, eig, **options)):
        parts.append(res.projector if res is not None else Matrix.zeros(m.rows, m.rows, eig.context))
    return block_diagonal(parts)


def recombine_block_projection(d: BlockDecomposition, alpha, annihilator="minpoly",
                               variant=Variant.EUCLID, seed: int = 0) -> ProjectionResult:
    """Ambient projector assembled from the blocks, expressed in the ambient basis."""
    eig = Eigenvalue.coerce(alpha)
    variant = Variant(variant)
    ctx = eig.context
    results = block_projections(d, eig, annihilator=annihilator, variant=variant, seed=seed)
    parts = []
    ann = Polynomial.constant(1, ctx)
    for (_, m), res in zip(d.blocks, results):
        if res is None:
            parts.append(Matrix.zeros(m.rows, m.rows, ctx))
            block_ann = mat_charpoly(m) if annihilator == "charpoly" else mat_minpoly(m, seed=seed)
            block_ann = block_ann.base_change(ctx) if block_ann.context != ctx else block_ann
        else:
            parts.append(res.projector)
            block_ann = res.annihilator
        # the characteristic polynomial of a block sum is the product, any other choice combines by lcm
        ann = ann * block_ann if annihilator == "charpoly" else poly_lcm(ann, block_ann)
    nu, _ = root_valuation(ann, eig.element)
    if nu:
        build = polyproj if variant is Variant.EUCLID else polyproj_division_free
        poly = build(ann, eig.element, nu) % ann
    else:
        poly = Polynomial([], ctx)
    p = d.change_of_basis
    pi = conjugate_operator(block_diagonal(parts), base_change_context(p, ctx) if p.context != ctx else p)
    source = "block-product" if annihilator == "charpoly" else "block-lcm"
    return ProjectionResult(eig, nu, poly, pi, ann, variant, source)


def find_in_span(basis: Matrix, v) -> list[FieldElement]:
    """Coordinates ``c`` with ``basis @ c == v``."""
    col = v if isinstance(v, Matrix) else Matrix.column(list(v), basis.context)
    if mat_rank(basis) != basis.cols:
        raise DependentBasis("basis columns are linearly dependent")
    try:
        return mat_solve(basis, col).col(0)
    except InconsistentSystem as exc:
        raise NotInSpan("vector is not in the span of the basis") from exc


def _column_space(m: Matrix) -> Matrix:
    _, pivots = mat_rref(m)
    return m.columns(pivots)


def tower_projection(u_floor: Matrix, alpha, descent: Matrix, v_upper: Matrix,
                     lift: Matrix | None = None, verify: bool = True) -> Matrix:
    """Upper projector pulled back from the floor: ``alpha^-1 * lift * pi_floor * descent``.

    ``descent`` maps the upper space to the floor and satisfies
    ``descent @ v_upper == u_floor @ descent``.  ``alpha`` must be a nonzero
    simple root of the floor minimal polynomial.  ``lift`` maps the floor back
    up with ``descent @ lift == u_floor`` on the floor characteristic space
    (for an operator whose image lies in the floor, the inclusion); when it
    is omitted it is solved for inside ``Ker(v_upper - alpha)``.  With
    ``verify`` the result is compared with the projector computed directly
    on the upper space and any difference raises :class:`TowerError`.
    """
    eig = Eigenvalue.coerce(alpha)
    a = eig.element
    if not a:
        raise TowerError("the eigenvalue must be nonzero")
    ctx = eig.context

    def lift_ctx(m):
        return base_change_context(m, ctx) if m.context != ctx else m

    u, d, v = lift_ctx(u_floor), lift_ctx(descent), lift_ctx(v_upper)
    if d.shape != (u.rows, v.rows) or mat_mul(d, v) != mat_mul(u, d):
        raise TowerError("descent does not intertwine the upper and floor operators")
    floor_min = mat_minpoly(u_floor)
    nu, _ = root_valuation(floor_min.base_change(ctx) if floor_min.context != ctx else floor_min, a)
    if nu == 0:
        raise NotAnEigenvalue(f"{eig} is not an eigenvalue of the floor operator")
    if nu > 1:
        raise TowerError(f"{eig} is not a simple root of the floor minimal polynomial")
    pi_floor = projector(u_floor, eig, annihilator=floor_min).projector
    if lift is not None:
        l = lift_ctx(lift)
        if mat_mul(mat_mul(d, l), pi_floor) != mat_mul(u, pi_floor):
            raise TowerError("lift does not invert the descent on the floor characteristic space")
        pulled = mat_mul(mat_mul(l, pi_floor), d)
    else:
        basis = _column_space(pi_floor)
        n = v.rows
        stacked = vstack([d, v - mat_identity(n, ctx) * a])
        rhs = vstack([mat_mul(u, basis), Matrix.zeros(n, basis.cols, ctx)])
        try:
            lifted = mat_solve(stacked, rhs)
        except InconsistentSystem as exc:
            raise TowerError("floor eigenvectors do not lift to the upper space") from exc
        coords = mat_solve(basis, mat_mul(pi_floor, d))
        pulled = mat_mul(lifted, coords)
    result = pulled * (1 / a)
    if verify:
        direct = projector(v, eig).projector
        if direct != result:
            raise TowerError("tower projection differs from the direct upper projector")
    return result


def compose(maps: Sequence[Matrix]) -> Matrix:
    """``maps[-1] @ ... @ maps[0]``: chain descents (or lifts) floor by floor."""
    out = maps[0]
    for m in maps[1:]:
        out = mat_mul(m, out)
    return out

