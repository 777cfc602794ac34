"""Random operators with a known Jordan structure, for property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from charproj.linalg import Matrix, block_diagonal, mat_inverse, mat_mul

EIGEN_POOL = (-3, -2, -1, 0, 1, 2, 3)


def jordan_block(value, size: int) -> Matrix:
    return Matrix([[value if i == j else (1 if j == i + 1 else 0) for j in range(size)] for i in range(size)])


def random_blocks(rng: random.Random, n: int, pool=EIGEN_POOL) -> list[tuple[int, int]]:
    """Random list of (eigenvalue, block size) with sizes summing to n."""
    values = rng.sample(pool, k=rng.randint(1, min(3, len(pool))))
    blocks, left = [], n
    while left:
        size = rng.randint(1, min(left, 6))
        blocks.append((rng.choice(values), size))
        left -= size
    return blocks


def jordan_matrix(blocks) -> Matrix:
    return block_diagonal([jordan_block(v, s) for v, s in blocks])


def random_unimodular(rng: random.Random, n: int) -> Matrix:
    """Integer matrix with determinant +-1, built from elementary row operations."""
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.choice((-2, -1, 1, 2))
        rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
    rng.shuffle(rows)
    return Matrix(rows)


class Planted:
    """m = S J S^-1 with J a Jordan matrix; the columns of S are adapted to the blocks."""

    def __init__(self, rng: random.Random, n: int, pool=EIGEN_POOL):
        self.blocks = random_blocks(rng, n, pool)
        self.J = jordan_matrix(self.blocks)
        self.S = random_unimodular(rng, n)
        self.S_inv = mat_inverse(self.S)
        self.m = mat_mul(mat_mul(self.S, self.J), self.S_inv)
        self.n = n

    @property
    def eigenvalues(self) -> list[int]:
        return sorted({v for v, _ in self.blocks})

    def multiplicity(self, value) -> int:
        return sum(s for v, s in self.blocks if v == value)

    def index(self, value) -> int:
        """Size of the largest Jordan block for ``value`` (its multiplicity in the minimal polynomial)."""
        return max((s for v, s in self.blocks if v == value), default=0)

    def block_columns(self, chosen: list[int]) -> list[int]:
        cols, start = [], 0
        for k, (_, s) in enumerate(self.blocks):
            if k in chosen:
                cols += range(start, start + s)
            start += s
        return cols


def planted_failures(p: Planted, rng: random.Random, seeds=(0,)) -> list[str]:
    """Run every projector invariant on one planted matrix; return the names that fail."""
    from charproj.decomp import Intertwiner, equivariant_transport
    from charproj.linalg import krylov_minpoly, mat_charpoly, mat_minpoly, mat_poly_eval, mat_rank, hstack
    from charproj.poly import Polynomial
    from charproj.projection import generalized_eigenspace_oracle, projector, projector_rank_by_trace

    bad = []
    m = p.m
    krylov = krylov_minpoly(m)
    for seed in seeds:
        if mat_minpoly(m, seed=seed) != krylov:
            bad.append(f"wiedemann-seed-{seed}")
    chi = mat_charpoly(m)
    extra = Polynomial([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))] + [1])
    for alpha in p.eigenvalues:
        res = projector(m, alpha)
        bad += [f"{alpha}:{name}" for name in res.violations(m)]
        if res.nu != p.index(alpha):
            bad.append(f"{alpha}:nu")
        pi = res.projector
        # image equals the brute-force generalised eigenspace
        oracle = generalized_eigenspace_oracle(m, alpha, p.n)
        if mat_rank(pi) != oracle.cols or mat_rank(hstack([pi, oracle])) != oracle.cols:
            bad.append(f"{alpha}:oracle")
        if projector_rank_by_trace(res) != p.multiplicity(alpha):
            bad.append(f"{alpha}:trace")
        for ann in ("charpoly", chi * extra):
            if projector(m, alpha, annihilator=ann).projector != pi:
                bad.append(f"{alpha}:annihilator-{'charpoly' if ann == 'charpoly' else 'multiple'}")
        # another member of the Bezout family: B + k (X - alpha)^nu
        k = Polynomial([rng.randint(-2, 2) for _ in range(3)])
        other = res.proj_poly + res.annihilator * k
        if mat_poly_eval(other, m) != pi:
            bad.append(f"{alpha}:bezout-family")
        if projector(m, alpha, variant="division-free").proj_poly != res.proj_poly:
            bad.append(f"{alpha}:division-free")
        # restriction to the span of a random subset of Jordan chains
        chosen = sorted(rng.sample(range(len(p.blocks)), rng.randint(1, len(p.blocks))))
        cols = p.block_columns(chosen)
        j = p.S.columns(cols)
        sub = jordan_matrix([p.blocks[c] for c in chosen])
        if any(p.blocks[c][0] == alpha for c in chosen):
            restricted = projector(sub, alpha).projector
            if mat_mul(pi, j) != mat_mul(j, restricted):
                bad.append(f"{alpha}:restriction")
            try:
                equivariant_transport(Intertwiner(j, sub, m), alpha)
            except AssertionError:
                bad.append(f"{alpha}:equivariance")
        elif not mat_mul(pi, j).is_zero():
            bad.append(f"{alpha}:restriction-zero")
    return bad


class Tower:
    """Upper operator ``v = lift @ descent`` whose image lies in a semisimple floor.

    The floor operator is ``u = descent @ lift``.  In the adapted basis the lift
    is the inclusion of the first ``f`` coordinates; a random unimodular change
    of basis hides that.  ``alpha`` is a nonzero eigenvalue of the floor.
    """

    def __init__(self, rng: random.Random, f: int, extra: int, alpha=None):
        from charproj.linalg import hstack, vstack

        values = [v for v in EIGEN_POOL if v]
        self.alpha = alpha if alpha is not None else rng.choice(values)
        diag = [self.alpha] + [rng.choice(EIGEN_POOL) for _ in range(f - 1)]
        rng.shuffle(diag)
        s = random_unimodular(rng, f)
        self.u = mat_mul(mat_mul(s, Matrix.diagonal(diag)), mat_inverse(s))
        rest = Matrix([[rng.randint(-2, 2) for _ in range(extra)] for _ in range(f)])
        d0 = hstack([self.u, rest])
        l0 = vstack([Matrix.diagonal([1] * f), Matrix.zeros(extra, f)])
        t = random_unimodular(rng, f + extra)
        t_inv = mat_inverse(t)
        self.descent = mat_mul(d0, t_inv)
        self.lift = mat_mul(t, l0)
        self.v = mat_mul(self.lift, self.descent)
        self.multiplicity = diag.count(self.alpha)
