import random

import pytest

from charproj.decomp import (
    BlockDecomposition,
    DependentBasis,
    Intertwiner,
    InvalidIntertwiner,
    NotInSpan,
    TowerError,
    block_projector,
    check_intertwiner,
    compose,
    conjugate_operator,
    equivariant_transport,
    find_in_span,
    recombine_block_projection,
    tower_projection,
)
from charproj.formats import load_matrix
from charproj.linalg import Matrix, SingularMatrix, mat_identity, mat_inverse, mat_mul, mat_trace
from charproj.projection import NotAnEigenvalue, projector

from planted import Tower, jordan_block, jordan_matrix, random_unimodular


def test_intertwiner_accepts_inclusion_of_stable_subspace():
    m = jordan_matrix([(2, 2), (5, 1)])
    j = Matrix([[1, 0], [0, 1], [0, 0]])
    assert check_intertwiner(Intertwiner(j, jordan_block(2, 2), m)) == (True, None)


def test_intertwiner_witnesses():
    m = Matrix.diagonal([1, 2])
    dependent = Matrix([[1, 2], [1, 2]])
    assert check_intertwiner(Intertwiner(dependent, m, m)) == (False, 1)
    not_commuting = Matrix([[1, 1], [0, 1]])
    ok, witness = check_intertwiner(Intertwiner(not_commuting, m, m))
    assert not ok and witness == 1
    with pytest.raises(ValueError):
        check_intertwiner(Intertwiner(Matrix([[1, 0]]), m, m))


def test_equivariant_transport(t3):
    rng = random.Random(2)
    s = random_unimodular(rng, 7)
    target = mat_mul(mat_mul(s, t3), mat_inverse(s))
    res = equivariant_transport(Intertwiner(s, t3, target), 1)
    assert res.commutes
    assert mat_mul(s, res.source.projector) == mat_mul(res.target.projector, s)


def test_transport_rejects_non_intertwiner():
    m = Matrix.diagonal([1, 2])
    with pytest.raises(InvalidIntertwiner):
        equivariant_transport(Intertwiner(Matrix([[0, 1], [1, 0]]), m, m), 1)


def test_conjugation_orientation():
    p = Matrix([[1, 1], [0, 1]])
    b = Matrix.diagonal([1, 0])
    assert conjugate_operator(b, p) == mat_mul(mat_mul(mat_inverse(p), b), p)
    assert conjugate_operator(b, mat_identity(2)) == b


def test_level30_recombination(level30_decomposition, fixture_dir):
    d = level30_decomposition
    assert block_projector(d, 1) == load_matrix(fixture_dir / "proj_adapted_9x9.json")
    res = recombine_block_projection(d, 1)
    assert res.projector == load_matrix(fixture_dir / "miller_basis_9x9.json")
    assert res.annihilator_source == "block-lcm"
    assert res.projector == projector(d.ambient_operator(), 1).projector


def test_single_block_recombination(t3):
    d = BlockDecomposition(7, (("T3", t3),), mat_identity(7))
    assert recombine_block_projection(d, 1).projector == projector(t3, 1).projector


def test_recombination_zero_when_absent(level30_decomposition):
    res = recombine_block_projection(level30_decomposition, 17)
    assert res.nu == 0
    assert res.projector.is_zero()
    assert not res.proj_poly


def test_recombination_variants_agree(level30_decomposition):
    for ann in ("minpoly", "charpoly"):
        a = recombine_block_projection(level30_decomposition, -1, annihilator=ann)
        b = recombine_block_projection(level30_decomposition, -1, annihilator=ann, variant="division-free")
        assert a.projector == b.projector and a.proj_poly == b.proj_poly
        assert mat_trace(a.projector) == 2


def test_decomposition_validation(t3):
    with pytest.raises(ValueError):
        BlockDecomposition(8, (("T3", t3),), mat_identity(8))
    with pytest.raises(SingularMatrix):
        BlockDecomposition(1, (("a", Matrix([[1]])),), Matrix([[0]]))
    with pytest.raises(ValueError):
        BlockDecomposition(2, (("a", Matrix([[1, 2]])),), mat_identity(2))


def test_decomposition_json_round_trip(level30_decomposition):
    d = level30_decomposition
    assert BlockDecomposition.from_json(d.to_json()) == d


def test_find_in_span():
    basis = Matrix([[1, 0], [1, 1], [0, 2]])
    assert [str(c) for c in find_in_span(basis, [2, 5, 6])] == ["2", "3"]
    with pytest.raises(NotInSpan):
        find_in_span(basis, [1, 0, 0])
    with pytest.raises(DependentBasis):
        find_in_span(Matrix([[1, 2], [1, 2]]), [1, 1])


def test_compose_order():
    a, b = Matrix([[1, 1], [0, 1]]), Matrix([[2, 0], [0, 1]])
    assert compose([a, b]) == mat_mul(b, a)
    assert compose([a]) == a


@pytest.mark.parametrize("seed", range(12))
def test_tower_matches_direct(seed):
    rng = random.Random(seed)
    t = Tower(rng, rng.randint(1, 4), rng.randint(1, 4), alpha=-1 if seed % 3 == 0 else None)
    with_lift = tower_projection(t.u, t.alpha, t.descent, t.v, lift=t.lift)
    without = tower_projection(t.u, t.alpha, t.descent, t.v)
    assert with_lift == without == projector(t.v, t.alpha).projector
    assert mat_trace(with_lift) == t.multiplicity


def test_tower_sign_case():
    # floor eigenvalue -1: the pulled-back projector is minus lift * pi * descent
    rng = random.Random(99)
    t = Tower(rng, 3, 2, alpha=-1)
    pi_floor = projector(t.u, -1).projector
    assert tower_projection(t.u, -1, t.descent, t.v) == mat_mul(mat_mul(t.lift, pi_floor), t.descent) * -1


def test_tower_two_floors():
    rng = random.Random(4)
    low = Tower(rng, 2, 2, alpha=2)
    mid_dim = low.v.rows
    # a second floor built on top of the first upper space
    from charproj.linalg import hstack, vstack

    rest = Matrix([[rng.randint(-2, 2) for _ in range(2)] for _ in range(mid_dim)])
    d1 = hstack([low.v, rest])
    l1 = vstack([mat_identity(mid_dim), Matrix.zeros(2, mid_dim)])
    top = mat_mul(l1, d1)
    descent = compose([d1, low.descent])
    assert mat_mul(descent, top) == mat_mul(low.u, descent)
    pi = tower_projection(low.u, 2, descent, top)
    assert pi == projector(top, 2).projector


def test_tower_errors():
    rng = random.Random(8)
    t = Tower(rng, 3, 2, alpha=1)
    with pytest.raises(TowerError):
        tower_projection(t.u, 0, t.descent, t.v)
    with pytest.raises(TowerError):
        tower_projection(t.u, 1, t.descent, t.v + mat_identity(t.v.rows))
    with pytest.raises(NotAnEigenvalue):
        tower_projection(t.u, 17, t.descent, t.v)
    with pytest.raises(TowerError):
        tower_projection(t.u, 1, t.descent, t.v, lift=t.lift * 2)
    j = jordan_block(1, 2)
    with pytest.raises(TowerError):
        tower_projection(j, 1, mat_identity(2), j)
