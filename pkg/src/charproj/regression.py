"""Regression suite over the shipped Hecke-operator fixtures.

Each fixture file gets one verdict.  The level 30 files carry the T3
operator, its projector for the eigenvalue 1 and the Atkin-Lehner-Li
splitting; the level 30/90 files carry the printed U3 projectors and
projection polynomials for the eigenvalue -1, whose annihilators are
reconstructed and certified here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Callable

from .decomp import BlockDecomposition, block_projector, conjugate_operator, recombine_block_projection
from .field import FieldContext
from .formats import load_json, matrix_from_json, poly_from_json
from .linalg import Matrix, base_change_context, mat_charpoly, mat_minpoly, mat_mul, mat_poly_eval, mat_trace
from .poly import Polynomial, root_valuation
from .projection import Eigenvalue, char_dimension, polyproj, projector, projector_rank_by_trace

FIXTURE_DIR = Path(__file__).with_name("fixtures")

T3_CHARPOLY = Polynomial([-9, -3, -5, 1, 7, 5, 3, 1])
T3_PROJ_POLY = Polynomial([9, 12, 17, 16, 9, 4, 1]) / 68
# (X+1)^2 times the degree 6 cofactor, scaled as a whole by 1/272
AMBIENT_PROJ_POLY = Polynomial([9, 30, 50, 62, 58, 38, 18, 6, 1]) / 272
# the other reading of the printed formula: only the leading term carries 1/272
AMBIENT_PROJ_POLY_ALT = Polynomial([9, 30, 50, 62, 58, 38, 18, 6, Fraction(1, 272)])


@dataclass
class Verdict:
    fixture: str
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def expect(self, cond: bool, what: str) -> None:
        if not cond:
            self.failures.append(what)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        detail = "" if self.ok else ": " + "; ".join(self.failures)
        return f"{status} {self.fixture}{detail}"


def bezout_by_linear_system(cofactor: list[Fraction], alpha: Fraction, nu: int) -> list[Fraction]:
    """Projection polynomial ``Q*B`` solved from a triangular linear system.

    Writing ``B = sum_k b_k (X - alpha)^k`` for ``k < nu``, the conditions
    ``Q*B = 1 + O((X - alpha)^nu)`` read ``sum_{i<=k} q_{k-i} b_i = [k == 0]``
    with ``q_k`` the Taylor coefficients of ``Q`` at ``alpha``.  Uses only
    Fractions and binomial sums, independently of the polynomial module.
    """
    q = [sum(c * comb(n, k) * alpha ** (n - k) for n, c in enumerate(cofactor) if n >= k)
         for k in range(nu)]
    b: list[Fraction] = []
    for k in range(nu):
        rhs = Fraction(1 if k == 0 else 0) - sum(q[k - i] * b[i] for i in range(k))
        b.append(rhs / q[0])
    # expand B in powers of X, then multiply by Q
    b_x = [sum(b[k] * comb(k, n) * (-alpha) ** (k - n) for k in range(n, nu)) for n in range(nu)]
    out = [Fraction(0)] * (len(cofactor) + nu - 1)
    for i, x in enumerate(cofactor):
        for j, y in enumerate(b_x):
            out[i + j] += x * y
    while out and not out[-1]:
        out.pop()
    return out


def _load_matrix(d: Path, name: str) -> Matrix:
    return matrix_from_json(load_json(d / name))


def check_t3(d: Path) -> Verdict:
    v = Verdict("t3_level30_7x7.json")
    t3 = _load_matrix(d, v.fixture)
    chi = mat_charpoly(t3)
    v.expect(chi == T3_CHARPOLY, f"charpoly is {chi}")
    v.expect(mat_minpoly(t3) == T3_CHARPOLY, "minpoly differs from charpoly")
    g = polyproj(chi, 1, 1)
    v.expect(g == T3_PROJ_POLY, f"projection polynomial is {g}")
    v.expect(char_dimension(t3, 1) == 1, "eigenvalue 1 is not simple")
    # Galois pair i, -i in Q(i)
    qi = FieldContext.extension([1, 0, 1])
    p_i = projector(t3, Eigenvalue.algebraic(qi)).projector
    p_mi = projector(t3, Eigenvalue(-qi.gen())).projector
    v.expect(mat_mul(p_i, p_i) == p_i, "projector for i is not idempotent")
    v.expect(mat_trace(p_i) == 1, "projector for i does not have trace 1")
    v.expect((p_i + p_mi).is_rational(), "projector for the pair i, -i is not rational")
    return v


def check_t3_projector(d: Path) -> Verdict:
    v = Verdict("proj_t3_level30_7x7.json")
    t3 = _load_matrix(d, "t3_level30_7x7.json")
    expected = _load_matrix(d, v.fixture)
    v.expect(mat_poly_eval(T3_PROJ_POLY, t3) == expected, "(1/68)(...) at T3 differs from the fixture")
    res = projector(t3, 1)
    v.expect(res.projector == expected, "projector(T3, 1) differs from the fixture")
    v.expect(projector_rank_by_trace(res) == 1, "trace is not 1")
    return v


def check_decomposition(d: Path) -> Verdict:
    v = Verdict("all_level30.json")
    dec = BlockDecomposition.from_json(load_json(d / v.fixture))
    v.expect(dec.labels == ["S2(15)new-V1", "S2(15)new-V2", "S2(30)new"], f"labels {dec.labels}")
    res = recombine_block_projection(dec, 1)
    v.expect(not res.violations(dec.ambient_operator()), "recombined projector fails its invariants")
    direct = projector(dec.ambient_operator(), 1)
    v.expect(direct.projector == res.projector, "recombination differs from the direct ambient projector")
    return v


def check_adapted(d: Path) -> Verdict:
    v = Verdict("proj_adapted_9x9.json")
    dec = BlockDecomposition.from_json(load_json(d / "all_level30.json"))
    expected = _load_matrix(d, v.fixture)
    v.expect(block_projector(dec, 1) == expected, "block projector differs from the adapted-basis fixture")
    return v


def check_miller(d: Path) -> Verdict:
    v = Verdict("miller_basis_9x9.json")
    dec = BlockDecomposition.from_json(load_json(d / "all_level30.json"))
    expected = _load_matrix(d, v.fixture)
    adapted = _load_matrix(d, "proj_adapted_9x9.json")
    v.expect(conjugate_operator(adapted, dec.change_of_basis) == expected,
             "P^-1 (adapted projector) P differs from the Miller-basis fixture")
    v.expect(recombine_block_projection(dec, 1).projector == expected, "recombination differs")
    ambient = dec.ambient_operator()
    v.expect(mat_poly_eval(AMBIENT_PROJ_POLY, ambient) == expected,
             "(1/272)(X^8 + ... + 9) at the ambient operator differs")
    v.expect(mat_poly_eval(AMBIENT_PROJ_POLY_ALT, ambient) != expected,
             "the leading-term-only reading of 1/272 also matches")
    res = recombine_block_projection(dec, 1, annihilator="charpoly")
    v.expect(res.proj_poly == AMBIENT_PROJ_POLY, f"charpoly route gives {res.proj_poly}")
    return v


def _tower_levels(d: Path) -> tuple[Fraction, int, list[dict]]:
    data = load_json(d / "tower_level30_90.json")
    return Fraction(data["eigenvalue"]), int(data["nu"]), data["levels"]


def check_tower_polynomials(d: Path) -> Verdict:
    v = Verdict("tower_level30_90.json")
    alpha, nu, levels = _tower_levels(d)
    for level in levels:
        ann = poly_from_json(level["annihilator"])
        printed = poly_from_json(level["proj_poly"])
        full, cofactor = root_valuation(ann, ann.context(alpha))
        v.expect(full == nu, f"{level['label']}: multiplicity {full}")
        raw = [c.to_rational() for c in cofactor.coeffs]
        oracle = Polynomial(bezout_by_linear_system(raw, alpha, nu))
        v.expect(oracle == printed, f"{level['label']}: linear-system certificate gives {oracle}")
        v.expect(polyproj(ann, alpha, nu) == printed, f"{level['label']}: polyproj disagrees")
    return v


def _check_printed_projector(d: Path, name: str) -> Verdict:
    v = Verdict(name)
    alpha, nu, levels = _tower_levels(d)
    pi = _load_matrix(d, name)
    v.expect(mat_mul(pi, pi) == pi, "not idempotent")
    v.expect(mat_trace(pi) == 2, f"trace {mat_trace(pi)} instead of 2")
    level = next((l for l in levels if l["projector"] == name), None)
    if level is None:
        v.expect(False, "no tower level refers to this projector")
        return v
    ann = poly_from_json(level["annihilator"])
    v.expect(ann.degree == pi.rows, "reconstructed annihilator degree differs from the dimension")
    v.expect(root_valuation(ann, ann.context(alpha))[0] == mat_trace(pi), "trace differs from the multiplicity")
    return v


def check_level30(d: Path) -> Verdict:
    return _check_printed_projector(d, "proj_level30_3x3.json")


def check_level90(d: Path) -> Verdict:
    return _check_printed_projector(d, "proj_level90_11x11.json")


CHECKS: dict[str, Callable[[Path], Verdict]] = {
    "t3_level30_7x7.json": check_t3,
    "proj_t3_level30_7x7.json": check_t3_projector,
    "all_level30.json": check_decomposition,
    "proj_adapted_9x9.json": check_adapted,
    "miller_basis_9x9.json": check_miller,
    "tower_level30_90.json": check_tower_polynomials,
    "proj_level30_3x3.json": check_level30,
    "proj_level90_11x11.json": check_level90,
}


def run_checks(directory: str | Path = FIXTURE_DIR) -> list[Verdict]:
    d = Path(directory)
    verdicts = []
    for name, check in CHECKS.items():
        if not (d / name).is_file():
            verdicts.append(Verdict(name, [f"missing fixture {d / name}"]))
            continue
        try:
            verdicts.append(check(d))
        except Exception as exc:  # any crash is a failed fixture, reported with its type
            verdicts.append(Verdict(name, [f"{type(exc).__name__}: {exc}"]))
    return verdicts
