"""Command line front end.

    charproj projector MATRIX.json --eigenvalue 1
    charproj projector MATRIX.json --modulus 1,0,1 --element 0,1
    charproj polyproj 1,1,-1,-1 --eigenvalue -1
    charproj dims MATRIX.json
    charproj recombine DECOMPOSITION.json --eigenvalue 1
    charproj tower --floor U.json --descent D.json --upper V.json --eigenvalue -1
    charproj check [FIXTURE_DIR]

Exit status: 0 on success, 1 for a mathematical error, 2 for I/O or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import sympy

from . import __version__
from .decomp import BlockDecomposition, block_projections, block_projector, recombine_block_projection, tower_projection
from .field import FieldError, parse_rational
from .formats import FormatError, dumps, load_json, load_matrix, matrix_to_json, poly_from_json
from .linalg import mat_charpoly, mat_minpoly, mat_trace
from .poly import Polynomial, parse_poly, rational_roots, root_valuation, squarefree_decomposition, synthetic_divide
from .projection import Eigenvalue, ProjectionError, Variant, polyproj, polyproj_division_free, projector
from .regression import FIXTURE_DIR, run_checks


class UsageError(Exception):
    pass


def _eigenvalue(args) -> Eigenvalue:
    if args.modulus:
        if args.eigenvalue is not None:
            raise UsageError("give either --eigenvalue or --modulus/--element")
        modulus = [parse_rational(c) for c in args.modulus.split(",")]
        element = [parse_rational(c) for c in args.element.split(",")] if args.element else None
        return Eigenvalue.algebraic(modulus, element)
    if args.eigenvalue is None:
        raise UsageError("an eigenvalue is required (--eigenvalue or --modulus/--element)")
    return Eigenvalue.rational(args.eigenvalue)


def _annihilator(args):
    choice = args.annihilator
    if choice in ("minpoly", "charpoly"):
        return choice
    if choice.startswith("file:"):
        data = load_json(choice[5:])
        if isinstance(data, dict):
            data = data.get("coeffs", data.get("annihilator"))
        return poly_from_json(data)
    raise UsageError(f"--annihilator must be minpoly, charpoly or file:<path>, not {choice!r}")


def _emit(args, payload: dict, summary: list[str]) -> None:
    text = "\n".join(summary) + "\n"
    if args.output:
        Path(args.output).write_text(dumps(payload), encoding="utf-8")
        sys.stdout.write(text)
    elif args.json:
        sys.stdout.write(dumps(payload))
    else:
        sys.stdout.write(text)


def _matrix_lines(title: str, m) -> list[str]:
    return [title] + ["  " + line for line in m.pretty().splitlines()]


def cmd_projector(args) -> int:
    m = load_matrix(args.matrix)
    eig = _eigenvalue(args)
    res = projector(m, eig, annihilator=_annihilator(args), variant=args.variant,
                    seed=args.seed, squarefree=args.squarefree)
    trace = mat_trace(res.projector)
    summary = [
        f"eigenvalue: {eig}",
        f"annihilator ({res.annihilator_source}): {res.annihilator}",
        f"multiplicity nu: {res.nu}",
        f"variant: {res.variant.value}",
        f"projection polynomial: {res.proj_poly}",
        *_matrix_lines("projector:", res.projector),
        f"trace (dimension): {trace}",
    ]
    _emit(args, res.to_json(), summary)
    return 0


def cmd_polyproj(args) -> int:
    eig = _eigenvalue(args)
    ctx = eig.context
    if args.matrix:
        m = load_matrix(args.matrix)
        ann = mat_charpoly(m) if args.annihilator == "charpoly" else mat_minpoly(m, seed=args.seed)
    elif args.coeffs:
        ann = parse_poly(args.coeffs)
    else:
        ann = _annihilator(args)
        if isinstance(ann, str):
            raise UsageError("polyproj needs coefficients, --matrix, or --annihilator file:<path>")
    ann = ann.base_change(ctx) if ann.context != ctx else ann
    nu = args.nu if args.nu else root_valuation(ann, eig.element)[0]
    if nu == 0:
        raise ProjectionError(f"{eig} is not an eigenvalue (not a root of the annihilator)")
    build = polyproj if Variant(args.variant) is Variant.EUCLID else polyproj_division_free
    g = build(ann, eig.element, nu) % ann
    payload = {"eigenvalue": eig.to_json(), "nu": nu, "annihilator": ann.to_json(),
               "proj_poly": g.to_json(), "variant": Variant(args.variant).value}
    _emit(args, payload, [f"annihilator: {ann}", f"multiplicity nu: {nu}", f"projection polynomial: {g}"])
    return 0


def _irreducible_factors(f: Polynomial) -> list[Polynomial]:
    x = sympy.Symbol("X")
    expr = sum(sympy.Rational(c.coeffs[0].numerator, c.coeffs[0].denominator) * x**k
               for k, c in enumerate(f.coeffs))
    _, factors = sympy.factor_list(expr, x, domain="QQ")
    out = []
    for fac, _mult in factors:
        coeffs = sympy.Poly(fac, x).all_coeffs()[::-1]
        out.append(Polynomial([parse_rational(str(c)) for c in coeffs]).monic())
    return sorted(out, key=lambda p: (p.degree, str(p)))


def cmd_dims(args) -> int:
    m = load_matrix(args.matrix)
    if not m.context.is_rational:
        raise UsageError("dims works on rational matrices")
    chi = mat_charpoly(m)
    lines = [f"characteristic polynomial: {chi}", "squarefree decomposition:"]
    roots, residual = [], []
    for factor, mult in squarefree_decomposition(chi):
        lines.append(f"  ({factor})^{mult}")
        rest = factor
        for r in rational_roots(factor):
            roots.append((r, mult))
            rest, _ = synthetic_divide(rest, rest.context(r))
        if rest.degree > 0:
            for irr in _irreducible_factors(rest):
                residual.append((irr, mult))
    lines.append("rational eigenvalues:")
    for r, mult in sorted(roots):
        lines.append(f"  {r}: algebraic multiplicity {mult}, characteristic space dimension {mult}")
    if residual:
        lines.append("irrational spectrum, supply a modulus to project:")
        for f, mult in residual:
            lines.append(f"  {f} (degree {f.degree}), multiplicity {mult}")
    payload = {
        "charpoly": chi.to_json(),
        "squarefree": [{"factor": f.to_json(), "multiplicity": k} for f, k in squarefree_decomposition(chi)],
        "rational_roots": [{"root": str(r), "multiplicity": k} for r, k in sorted(roots)],
        "residual_factors": [{"factor": f.to_json(), "degree": f.degree, "multiplicity": k} for f, k in residual],
    }
    _emit(args, payload, lines)
    return 0


def cmd_recombine(args) -> int:
    dec = BlockDecomposition.from_json(load_json(args.decomposition))
    eig = _eigenvalue(args)
    opts = dict(annihilator=_annihilator(args), variant=args.variant, seed=args.seed)
    per_block = block_projections(dec, eig, **opts)
    lines = []
    for (label, m), res in zip(dec.blocks, per_block):
        if res is None:
            lines.append(f"block {label} ({m.rows}x{m.rows}): {eig} is not an eigenvalue, zero projector")
        else:
            lines.append(f"block {label} ({m.rows}x{m.rows}): nu = {res.nu}, trace {res.trace}, "
                         f"polynomial {res.proj_poly}")
    blocks = block_projector(dec, eig, **opts)
    res = recombine_block_projection(dec, eig, **opts)
    lines += _matrix_lines("projector in block coordinates:", blocks)
    lines += _matrix_lines("projector in the ambient basis:", res.projector)
    lines.append(f"ambient polynomial: {res.proj_poly}")
    lines.append(f"trace (dimension): {res.trace}")
    payload = res.to_json()
    payload["block_projector"] = matrix_to_json(blocks)
    _emit(args, payload, lines)
    return 0


def cmd_tower(args) -> int:
    eig = _eigenvalue(args)
    lift = load_matrix(args.lift) if args.lift else None
    pi = tower_projection(load_matrix(args.floor), eig, load_matrix(args.descent),
                          load_matrix(args.upper), lift=lift)
    lines = _matrix_lines("upper projector (pulled back from the floor, checked against the direct one):", pi)
    lines.append(f"trace (dimension): {mat_trace(pi)}")
    _emit(args, {"eigenvalue": eig.to_json(), "projector": matrix_to_json(pi)}, lines)
    return 0


def cmd_check(args) -> int:
    d = Path(args.directory) if args.directory else FIXTURE_DIR
    verdicts = run_checks(d)
    for v in verdicts:
        print(v.line())
    failed = [v for v in verdicts if not v.ok]
    if failed and all(f.failures[0].startswith("missing fixture") for f in failed) and len(failed) == len(verdicts):
        print("expected fixtures: " + ", ".join(v.fixture for v in verdicts))
    print(f"{len(verdicts) - len(failed)}/{len(verdicts)} fixtures pass")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.EUCLID.value)
    common.add_argument("--annihilator", default="minpoly", help="minpoly, charpoly or file:<path>")
    common.add_argument("--seed", type=int, default=0, help="seed for the Wiedemann projections")
    common.add_argument("--output", help="write the JSON result to this path")
    common.add_argument("--json", action="store_true", help="print the JSON result instead of the summary")

    eig = argparse.ArgumentParser(add_help=False)
    eig.add_argument("--eigenvalue", help="rational eigenvalue, e.g. 1, -1, 3/2")
    eig.add_argument("--modulus", help="defining polynomial of the number field, lowest first, e.g. 1,0,1")
    eig.add_argument("--element", help="eigenvalue as coefficients on 1, Y, ... (default: Y)")

    parser = argparse.ArgumentParser(prog="charproj", description="Characteristic projections as polynomials.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("projector", parents=[common, eig], help="projector for one eigenvalue")
    p.add_argument("matrix")
    p.add_argument("--squarefree", action="store_true",
                   help="use the squarefree part of the annihilator (semisimple operators)")
    p.set_defaults(func=cmd_projector)

    p = sub.add_parser("polyproj", parents=[common, eig], help="projection polynomial only")
    p.add_argument("coeffs", nargs="?", help="annihilator coefficients, lowest first")
    p.add_argument("--matrix", help="take the annihilator from this matrix")
    p.add_argument("--nu", type=int, help="multiplicity (default: read off the annihilator)")
    p.set_defaults(func=cmd_polyproj)

    p = sub.add_parser("dims", parents=[common], help="characteristic space dimensions")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("recombine", parents=[common, eig], help="projector assembled from blocks")
    p.add_argument("decomposition")
    p.set_defaults(func=cmd_recombine)

    p = sub.add_parser("tower", parents=[common, eig], help="upper projector from a floor projector")
    p.add_argument("--floor", required=True)
    p.add_argument("--descent", required=True)
    p.add_argument("--upper", required=True)
    p.add_argument("--lift")
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("check", help="run the fixture regression suite")
    p.add_argument("directory", nargs="?")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", file=sys.stderr)
        return 2
    except (OSError, FormatError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ProjectionError, FieldError, ArithmeticError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
