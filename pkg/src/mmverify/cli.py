"""Command-line interface.

Exit codes: 0 ok, 1 negative answer (not a member, not equal, failed check),
2 usage or input error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import sys

from .groebner import BudgetExceeded, CoefficientGrowthError, ExponentOverflow, NotMember, get_limits, set_limits
from .idealfile import IdealFileError, format_ideal, read_ideal
from .idealops import (
    Ideal,
    SaturationCapExceeded,
    dimension,
    eliminate,
    equal,
    first_not_contained,
    intersect,
    lift_certificate,
    member,
    quotient,
    saturate,
)
from .mayr_meyer import (
    MMParams,
    RootsUnavailable,
    block_ideal,
    build_component,
    build_J,
    build_J_long,
    build_L,
    build_min_intersection,
    build_p,
    build_p_minus4,
    build_prime,
    lemma_intersection,
    parse_label,
    witness,
)
from .ring import GREVLEX, LEX, Field, RingError, render_poly
from .verify import CHECK_IDS, run_suite

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

FAMILIES = ("J", "Jl", "p:<r>", "P:<label>", "comp:<label>", "p4", "minint", "lemma:<r>",
            "L:<L'|L''|L'''>", "block:<E|F|E3|C<r>|D<r>|B<r>>", "witness")


class UsageError(Exception):
    pass


def gen_family(spec: str, params: MMParams) -> Ideal:
    """Build a named ideal from a family spec such as ``J``, ``p:2`` or ``comp:Pm2``."""
    head, _, arg = spec.partition(":")
    if head == "J" and not arg:
        return build_J(params)
    if head == "Jl" and not arg:
        return build_J_long(params)
    if head == "p4" and not arg:
        return build_p_minus4(params)
    if head == "minint" and not arg:
        return build_min_intersection(params)
    if head == "witness" and not arg:
        return Ideal(params.ring, [witness(params)], ["w"])
    if head == "p" and arg:
        return build_p(int(arg), params)
    if head == "lemma" and arg:
        return lemma_intersection(int(arg), params)
    if head in ("P", "prime") and arg:
        return build_prime(parse_label(arg, params), params)
    if head == "comp" and arg:
        return build_component(parse_label(arg, params), params)
    if head == "L" and arg:
        return build_L(arg, params)
    if head == "block" and arg:
        kind = arg[0]
        if arg in ("E", "F", "E3", "E'''"):
            return block_ideal(arg, params)
        if kind in "CDB" and arg[1:].isdigit():
            return block_ideal(kind, params, int(arg[1:]))
    raise UsageError(f"unknown family {spec!r}; known: {', '.join(FAMILIES)}")


def _params(args) -> MMParams:
    fld = Field.parse(args.field if args.field != "auto" else "q")
    return MMParams(args.n, args.d, fld)


def load_ideal(src: str, args) -> Ideal:
    """Ideal from a file path or an inline ``gen:<family>`` spec."""
    if src.startswith("gen:"):
        return gen_family(src[4:], _params(args))
    return read_ideal(src)


def _emit(text: str, out: str | None):
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _summary(I: Ideal) -> str:
    return f"{len(I.gens)} generators, max degree {I.max_degree()}"


# ---------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    P = _params(args)
    I = gen_family(args.family, P)
    text = format_ideal(I, f"{args.family} n={P.n} d={P.d}")
    if args.out:
        _emit(text, args.out)
    else:
        sys.stdout.write(text)
    print(_summary(I), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def _order(args):
    return LEX if args.order == "lex" else GREVLEX


def cmd_gb(args) -> int:
    I = load_ideal(args.ideal, args)
    G = I.groebner(_order(args))
    _emit(format_ideal(Ideal(I.ring, G.elements), f"reduced {args.order} basis, {len(G)} elements"), args.out)
    return EXIT_OK


def cmd_member(args) -> int:
    I = load_ideal(args.ideal, args)
    f = I.ring.parse(args.poly)
    if member(f, I):
        print("member")
        return EXIT_OK
    print("not member")
    print(f"normal form: {render_poly(I.groebner().normal_form(f))}")
    return EXIT_NO


def cmd_certify(args) -> int:
    I = load_ideal(args.ideal, args)
    f = I.ring.parse(args.poly)
    try:
        cert = lift_certificate(f, I)
    except NotMember:
        print("not member")
        return EXIT_NO
    names = I.names or [f"g{i}" for i in range(len(I.gens))]
    for name, q in zip(names, cert.cofactors):
        if q:
            print(f"{name}: {render_poly(q)}")
    print(f"max cofactor degree {cert.max_cofactor_degree}")
    print(f"max term degree {cert.max_term_degree}")
    return EXIT_OK if cert.verify() else EXIT_NO


def cmd_intersect(args) -> int:
    A, B = load_ideal(args.a, args), load_ideal(args.b, args)
    K = intersect(A, B)
    _emit(format_ideal(Ideal(K.ring, K.groebner().elements), "intersection"), args.out)
    return EXIT_OK


def cmd_quotient(args) -> int:
    I = load_ideal(args.ideal, args)
    Q = quotient(I, I.ring.parse(args.poly))
    _emit(format_ideal(Ideal(Q.ring, Q.groebner().elements), f"quotient by {args.poly}"), args.out)
    return EXIT_OK


def cmd_saturate(args) -> int:
    I = load_ideal(args.ideal, args)
    S, k = saturate(I, I.ring.parse(args.poly))
    _emit(format_ideal(Ideal(S.ring, S.groebner().elements), f"saturation by {args.poly}, stable at exponent {k}"),
          args.out)
    return EXIT_OK


def cmd_eliminate(args) -> int:
    I = load_ideal(args.ideal, args)
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    E = eliminate(I, names)
    _emit(format_ideal(E, f"eliminated {', '.join(names)}"), args.out)
    return EXIT_OK


def cmd_dim(args) -> int:
    I = load_ideal(args.ideal, args)
    if I.is_unit():
        print("unit ideal")
        return EXIT_NO
    dim = dimension(I)
    print(f"dim {dim}, height {I.ring.nvars - dim}")
    return EXIT_OK


def cmd_contains(args) -> int:
    A, B = load_ideal(args.a, args), load_ideal(args.b, args)
    g = first_not_contained(A, B)
    if g is None:
        print("contains")
        return EXIT_OK
    print("not contained")
    print(f"witness: {render_poly(g)}")
    return EXIT_NO


def cmd_equal(args) -> int:
    A, B = load_ideal(args.a, args), load_ideal(args.b, args)
    if equal(A, B):
        print("equal")
        return EXIT_OK
    print("not equal")
    g = first_not_contained(A, B) or first_not_contained(B, A)
    if g is not None:
        print(f"witness: {render_poly(g)}")
    return EXIT_NO


def cmd_verify(args) -> int:
    if args.n >= 3 and args.profile != "extended":
        raise UsageError("n >= 3 runs take long; pass --profile extended")
    selection = None
    if args.only:
        selection = [s.strip() for s in args.only.split(",") if s.strip()]
        unknown = [s for s in selection if s not in CHECK_IDS]
        if unknown:
            raise UsageError(f"unknown checks: {', '.join(unknown)}; known: {', '.join(CHECK_IDS)}")
    field = args.field if args.field == "auto" else Field.parse(args.field)
    report = run_suite(args.n, args.d, field, selection, jobs=args.jobs)
    text = report.summary()
    if args.json:
        _emit(report.to_json(timing=not args.no_timing) + "\n", args.json)
    if args.report:
        _emit(text + "\n", args.report)
    if args.json != "-":
        print(text)
    return EXIT_OK if report.ok else EXIT_NO


def cmd_table(args) -> int:
    """CSV of generator counts and degrees."""
    fld = Field.parse(args.field if args.field != "auto" else "q")
    print("n,d,J_generators,J_max_degree,Jl_generators,Jl_max_degree")
    for n in range(args.n_min, args.n_max + 1):
        for d in range(args.d_min, args.d_max + 1):
            P = MMParams(n, d, fld)
            J, Jl = build_J(P), build_J_long(P)
            print(f"{n},{d},{len(J.gens)},{J.max_degree()},{len(Jl.gens)},{Jl.max_degree()}")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="Mayr-Meyer level count (default 2)")
    common.add_argument("--d", type=int, default=2, help="Mayr-Meyer degree parameter (default 2)")
    common.add_argument("--field", default="q", help="q, gf:<p>, or auto (verify only)")
    common.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    common.add_argument("--budget", type=int, default=None, help="Buchberger step budget")
    common.add_argument("--out", default=None, help="output file (default stdout)")

    p = argparse.ArgumentParser(prog="mmverify", description="Exact ideal computations for Mayr-Meyer ideals.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="write a named ideal")
    g.add_argument("family", help="one of: " + ", ".join(FAMILIES))
    g.set_defaults(func=cmd_gen)

    def ideal_cmd(name, func, helptext, poly=False):
        q = sub.add_parser(name, parents=[common], help=helptext)
        q.add_argument("--ideal", required=True, help="ideal file or gen:<family>")
        if poly:
            q.add_argument("--poly", required=True)
        q.set_defaults(func=func)
        return q

    def pair_cmd(name, func, helptext):
        q = sub.add_parser(name, parents=[common], help=helptext)
        q.add_argument("--a", required=True, help="ideal file or gen:<family>")
        q.add_argument("--b", required=True, help="ideal file or gen:<family>")
        q.set_defaults(func=func)

    ideal_cmd("gb", cmd_gb, "reduced Groebner basis")
    ideal_cmd("member", cmd_member, "ideal membership", poly=True)
    ideal_cmd("certify", cmd_certify, "membership certificate over the given generators", poly=True)
    pair_cmd("intersect", cmd_intersect, "intersection of two ideals")
    ideal_cmd("quotient", cmd_quotient, "colon ideal I : f", poly=True)
    ideal_cmd("saturate", cmd_saturate, "saturation I : f^inf", poly=True)
    e = ideal_cmd("eliminate", cmd_eliminate, "eliminate variables")
    e.add_argument("--vars", required=True, help="comma separated variable names")
    ideal_cmd("dim", cmd_dim, "Krull dimension and height")
    pair_cmd("contains", cmd_contains, "does A contain B")
    pair_cmd("equal", cmd_equal, "ideal equality")

    v = sub.add_parser("verify", parents=[common], help="run the check registry")
    v.set_defaults(field="auto", func=cmd_verify)
    v.add_argument("--profile", choices=("default", "extended"), default="default")
    v.add_argument("--only", default=None, help="comma separated check ids")
    v.add_argument("--json", default=None, help="JSON report path ('-' for stdout)")
    v.add_argument("--report", default=None, help="text summary path")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--no-timing", action="store_true", help="omit timings for byte-stable JSON")

    t = sub.add_parser("table", parents=[common], help="CSV of generator counts and degrees")
    t.add_argument("--n-min", type=int, default=2)
    t.add_argument("--n-max", type=int, default=5)
    t.add_argument("--d-min", type=int, default=2)
    t.add_argument("--d-max", type=int, default=4)
    t.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = get_limits().steps
    if args.budget is not None:
        set_limits(steps=args.budget)
    try:
        return args.func(args)
    except (BudgetExceeded, CoefficientGrowthError, ExponentOverflow, SaturationCapExceeded) as e:
        print(f"error: budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except RootsUnavailable as e:
        print(f"error: RootsUnavailable: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, IdealFileError, RingError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        set_limits(steps=saved)


if __name__ == "__main__":
    sys.exit(main())
