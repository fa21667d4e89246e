"""``zk``: command-line front end.

Exit status is 0 on success, 1 when a verification fails (witnesses are
printed), and 2 on usage, parse or computation errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from .errors import LocalZetaError, NonUniformCount, NotPolynomialCount
from .ffield import primes_below
from .formats import parse_algebra_file, parse_formula_file
from .geom import DEFAULT_BUDGET, count_points, parse_constructible
from .localmap import evaluate, evaluate_star, numeric_hat_eval, topological, uniformize
from .mring import red
from .oracles import MonomialIdealSet, catalog, igusa_principal_exact, igusa_truncated, subzeta_coeffs
from .ratfun import parse_cyclo
from .verify import Grid, equiv_check, funeq_check
from .weil import DEFAULT_SLACK, euler_characteristic, extend_count, fit_counts

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


class _Usage(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _frange(text: str) -> list[int]:
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            return list(range(int(lo), int(hi) + 1))
        except ValueError:
            pass
        raise argparse.ArgumentTypeError(f"expected a range like 1..3, got {text!r}")
    return _int_list(text)


def _sign(text: str) -> int:
    if text not in ("+1", "1", "-1"):
        raise argparse.ArgumentTypeError("epsilon must be +1 or -1")
    return int(text)


def _add_common(p: argparse.ArgumentParser, *, grid=False, place=False, fit=False):
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    if place:
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--f", type=int, default=1)
    if grid or fit:
        p.add_argument("--primes", type=_int_list)
        p.add_argument("--primes-below", type=int)
    if grid:
        p.add_argument("--frange", type=_frange, default=[1, 2, 3])
    if fit or grid:
        p.add_argument("--depth", type=int)
        p.add_argument("--slack", type=int, default=DEFAULT_SLACK)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zk", description="Exact computations with local zeta functions of Denef type.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    c = sub.add_parser("count", help="points of a variety over F_{p^f}")
    c.add_argument("--variety", required=True)
    _add_common(c, place=True)

    w = sub.add_parser("weil", help="fit the count recurrence at p; with --f, the extended count")
    w.add_argument("--variety", required=True)
    w.add_argument("--p", type=int, required=True)
    w.add_argument("--f", type=int)
    _add_common(w, fit=True)

    x = sub.add_parser("chi", help="Euler characteristic from uniform point counts")
    x.add_argument("--variety", required=True)
    _add_common(x, fit=True)

    for verb, helptext in (("eval", "evaluate at (p, f), f >= 1"), ("evalstar", "evaluate Z_* at (p, f), f != 0")):
        e = sub.add_parser(verb, help=helptext)
        e.add_argument("--formula", required=True)
        _add_common(e, place=True, fit=verb == "evalstar")
        e.add_argument("--s", type=lambda t: [Fraction(v) for v in t.split(",")],
                       help="substitute Y_j = p^(-f s_j) and print the value")

    r = sub.add_parser("red", help="reduction mod (X - 1) of a W-expression")
    r.add_argument("--W", required=True)
    r.add_argument("--m", type=int)

    t = sub.add_parser("topo", help="topological zeta function")
    t.add_argument("--formula", required=True)
    _add_common(t, fit=True)

    u = sub.add_parser("uniformize", help="uniform representative W, if any")
    u.add_argument("--formula", required=True)
    _add_common(u, fit=True)

    q = sub.add_parser("equiv", help="compare two formulas on a grid")
    q.add_argument("--formula", required=True)
    q.add_argument("--formula2", required=True)
    _add_common(q, grid=True)

    fe = sub.add_parser("funeq", help="check Z_*(p,-f) = eps p^(a f) Y^b Z(p,f)")
    fe.add_argument("--formula", required=True)
    fe.add_argument("--eps", type=_sign, required=True)
    fe.add_argument("--xexp", type=int, required=True)
    fe.add_argument("--yexp", type=_int_list, required=True)
    _add_common(fe, grid=True)

    o = sub.add_parser("oracle-subzeta", help="count closed sublattices of index p^k")
    o.add_argument("--algebra", required=True)
    o.add_argument("--p", type=int, required=True)
    o.add_argument("--kmax", type=int, required=True)
    _add_common(o)

    g = sub.add_parser("oracle-igusa", help="truncated monomial Igusa integral")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--ideal", action="append", required=True,
                   help="generators of one ideal as exponent vectors, e.g. '2,1;0,3'")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--s", type=_int_list, required=True)
    g.add_argument("--B", type=int, default=20)
    g.add_argument("--exact", action="store_true", help="also print the closed form (principal case)")

    k = sub.add_parser("catalog", help="print or evaluate a known formula")
    k.add_argument("--name", required=True)
    k.add_argument("--p", type=int)
    k.add_argument("--f", type=int, default=1)
    return parser


def _primes(args, fallback=None):
    if getattr(args, "primes", None):
        return args.primes
    if getattr(args, "primes_below", None):
        return primes_below(args.primes_below)
    return fallback


def _grid(args) -> Grid:
    primes = _primes(args) or Grid().primes
    return Grid(tuple(primes), tuple(args.frange), args.budget)


def _parse_ideal(text: str, n: int):
    gens = []
    for chunk in text.split(";"):
        vec = _int_list(chunk)
        if len(vec) != n:
            raise _Usage(f"generator {chunk!r} needs {n} exponents")
        gens.append(tuple(vec))
    return gens


def _report(report, out) -> int:
    for line in report.lines():
        print(line, file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def _dispatch(args, out) -> int:
    verb = args.verb
    if verb == "count":
        print(count_points(parse_constructible(args.variety), args.p, args.f, budget=args.budget), file=out)
    elif verb == "weil":
        model = fit_counts(parse_constructible(args.variety), args.p, args.depth, args.slack, args.budget)
        print("counts " + " ".join(map(str, model.counts)), file=out)
        print("rec " + " ".join(map(str, model.rec)), file=out)
        spec = "none" if model.spectral is None else " ".join(f"({m},{j})" for m, j in model.spectral)
        print("spectral " + spec, file=out)
        if args.f is not None:
            print(f"N({args.f}) = {extend_count(model, args.f)}", file=out)
    elif verb == "chi":
        try:
            chi = euler_characteristic(parse_constructible(args.variety), _primes(args), args.depth, args.slack, args.budget)
        except NonUniformCount as exc:
            print(f"NON-UNIFORM witness p={exc.witness[0]} p={exc.witness[1]}: {exc}", file=out)
            return EXIT_FAIL
        except NotPolynomialCount as exc:
            print(f"NOT POLYNOMIAL-COUNT: {exc}", file=out)
            return EXIT_FAIL
        print(chi, file=out)
    elif verb in ("eval", "evalstar"):
        F = parse_formula_file(args.formula)
        if args.s is not None:
            if verb == "evalstar" and args.f < 0:
                raise _Usage("--s is only supported for positive f")
            hat = numeric_hat_eval(F, args.p, args.f, args.s, budget=args.budget)
            print(hat.value if hat.error == 0 else f"{hat.value} +- {hat.error}", file=out)
        elif verb == "eval":
            print(evaluate(F, args.p, args.f, args.budget), file=out)
        else:
            print(evaluate_star(F, args.p, args.f, args.depth, args.slack, args.budget), file=out)
    elif verb == "red":
        print(red(parse_cyclo(args.W, args.m)), file=out)
    elif verb == "topo":
        print(topological(parse_formula_file(args.formula), _primes(args), args.depth), file=out)
    elif verb == "uniformize":
        F = parse_formula_file(args.formula)
        res = uniformize(F, _primes(args), args.depth, args.slack, args.budget)
        if not res:
            wit = "" if res.witness is None else f" witness p={res.witness[0]} p={res.witness[1]}"
            print(f"ABSENT{wit}: {res.reason}", file=out)
            return EXIT_FAIL
        print(res.W, file=out)
    elif verb == "equiv":
        return _report(equiv_check(parse_formula_file(args.formula), parse_formula_file(args.formula2), _grid(args)), out)
    elif verb == "funeq":
        F = parse_formula_file(args.formula)
        return _report(funeq_check(F, args.eps, args.xexp, args.yexp, _grid(args), args.depth), out)
    elif verb == "oracle-subzeta":
        coeffs = subzeta_coeffs(parse_algebra_file(args.algebra), args.p, args.kmax, args.budget)
        print(" ".join(map(str, coeffs)), file=out)
    elif verb == "oracle-igusa":
        ideals = MonomialIdealSet(args.n, [_parse_ideal(t, args.n) for t in args.ideal])
        value, tail = igusa_truncated(ideals, args.q, args.s, args.B)
        print(f"value {value}", file=out)
        print(f"tail_bound {tail}", file=out)
        if args.exact:
            print(f"exact {igusa_principal_exact(ideals)}", file=out)
    elif verb == "catalog":
        F = catalog(args.name)
        print(F.format() if args.p is None else evaluate(F, args.p, args.f), file=out)
    return EXIT_OK


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args, out)
    except _Usage as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except (LocalZetaError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
