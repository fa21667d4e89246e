"""Readers for formula (``.lmf``) and algebra (``.alg``) files.

Formula files::

    m 1
    exclude 2 3          # optional
    term
      variety point
      chi 1              # optional
      W (1 - Y1)/(1 - X*Y1)

Algebra files::

    d 3
    prod 1 2 -> 0 0 1
    prod 2 1 -> 0 0 -1
    mode subalgebra
    gen 1 0 0 0 1 0 0 0 1   # submodule mode only, row-major

Basis indices in ``prod`` lines are 1-based.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import DegenerateFactor, LocalZetaError, ParseError
from .geom import parse_constructible
from .localmap import LocalMapFormula, make_formula
from .oracles import MODES, AlgebraPresentation
from .ratfun import parse_cyclo


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _relocate(exc: ParseError, line: int, offset: int) -> ParseError:
    col = None if exc.column is None else exc.column + offset
    cls = DegenerateFactor if isinstance(exc, DegenerateFactor) else ParseError
    return cls(exc.message, line=line, column=col if col is not None else offset + 1)


def _int(token: str, line: int, col: int) -> int:
    if not re.fullmatch(r"[+-]?\d+", token):
        raise ParseError(f"expected an integer, found {token!r}", line, col)
    return int(token)


def _tokens(text: str):
    """``(token, 1-based column)`` pairs split on whitespace."""
    return [(mt.group(), mt.start() + 1) for mt in re.finditer(r"\S+", text)]


def parse_formula_text(text: str) -> LocalMapFormula:
    m = None
    excluded: list[int] = []
    terms: list[dict] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        key, _, rest = body.partition(" ")
        rest_col = indent + len(key) + 1 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        if m is None:
            if key != "m":
                raise ParseError("file must start with 'm <integer>'", lineno, indent + 1)
            m = _int(rest, lineno, rest_col + 1)
            if m < 1:
                raise ParseError("m must be positive", lineno, rest_col + 1)
            continue
        if key == "m":
            raise ParseError("'m' given twice", lineno, indent + 1)
        if key == "exclude":
            if terms:
                raise ParseError("'exclude' must precede the terms", lineno, indent + 1)
            excluded += [_int(tok, lineno, rest_col + c) for tok, c in _tokens(rest)]
            continue
        if key == "term":
            if rest:
                raise ParseError("unexpected text after 'term'", lineno, rest_col + 1)
            terms.append({"line": lineno})
            continue
        if key not in ("variety", "chi", "W"):
            raise ParseError(f"unknown keyword {key!r}", lineno, indent + 1)
        if not terms:
            raise ParseError(f"{key!r} outside a term block", lineno, indent + 1)
        term = terms[-1]
        if key in term:
            raise ParseError(f"{key!r} given twice in one term", lineno, indent + 1)
        if not rest:
            raise ParseError(f"{key!r} needs a value", lineno, indent + len(key) + 1)
        try:
            if key == "variety":
                term[key] = parse_constructible(rest)
            elif key == "chi":
                term[key] = _int(rest, lineno, rest_col + 1)
            else:
                term[key] = parse_cyclo(rest, m)
        except ParseError as exc:
            if exc.line is not None:
                raise
            raise _relocate(exc, lineno, rest_col) from None
        except LocalZetaError as exc:
            raise ParseError(str(exc), lineno, rest_col + 1) from None
    if m is None:
        raise ParseError("empty formula file", 1, 1)
    if not terms:
        raise ParseError("formula has no terms", len(text.splitlines()) or 1, 1)
    pairs = []
    for term in terms:
        for key in ("variety", "W"):
            if key not in term:
                raise ParseError(f"term is missing its {key!r} line", term["line"], 1)
        V = term["variety"]
        if "chi" in term:
            V = V.with_chi(term["chi"])
        pairs.append((V, term["W"]))
    return make_formula(pairs, m, excluded)


def parse_formula_file(path) -> LocalMapFormula:
    return parse_formula_text(Path(path).read_text())


def format_formula(F: LocalMapFormula) -> str:
    """Inverse of :func:`parse_formula_text` for formulas built from text."""
    lines = [f"m {F.m}"]
    if F.excluded_primes:
        lines.append("exclude " + " ".join(map(str, sorted(F.excluded_primes))))
    for V, W in F.terms:
        lines += ["term", f"  variety {V.format()}"]
        if V.user_chi is not None:
            lines.append(f"  chi {V.user_chi}")
        lines.append(f"  W {W.format()}")
    return "\n".join(lines) + "\n"


def parse_algebra_text(text: str) -> AlgebraPresentation:
    d = None
    mode = "subalgebra"
    products: dict[tuple[int, int], tuple[int, ...]] = {}
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        toks = _tokens(line)
        if not toks:
            continue
        key, kcol = toks[0]
        if d is None:
            if key != "d" or len(toks) != 2:
                raise ParseError("file must start with 'd <integer>'", lineno, kcol)
            d = _int(toks[1][0], lineno, toks[1][1])
            if d < 1:
                raise ParseError("rank must be positive", lineno, toks[1][1])
            continue
        if key == "prod":
            if len(toks) != 4 + d or toks[3][0] != "->":
                raise ParseError(f"expected 'prod i j -> c1 ... c{d}'", lineno, kcol)
            i, j = (_int(t, lineno, c) for t, c in toks[1:3])
            for idx, (_, c) in zip((i, j), toks[1:3]):
                if not 1 <= idx <= d:
                    raise ParseError(f"basis index must lie in 1..{d}", lineno, c)
            if (i - 1, j - 1) in products:
                raise ParseError(f"product e{i}*e{j} given twice", lineno, kcol)
            products[(i - 1, j - 1)] = tuple(_int(t, lineno, c) for t, c in toks[4:])
        elif key == "mode":
            if len(toks) != 2 or toks[1][0] not in MODES:
                raise ParseError(f"mode must be one of {', '.join(MODES)}", lineno, kcol)
            mode = toks[1][0]
        elif key == "gen":
            if len(toks) != 1 + d * d:
                raise ParseError(f"'gen' needs {d * d} integers", lineno, kcol)
            vals = [_int(t, lineno, c) for t, c in toks[1:]]
            gens.append(tuple(tuple(vals[r * d:(r + 1) * d]) for r in range(d)))
        else:
            raise ParseError(f"unknown keyword {key!r}", lineno, kcol)
    if d is None:
        raise ParseError("empty algebra file", 1, 1)
    if gens and mode != "submodule":
        raise ParseError("'gen' lines are only allowed in submodule mode", 1, 1)
    return AlgebraPresentation.from_products(d, products, mode, gens)


def parse_algebra_file(path) -> AlgebraPresentation:
    return parse_algebra_text(Path(path).read_text())
