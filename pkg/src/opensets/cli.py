"""Command-line front end: parse set expressions, run the realisers, emit
JSON documents with independently re-checked certificates.

Set expressions are s-expressions over rationals written p/q (or integers):

    (interval 1/4 3/4)          open interval
    (cinterval 1/3 2/3)         closed interval
    (union e ...)               union
    (punctured 1/3 1/2)         [0,1] minus the listed points
    (full) / (empty)            the whole interval / nothing
    (complement-closed e)       closed complement of the open set e
    tail-cover                  the builtin cover stream (1/(n+2), 1)
    rational-complements        the builtin family [0,1] minus the n-th rational

Exit codes: 0 success, 1 usage or parse error, 2 fuel exhausted, 3 unsound
oracle or invariant violation, 4 refutation emitted (adversary commands).
Every certificate printed carries verified=true only after an exact re-check;
identical invocations produce byte-identical documents.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    CauchyReal,
    CLOSED,
    open_contained,
    EmptySetError,
    FinClosed,
    FinOpen,
    Interval,
    NotDisjoint,
    OPEN,
    OracleUnsound,
    closediv,
    covers,
    measure,
    openiv,
    punctured_unit,
)
from .enumeration import rational
from .reps import (
    ClosedCode,
    ExactLowerBound,
    FULL,
    IntervalUnion,
    components,
    distance_from_pieces,
    is_full,
    located_distance,
    radius_from_pieces,
    stream_from_distance,
    stream_from_radius,
)
from .heine_borel import subcover_budget, subcover_coded
from .baire import Attempt, Tag, baire_point, limit_audit
from .separation import PLFunction, distance_closed, separation_gap, tietze_extend, urysohn
from .adversary import (
    adversary_full_radius,
    beta_grid_radius,
    beta_grid_subcover,
    beta_pipeline_radius,
    refute_radius_cover,
    refute_subcover,
)
from .reps import probe_to_pieces

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_EXHAUSTED = 2
EXIT_UNSOUND = 3
EXIT_REFUTED = 4


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at {line}:{col}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# Set expressions


@dataclass(frozen=True)
class SetExpr:
    head: str
    args: tuple = ()


def _tokenize(text: str):
    line, col = 1, 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 0
            i += 1
            continue
        col += 1
        if ch.isspace():
            i += 1
            continue
        if ch in "()":
            yield ch, line, col
            i += 1
            continue
        j = i
        start_col = col
        while j < len(text) and not text[j].isspace() and text[j] not in "()":
            j += 1
            col += 1
        col -= 1
        yield text[i:j], line, start_col
        i = j


def parse_rational(tok: str) -> Fraction:
    if "/" in tok:
        num, den = tok.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(tok))


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


_HEADS = {
    "interval": 2,
    "cinterval": 2,
    "union": None,
    "punctured": None,
    "full": 0,
    "empty": 0,
    "complement-closed": 1,
    "tail-cover": 0,
    "rational-complements": 0,
}


def parse_set(text: str) -> SetExpr:
    """Parse a set expression; bare ``tail-cover``/``rational-complements``
    names are accepted for the builtin streams."""
    tokens = list(_tokenize(text))
    if not tokens:
        raise ParseError("empty input", 1, 1)
    expr, rest = _parse_expr(tokens, 0)
    if rest != len(tokens):
        tok, line, col = tokens[rest]
        raise ParseError(f"unexpected {tok!r} after expression", line, col)
    return expr


def _parse_expr(tokens, i) -> tuple[SetExpr, int]:
    tok, line, col = tokens[i]
    if tok == ")":
        raise ParseError("unexpected ')'", line, col)
    if tok != "(":
        if tok in ("tail-cover", "rational-complements"):
            return SetExpr(tok), i + 1
        raise ParseError(f"expected '(' or builtin name, got {tok!r}", line, col)
    i += 1
    if i >= len(tokens):
        raise ParseError("unterminated expression", line, col)
    head, hline, hcol = tokens[i]
    if head not in _HEADS:
        raise ParseError(f"unknown form {head!r}", hline, hcol)
    i += 1
    args: list = []
    while True:
        if i >= len(tokens):
            raise ParseError("unterminated expression", hline, hcol)
        tok, tline, tcol = tokens[i]
        if tok == ")":
            i += 1
            break
        if tok == "(" or tok in ("tail-cover", "rational-complements"):
            sub, i = _parse_expr(tokens, i)
            args.append(sub)
            continue
        try:
            args.append(parse_rational(tok))
        except ValueError:
            raise ParseError(f"expected rational, got {tok!r}", tline, tcol) from None
        i += 1
    arity = _HEADS[head]
    if arity is not None and len(args) != arity:
        raise ParseError(f"{head} takes {arity} argument(s), got {len(args)}", hline, hcol)
    if head in ("interval", "cinterval") and not all(isinstance(a, Fraction) for a in args):
        raise ParseError(f"{head} takes rational endpoints", hline, hcol)
    if head == "punctured" and not all(isinstance(a, Fraction) for a in args):
        raise ParseError("punctured takes rational points", hline, hcol)
    if head == "union" and not all(isinstance(a, SetExpr) for a in args):
        raise ParseError("union takes sub-expressions", hline, hcol)
    if head == "complement-closed" and not isinstance(args[0], SetExpr):
        raise ParseError("complement-closed takes a sub-expression", hline, hcol)
    return SetExpr(head, tuple(args)), i


def format_set(e: SetExpr) -> str:
    if not e.args:
        return f"({e.head})"
    parts = []
    for a in e.args:
        parts.append(format_set(a) if isinstance(a, SetExpr) else format_rational(a))
    return f"({e.head} {' '.join(parts)})"


def eval_pieces(e: SetExpr) -> list[Interval]:
    """Evaluate an expression to a list of intervals (mixed kinds allowed)."""
    if e.head == "interval":
        return [openiv(e.args[0], e.args[1])]
    if e.head == "cinterval":
        return [closediv(e.args[0], e.args[1])]
    if e.head == "union":
        return [p for sub in e.args for p in eval_pieces(sub)]
    if e.head == "punctured":
        return list(punctured_unit(e.args).pieces)
    if e.head == "full":
        return [openiv(-1, 2)]
    if e.head == "empty":
        return []
    if e.head == "complement-closed":
        return list(eval_closed(e.args[0]).complement().pieces)
    raise ValueError(f"{e.head} is a stream, not a finite set")


def eval_open(e: SetExpr) -> FinOpen:
    pieces = eval_pieces(e)
    if any(p.kind != OPEN for p in pieces):
        raise ValueError("expected an open set expression")
    return FinOpen.of(pieces)


def eval_closed(e: SetExpr) -> FinClosed:
    if e.head == "full":
        return FinClosed.unit()
    if e.head == "empty":
        return FinClosed.of([])
    if e.head == "complement-closed":
        return eval_open(e.args[0]).complement()
    pieces = eval_pieces(e)
    if any(p.kind != CLOSED for p in pieces):
        raise ValueError("expected a closed set expression")
    return FinClosed.of(pieces)


def eval_cover(e: SetExpr) -> IntervalUnion:
    if e.head == "tail-cover":
        return IntervalUnion(lambda n: openiv(Fraction(1, n + 2), 1), name="tail-cover")
    return IntervalUnion.from_pieces(eval_open(e))


def rational_complement_sets(i: int):
    return radius_from_pieces(punctured_unit([rational(i)]))


def eval_radius_family(e: SetExpr):
    if e.head == "rational-complements":
        return rational_complement_sets
    u = radius_from_pieces(eval_open(e))
    return lambda i: u


# ---------------------------------------------------------------------------
# JSON helpers


def _iv_doc(p: Interval) -> dict:
    return {"lo": format_rational(p.lo), "hi": format_rational(p.hi), "kind": p.kind}


def _ivs_doc(pieces) -> list:
    return [_iv_doc(p) for p in pieces]


def _plf_doc(f: PLFunction) -> list:
    return [[format_rational(x), format_rational(v)] for x, v in f.breakpoints]


def _emit(doc: dict, code: int) -> int:
    print(json.dumps(doc, indent=2, sort_keys=True))
    return code


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_convert(args) -> int:
    expr = parse_set(args.set)
    u = eval_open(expr)
    doc: dict = {
        "command": "convert",
        "inputs": {"set": format_set(expr), "from": getattr(args, "from"), "to": args.to},
    }
    grid = [Fraction(i, 64) for i in range(65)]
    mu = ExactLowerBound()
    src = getattr(args, "from")
    if args.to == "r3":
        if src == "r2":
            y = radius_from_pieces(u)
            if is_full(y, mu, 6) == FULL:
                dist = lambda q: Fraction(1)
                full = True
            else:
                dist = lambda q: located_distance(y, mu, CauchyReal.constant(q), 12)
                full = False
        elif src == "r3":
            located = distance_from_pieces(u)
            dist = lambda q: located.dist(CauchyReal.constant(q), 12)
            full = located.full
        else:  # r4
            located = distance_from_pieces(u)
            dist = lambda q: located.dist(CauchyReal.constant(q), 12)
            full = located.full
        exact = distance_from_pieces(u)
        samples = []
        verified = True
        for q in grid:
            v = dist(q)
            samples.append([format_rational(q), format_rational(v)])
            want = Fraction(1) if exact.full else exact.dist(CauchyReal.constant(q), 12)
            if abs(v - want) > Fraction(1, 1 << 10):
                verified = False
        doc["result"] = {"full": full, "distance_at_64ths": samples}
        doc["verified"] = verified
        return _emit(doc, EXIT_OK if verified else EXIT_UNSOUND)
    # to r4
    if src == "r2":
        stream = stream_from_radius(radius_from_pieces(u), mu)
    elif src == "r3":
        stream = stream_from_distance(distance_from_pieces(u))
    else:
        stream = IntervalUnion.from_pieces(u)
    entries = [stream.enum(n) for n in range(args.entries)]
    shown = [p for p in entries if not p.is_empty()]
    # soundness of each emitted entry: no point outside the set is covered
    verified = all(open_contained(p, u) for p in shown)
    doc["result"] = {"entries": _ivs_doc(entries)}
    doc["verified"] = verified
    return _emit(doc, EXIT_OK if verified else EXIT_UNSOUND)


def _cmd_subcover(args) -> int:
    expr = parse_set(args.set)
    cov_expr = parse_set(args.cover)
    c = eval_closed(expr)
    cover = eval_cover(cov_expr)
    cert = subcover_coded(ClosedCode.from_closed(c), cover, args.fuel)
    doc = {
        "command": "subcover",
        "inputs": {"set": format_set(expr), "cover": format_set(cov_expr), "fuel": args.fuel},
    }
    if cert is None:
        doc["result"] = "exhausted"
        doc["verified"] = False
        return _emit(doc, EXIT_EXHAUSTED)
    re_checked = covers(c, list(cert.used_pieces))
    doc["result"] = {
        "n0": cert.n0,
        "used_pieces": _ivs_doc(cert.used_pieces),
        "complement_pieces": _ivs_doc(cert.complement_pieces),
    }
    doc["verified"] = bool(cert.verified and re_checked)
    return _emit(doc, EXIT_OK if doc["verified"] else EXIT_UNSOUND)


def _cmd_whbc(args) -> int:
    expr = parse_set(args.set)
    cov_expr = parse_set(args.cover)
    c = eval_closed(expr)
    cover = eval_cover(cov_expr)
    eps = parse_rational(args.epsilon)
    got = subcover_budget(ClosedCode.from_closed(c), cover, eps, args.fuel)
    doc = {
        "command": "whbc",
        "inputs": {
            "set": format_set(expr),
            "cover": format_set(cov_expr),
            "epsilon": format_rational(eps),
            "fuel": args.fuel,
        },
    }
    if got is None:
        doc["result"] = "exhausted"
        doc["verified"] = False
        return _emit(doc, EXIT_EXHAUSTED)
    n0, patches = got
    prefix = cover.prefix(n0 + 1)
    ok = covers(c, prefix + patches) and measure(patches) < eps
    doc["result"] = {
        "n0": n0,
        "patches": _ivs_doc(patches),
        "patch_measure": format_rational(measure(patches)),
    }
    doc["verified"] = ok
    return _emit(doc, EXIT_OK if ok else EXIT_UNSOUND)


def _cmd_baire(args) -> int:
    expr = parse_set(args.sets)
    sets = eval_radius_family(expr)
    sink = None
    trace_lines: list[str] = []
    if args.trace:
        step_no = [0]

        def sink(case: str, tag: Tag) -> None:
            step_no[0] += 1
            trace_lines.append(
                f"{step_no[0]}\t{case}\t[({format_rational(tag.r)}, {format_rational(tag.eps)})]"
            )

    got = baire_point(sets, args.precision, args.fuel, sink=sink)
    doc = {
        "command": "baire",
        "inputs": {
            "sets": format_set(expr),
            "precision": args.precision,
            "audit_depth": args.audit_depth,
            "fuel": args.fuel,
        },
    }
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write("\n".join(trace_lines) + ("\n" if trace_lines else ""))
    if got is None:
        doc["result"] = "exhausted"
        doc["verified"] = False
        return _emit(doc, EXIT_EXHAUSTED)
    x, nest = got
    try:
        Attempt.of(nest)
        nest_ok = True
    except ValueError:
        nest_ok = False
    audit = limit_audit(nest, sets, args.audit_depth, max(args.precision + 16, 48))
    doc["result"] = {
        "point": format_rational(x.approx(args.precision)),
        "nest": [[format_rational(t.r), format_rational(t.eps)] for t in nest],
        "audit_passed_to_depth": args.audit_depth if audit.ok else None,
    }
    doc["verified"] = bool(nest_ok and audit.ok)
    return _emit(doc, EXIT_OK if doc["verified"] else EXIT_UNSOUND)


def _cmd_urysohn(args) -> int:
    e0, e1 = parse_set(args.c0), parse_set(args.c1)
    c0, c1 = eval_closed(e0), eval_closed(e1)
    g = urysohn(c0, c1)
    swap = urysohn(c1, c0)
    lo, hi = g.value_bounds()
    ok = (
        all(g(p.lo) == 0 and g(p.hi) == 0 for p in c0.pieces)
        and all(g(p.lo) == 1 and g(p.hi) == 1 for p in c1.pieces)
        and 0 <= lo <= hi <= 1
        and all(swap(x) == 1 - g(x) for x, _ in g.breakpoints)
    )
    doc = {
        "command": "urysohn",
        "inputs": {"c0": format_set(e0), "c1": format_set(e1)},
        "result": {"breakpoints": _plf_doc(g)},
        "verified": ok,
    }
    return _emit(doc, EXIT_OK if ok else EXIT_UNSOUND)


def _parse_plf(text: str) -> PLFunction:
    pts = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        x, v = part.split(":")
        pts.append((parse_rational(x.strip()), parse_rational(v.strip())))
    return PLFunction.of(pts)


def _cmd_tietze(args) -> int:
    expr = parse_set(args.domain)
    d = eval_closed(expr)
    f = _parse_plf(args.values)
    g = tietze_extend(d, f)
    ok = all(g(x) == v for x, v in f.breakpoints if d.contains(x)) and (
        g.sup_abs() == max(abs(f(x)) for x, _ in f.breakpoints if d.contains(x))
    )
    doc = {
        "command": "tietze",
        "inputs": {"domain": format_set(expr), "values": args.values},
        "result": {"breakpoints": _plf_doc(g)},
        "verified": ok,
    }
    return _emit(doc, EXIT_OK if ok else EXIT_UNSOUND)


def _cmd_components(args) -> int:
    expr = parse_set(args.set)
    u = eval_open(expr)
    parts = components(u)
    ok = FinOpen.of(parts) == u
    doc = {
        "command": "components",
        "inputs": {"set": format_set(expr)},
        "result": {"components": _ivs_doc(parts)},
        "verified": ok,
    }
    return _emit(doc, EXIT_OK if ok else EXIT_UNSOUND)


def _cmd_distance(args) -> int:
    expr = parse_set(args.set)
    c = eval_closed(expr)
    q = parse_rational(args.at)
    v = distance_closed(c, CauchyReal.constant(q), args.precision)
    from .core import distance_to_closed_at

    ok = v == distance_to_closed_at(q, c)
    doc = {
        "command": "distance",
        "inputs": {"set": format_set(expr), "at": format_rational(q), "precision": args.precision},
        "result": {"distance": format_rational(v)},
        "verified": ok,
    }
    return _emit(doc, EXIT_OK if ok else EXIT_UNSOUND)


def _cmd_adversary(args) -> int:
    doc: dict = {"command": f"adversary {args.which}", "inputs": {"fuel": args.fuel}}
    if args.which == "lemma73":
        budget = min(args.fuel, 10_000)
        y, log = adversary_full_radius()
        recovered = probe_to_pieces(y, budget)
        m = recovered.measure()
        ceiling_holds = m <= Fraction(1, 2)
        doc["inputs"]["budget"] = budget
        doc["result"] = {
            "represented_set": "full unit interval",
            "recovered_measure": format_rational(m),
            "queries": len(log),
            "ceiling_half_holds": ceiling_holds,
        }
        doc["verified"] = ceiling_holds
        return _emit(doc, EXIT_REFUTED if ceiling_holds else EXIT_UNSOUND)
    if args.which == "hbc":
        beta = {
            "naive-grid": beta_grid_subcover,
            "refusing": lambda member, cover: None,
        }[args.beta]
        witness = refute_subcover(beta)
    else:  # cover
        if args.beta == "naive-grid":
            witness = refute_radius_cover(beta_grid_radius)
        else:  # psi-pipeline
            witness = refute_radius_cover(beta_pipeline_radius, honest_oracles=True)
    doc["inputs"]["beta"] = args.beta
    if witness is None:
        doc["result"] = "survived"
        doc["verified"] = True
        return _emit(doc, EXIT_OK)
    doc["result"] = {
        "witness_point": format_rational(witness.point),
        "wrong_answer": witness.answer,
        "detail": witness.detail,
    }
    doc["verified"] = True
    return _emit(doc, EXIT_REFUTED)


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message, 0, 0)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="opensets", description=__doc__, add_help=True)
    common = _Parser(add_help=False)
    common.add_argument("--fuel", type=int, default=100_000, help="search budget (default 10^5)")
    common.add_argument("--trace", default=None, help="write tab-separated trace lines here")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name: str):
        return sub.add_parser(name, parents=[common])

    c = add("convert")
    c.add_argument("--from", choices=["r2", "r3", "r4"], required=True)
    c.add_argument("--to", choices=["r3", "r4"], required=True)
    c.add_argument("--set", required=True)
    c.add_argument("--entries", type=int, default=32)

    s = add("subcover")
    s.add_argument("--set", required=True)
    s.add_argument("--cover", required=True)

    w = add("whbc")
    w.add_argument("--set", required=True)
    w.add_argument("--cover", required=True)
    w.add_argument("--epsilon", required=True)

    b = add("baire")
    b.add_argument("--sets", required=True)
    b.add_argument("--precision", type=int, default=10)
    b.add_argument("--audit-depth", type=int, default=8)

    u = add("urysohn")
    u.add_argument("--c0", required=True)
    u.add_argument("--c1", required=True)

    t = add("tietze")
    t.add_argument("--domain", required=True)
    t.add_argument("--values", required=True, help="breakpoints as x:v,x:v,... in p/q form")

    k = add("components")
    k.add_argument("--set", required=True)

    d = add("distance")
    d.add_argument("--set", required=True)
    d.add_argument("--at", required=True)
    d.add_argument("--precision", type=int, default=16)

    a = add("adversary")
    a.add_argument("which", choices=["lemma73", "hbc", "cover"])
    a.add_argument("--beta", default="naive-grid",
                   choices=["naive-grid", "refusing", "psi-pipeline"])
    return p


_DISPATCH = {
    "convert": _cmd_convert,
    "subcover": _cmd_subcover,
    "whbc": _cmd_whbc,
    "baire": _cmd_baire,
    "urysohn": _cmd_urysohn,
    "tietze": _cmd_tietze,
    "components": _cmd_components,
    "distance": _cmd_distance,
    "adversary": _cmd_adversary,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except ParseError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _DISPATCH[args.cmd](args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, EmptySetError, NotDisjoint) as err:
        print(f"invariant violation: {err}", file=sys.stderr)
        return EXIT_UNSOUND
    except OracleUnsound as err:
        print(f"oracle unsound: {err}", file=sys.stderr)
        return EXIT_UNSOUND


if __name__ == "__main__":
    sys.exit(main())
