"""Command line interface.

Exit codes: 0 success, 1 other library errors, 2 malformed input,
3 validation failure, 4 undecided splitting search (ORACLE_INCOMPLETE).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import io
from .arith import INFINITE, format_fraction
from .cycle import TropicalCycle, add, product, scale
from .decompose import decompose, recession_equiv, translation_witness
from .divisor import divisor, invert_divisor
from .errors import OracleIncomplete, TroplithError
from .intersection import degree_pairing, stable_intersect
from .local import UNKNOWN, lineality_space, spldim, star
from .morphism import pushforward
from .plot import parse_bbox, render_svg
from .recession import recession_cycle

EXIT_ERROR = 1
EXIT_MALFORMED = 2
EXIT_INVALID = 3
EXIT_ORACLE = 4


class ValidationFailed(Exception):
    def __init__(self, problems):
        self.problems = problems
        super().__init__("; ".join(problems))


def _point(text: str):
    try:
        return tuple(Fraction(t.strip()) for t in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise io.FormatError(f"bad point {text!r}") from exc


def _load_cycle(path: str, validate: bool) -> TropicalCycle:
    doc = io.load_file(path)
    X = io.cycle_from_doc(doc)
    if validate:
        defects = X.balancing_check()
        if defects:
            raise ValidationFailed([f"{path}: not balanced at {len(defects)} ridge(s)"])
    return X


def _emit(doc) -> None:
    sys.stdout.write(io.dumps(doc))


def _nat(v):
    if v == INFINITE:
        return "INFINITE"
    return v


# -- subcommands --------------------------------------------------------------

def cmd_validate(a):
    doc = io.load_file(a.cycle)
    problems = io.validation_report(doc)
    if problems:
        raise ValidationFailed(problems)
    _emit({"valid": True})


def cmd_add(a):
    _emit(io.cycle_to_doc(add(_load_cycle(a.a, a.validate), _load_cycle(a.b, a.validate))))


def cmd_scale(a):
    _emit(io.cycle_to_doc(scale(_load_cycle(a.a, a.validate), a.m)))


def cmd_product(a):
    _emit(io.cycle_to_doc(product(_load_cycle(a.a, a.validate), _load_cycle(a.b, a.validate))))


def cmd_divisor(a):
    f = io.function_from_doc(io.load_file(a.fn))
    _emit(io.cycle_to_doc(divisor(f, _load_cycle(a.cycle, a.validate))))


def cmd_pushforward(a):
    f = io.map_from_doc(io.load_file(a.map))
    _emit(io.cycle_to_doc(pushforward(f, _load_cycle(a.cycle, a.validate))))


def cmd_stable_intersect(a):
    _emit(io.cycle_to_doc(stable_intersect(_load_cycle(a.a, a.validate),
                                           _load_cycle(a.b, a.validate))))


def cmd_degree(a):
    _emit({"degree": degree_pairing(_load_cycle(a.a, a.validate), _load_cycle(a.b, a.validate))})


def cmd_recession(a):
    _emit(io.cycle_to_doc(recession_cycle(_load_cycle(a.cycle, a.validate))))


def cmd_star(a):
    _emit(io.cycle_to_doc(star(_load_cycle(a.cycle, a.validate), _point(a.point))))


def cmd_lineality(a):
    V = lineality_space(_load_cycle(a.cycle, a.validate))
    _emit({"dim": V.dim, "basis": [list(map(int, b)) for b in V.integer_basis()]})


def cmd_spldim(a):
    v = spldim(_load_cycle(a.cycle, a.validate))
    _emit({"spldim": _nat(v)})


def cmd_decompose(a):
    X = _load_cycle(a.cycle, a.validate)
    w = decompose(X)
    doc = io.witness_to_doc(w)
    if a.verify:
        doc["verified"] = w.verify()
        if not doc["verified"]:
            _emit(doc)
            return EXIT_ERROR
    _emit(doc)


def cmd_equiv(a):
    X = _load_cycle(a.a, a.validate)
    Y = _load_cycle(a.b, a.validate)
    rep = recession_equiv(X, Y, trials=a.numerical_sample)
    _emit(io.report_to_doc(rep))


def cmd_invert_divisor(a):
    _emit(io.function_to_doc(invert_divisor(_load_cycle(a.cycle, a.validate))))


def cmd_plot(a):
    X = _load_cycle(a.cycle, a.validate)
    bbox = parse_bbox(a.bbox) if a.bbox else None
    svg = render_svg(X, bbox)
    with open(a.out, "w", encoding="utf-8") as fh:
        fh.write(svg)


def cmd_translation_witness(a):
    X = _load_cycle(a.cycle, a.validate)
    ws = translation_witness(X, _point(a.vector))
    _emit({"witnesses": [io.bounded_witness_to_doc(w) for w in ws]})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="troplith", description="Exact tropical cycles in Q^n.")
    p.add_argument("--no-validate", dest="validate", action="store_false",
                   help="skip the balancing check when loading cycles")
    sub = p.add_subparsers(dest="command", required=True)

    def one(name, fn, helptext):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("cycle")
        s.set_defaults(func=fn)
        return s

    def two(name, fn, helptext):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("a")
        s.add_argument("b")
        s.set_defaults(func=fn)
        return s

    one("validate", cmd_validate, "check that a file describes a balanced complex")
    two("add", cmd_add, "sum of two cycles")
    s = sub.add_parser("scale", help="integer multiple of a cycle")
    s.add_argument("a")
    s.add_argument("m", type=int)
    s.set_defaults(func=cmd_scale)
    two("product", cmd_product, "cartesian product")
    one("divisor", cmd_divisor, "divisor of a tropical rational function").add_argument(
        "--fn", required=True, help="polynomial or quotient JSON")
    one("pushforward", cmd_pushforward, "push forward along an integer affine map").add_argument(
        "--map", required=True)
    two("stable-intersect", cmd_stable_intersect, "stable intersection product")
    two("degree", cmd_degree, "degree of the intersection of complementary cycles")
    one("recession", cmd_recession, "recession fan cycle")
    one("star", cmd_star, "star fan at a point").add_argument("--point", required=True)
    one("lineality", cmd_lineality, "lineality space of a fan cycle")
    one("spldim", cmd_spldim, "splitting dimension of a fan cycle")
    one("decompose", cmd_decompose, "write a cycle as a sum of translated fans").add_argument(
        "--verify", action="store_true")
    s = two("equiv", cmd_equiv, "bounded rational equivalence on Q^n")
    s.add_argument("--numerical-sample", type=int, default=20, metavar="N")
    one("invert-divisor", cmd_invert_divisor, "rational function with a given fan divisor")
    s = one("plot", cmd_plot, "SVG picture of a planar cycle")
    s.add_argument("--out", required=True)
    s.add_argument("--bbox", default=None, help="xmin,ymin,xmax,ymax")
    one("translation-witness", cmd_translation_witness,
        "bounded equivalence certificates for X ~ X + v").add_argument("--vector", required=True)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    # accepted for interface compatibility; all work runs in this process
    os.environ.get("TROPLITH_THREADS")
    try:
        rc = args.func(args)
    except (io.FormatError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except ValidationFailed as exc:
        for line in exc.problems:
            print(f"invalid: {line}", file=sys.stderr)
        return EXIT_INVALID
    except OracleIncomplete as exc:
        sys.stdout.write(io.dumps({"error": "ORACLE_INCOMPLETE", "reason": exc.reason,
                                   "detail": exc.detail}))
        return EXIT_ORACLE
    except (TroplithError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
