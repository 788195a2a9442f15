"""JSON formats for cycles, functions, maps and witnesses.

Rationals are written as strings ``"p/q"`` (or ``"p"``); floats are refused.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .arith import as_fraction, format_fraction
from .cycle import TropicalCycle, balancing_defects, is_complex
from .morphism import IntegerAffineMap
from .plfunction import RationalFunctionExpr, TropicalPolynomial
from .polyhedron import Polyhedron

FORMAT_VERSION = "1"


class FormatError(ValueError):
    """The document is not valid JSON or does not follow the expected schema."""


def _rational(x) -> Fraction:
    if isinstance(x, float):
        raise FormatError("floats are not allowed; write rationals as strings")
    try:
        return as_fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {x!r}") from exc


def _integer(x) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(f"expected an integer, got {x!r}")
    q = _rational(x)
    if q.denominator != 1:
        raise FormatError(f"expected an integer, got {x!r}")
    return int(q)


def _field(doc, key, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise FormatError(f"missing field {key!r}")
    v = doc[key]
    if kind is not None and not isinstance(v, kind):
        raise FormatError(f"field {key!r} has the wrong type")
    return v


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from exc


def load_file(path: str):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- cycles -----------------------------------------------------------------

def cells_from_doc(doc):
    """(ambient_dim, dim, [(Polyhedron, weight)]) exactly as written in the file."""
    n = _integer(_field(doc, "ambient_dim"))
    d = _integer(_field(doc, "dim"))
    cells = []
    for c in _field(doc, "cells", list):
        verts = [tuple(_rational(x) for x in v) for v in _field(c, "vertices", list)]
        rays = [tuple(_integer(x) for x in r) for r in c.get("rays", [])]
        lins = [tuple(_integer(x) for x in r) for r in c.get("lineality", [])]
        w = _integer(_field(c, "weight"))
        if any(len(v) != n for v in verts + rays + lins):
            raise FormatError("coordinate vector of the wrong length")
        if not verts:
            raise FormatError("a cell needs at least one vertex")
        P = Polyhedron.from_generators(verts, rays, lins, n=n)
        if P.dim != d:
            raise FormatError(f"cell of dimension {P.dim} in a {d}-dimensional cycle")
        cells.append((P, w))
    return n, d, cells


def validation_report(doc) -> list[str]:
    """Problems with the written structure (empty list when it is a balanced complex)."""
    n, d, cells = cells_from_doc(doc)
    if not is_complex([P for P, _ in cells]):
        return ["cells do not form a polyhedral complex"]
    out = []
    for R, defect in balancing_defects(cells):
        pt = [format_fraction(x) for x in R.relative_interior_point()]
        out.append(f"unbalanced at ridge through {pt}: defect {list(map(format_fraction, defect))}")
    return out


def cycle_from_doc(doc) -> TropicalCycle:
    n, d, cells = cells_from_doc(doc)
    return TropicalCycle.from_cells(n, cells, dim=d)


def cycle_to_doc(X: TropicalCycle, name: str | None = None) -> dict:
    cells = []
    for P, w in X.facets:
        cells.append({
            "vertices": [[format_fraction(x) for x in v] for v in P.vertices],
            "rays": [list(map(int, r)) for r in P.rays],
            "lineality": [list(map(int, l)) for l in P.lineality],
            "weight": int(w),
        })
    doc = {"format_version": FORMAT_VERSION, "ambient_dim": X.ambient_dim, "dim": X.dim,
           "cells": cells}
    if name is not None:
        doc["name"] = name
    return doc


# -- functions and maps -----------------------------------------------------

def polynomial_from_doc(doc) -> TropicalPolynomial:
    terms = []
    for t in _field(doc, "terms", list):
        terms.append(([_integer(x) for x in _field(t, "exp", list)], _rational(_field(t, "coeff"))))
    if not terms:
        raise FormatError("a polynomial needs at least one term")
    try:
        return TropicalPolynomial.make(terms)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def polynomial_to_doc(f: TropicalPolynomial) -> dict:
    return {"terms": [{"exp": list(e), "coeff": format_fraction(c)} for e, c in f.terms]}


def function_from_doc(doc):
    """A tropical polynomial or a quotient ``{"numerator": .., "denominator": ..}``."""
    if isinstance(doc, dict) and "numerator" in doc:
        return RationalFunctionExpr(polynomial_from_doc(doc["numerator"]),
                                    polynomial_from_doc(_field(doc, "denominator")))
    return polynomial_from_doc(doc)


def function_to_doc(f) -> dict:
    if isinstance(f, RationalFunctionExpr):
        return {"numerator": polynomial_to_doc(f.numerator),
                "denominator": polynomial_to_doc(f.denominator)}
    return polynomial_to_doc(f)


def map_from_doc(doc) -> IntegerAffineMap:
    A = [[_integer(x) for x in row] for row in _field(doc, "matrix", list)]
    if not A:
        raise FormatError("empty matrix")
    shift = [_rational(x) for x in doc.get("shift", [0] * len(A))]
    if len(shift) != len(A):
        raise FormatError("shift length does not match the number of rows")
    return IntegerAffineMap(tuple(map(tuple, A)), tuple(shift))


def map_to_doc(f: IntegerAffineMap) -> dict:
    return {"matrix": [list(r) for r in f.matrix], "shift": [format_fraction(x) for x in f.shift]}


# -- witnesses and reports --------------------------------------------------

def point_to_doc(p) -> list[str]:
    return [format_fraction(x) for x in p]


def witness_to_doc(w) -> dict:
    return {"summands": [{"fan": cycle_to_doc(F), "point": point_to_doc(p)}
                         for F, p in w.summands]}


def witness_from_doc(doc, target: TropicalCycle | None = None):
    from .decompose import DecompositionWitness
    summands = []
    for s in _field(doc, "summands", list):
        summands.append((cycle_from_doc(_field(s, "fan")),
                         tuple(_rational(x) for x in _field(s, "point", list))))
    return DecompositionWitness(summands, target)


def report_to_doc(rep) -> dict:
    evidence = {"recession_x": cycle_to_doc(rep.rec_x), "recession_y": cycle_to_doc(rep.rec_y)}
    if rep.test_cycle is not None:
        evidence["test_cycle"] = cycle_to_doc(rep.test_cycle)
        evidence["degrees"] = list(rep.degrees)
    return {"verdict": rep.verdict, "evidence": evidence}


def bounded_witness_to_doc(w) -> dict:
    return {
        "morphism": map_to_doc(w.morphism),
        "function": [{"region": _poly_doc(R), "lin": [format_fraction(x) for x in lin],
                      "const": format_fraction(c)} for R, lin, c in w.function.pieces],
        "source": cycle_to_doc(w.source),
        "claim": cycle_to_doc(w.claim),
        "bounded": w.bounded(),
    }


def _poly_doc(P: Polyhedron) -> dict:
    return {"vertices": [[format_fraction(x) for x in v] for v in P.vertices],
            "rays": [list(r) for r in P.rays], "lineality": [list(l) for l in P.lineality]}


__all__ = ["FormatError", "FORMAT_VERSION", "loads", "load_file", "dumps", "cells_from_doc",
           "validation_report", "cycle_from_doc", "cycle_to_doc", "polynomial_from_doc",
           "polynomial_to_doc", "function_from_doc", "function_to_doc", "map_from_doc",
           "map_to_doc", "witness_to_doc", "witness_from_doc", "report_to_doc",
           "bounded_witness_to_doc"]
