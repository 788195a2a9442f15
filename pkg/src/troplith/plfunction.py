"""Piecewise integer-affine functions and tropical polynomials.

A :class:`PLFunction` is a list of regions (polyhedra forming a complex)
each carrying affine data ``x -> lin·x + const``.  Global functions on Q^n
use full-dimensional regions; functions restricted to a cycle use the cells
of a refinement of the cycle as regions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable, Sequence

from .arith import (
    as_fraction,
    clear_denominators,
    dot,
    primitive_int,
    qvec,
    solve,
    transpose,
)
from .cycle import TropicalCycle, covered_by, cut_by_hyperplanes, refine_against, ridge_map
from .errors import DimensionMismatch, DomainError, EmptyPolyhedronError
from .polyhedron import EMPTY, Polyhedron, bboxes_overlap, separated


@dataclass(frozen=True)
class TropicalPolynomial:
    """max over terms of exp·x + coeff (max-plus convention)."""

    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a tropical polynomial needs at least one term")
        exps = [e for e, _ in self.terms]
        if len(set(exps)) != len(exps):
            raise ValueError("duplicate exponents in tropical polynomial")
        n = len(exps[0])
        if any(len(e) != n for e in exps):
            raise DimensionMismatch("exponent vectors of different lengths")

    @classmethod
    def make(cls, terms: Iterable) -> "TropicalPolynomial":
        """Build from (exponent, coefficient) pairs; duplicates keep the larger coefficient."""
        best: dict = {}
        for e, c in terms:
            e = tuple(int(x) for x in e)
            c = as_fraction(c)
            if e not in best or c > best[e]:
                best[e] = c
        return cls(tuple(sorted(best.items())))

    @classmethod
    def constant(cls, n: int, c=0) -> "TropicalPolynomial":
        return cls((((0,) * n, as_fraction(c)),))

    @property
    def n(self) -> int:
        return len(self.terms[0][0])

    def __call__(self, x) -> Fraction:
        x = qvec(x)
        return max(dot(e, x) + c for e, c in self.terms)

    value = __call__

    def regions(self) -> list[tuple[Polyhedron, tuple[int, ...], Fraction]]:
        """Full-dimensional linearity regions with their maximizing term."""
        n = self.n
        out = []
        if len(self.terms) == 1:
            e, c = self.terms[0]
            return [(Polyhedron.whole_space(n), e, c)]
        for i, (e, c) in enumerate(self.terms):
            ineqs = []
            for j, (f, d) in enumerate(self.terms):
                if i != j:
                    ineqs.append((tuple(x - y for x, y in zip(e, f)), d - c))
            try:
                R = Polyhedron.from_inequalities(ineqs, n=n)
            except EmptyPolyhedronError:
                continue
            if R.dim == n:
                out.append((R, e, c))
        return out

    def to_pl(self) -> "PLFunction":
        return PLFunction(self.n, self.regions(), True)


@dataclass(frozen=True)
class RationalFunctionExpr:
    """numerator − denominator, both tropical polynomials."""

    numerator: TropicalPolynomial
    denominator: TropicalPolynomial

    def __call__(self, x) -> Fraction:
        return self.numerator(x) - self.denominator(x)

    value = __call__

    def to_pl(self) -> "PLFunction":
        return self.numerator.to_pl() - self.denominator.to_pl()


class PLFunction:
    """Piecewise affine function given on a complex of regions.

    ``pieces`` holds (region, linear part, constant).  All regions have the
    same dimension; their union is the domain.
    """

    __slots__ = ("n", "pieces", "complete")

    def __init__(self, n: int, pieces, complete: bool = False):
        self.n = n
        # complete: the regions are known to cover all of Q^n
        self.complete = complete
        self.pieces = [(R, tuple(lin), as_fraction(c)) for R, lin, c in pieces]
        for R, lin, _ in self.pieces:
            if R.n != n or len(lin) != n:
                raise DimensionMismatch("piece does not live in Q^%d" % n)

    @classmethod
    def affine(cls, lin, const=0, n: int | None = None) -> "PLFunction":
        n = len(lin) if n is None else n
        return cls(n, [(Polyhedron.whole_space(n), tuple(lin), as_fraction(const))], True)

    def __repr__(self):
        return f"PLFunction(n={self.n}, pieces={len(self.pieces)})"

    # -- evaluation ----------------------------------------------------

    def piece_at(self, x):
        x = qvec(x)
        for R, lin, c in self.pieces:
            if R.contains(x):
                return R, lin, c
        raise DomainError("point outside the domain of the function")

    def __call__(self, x) -> Fraction:
        x = qvec(x)
        _, lin, c = self.piece_at(x)
        return dot(lin, x) + c

    eval = __call__

    def data_on(self, cell: Polyhedron):
        """Affine data valid on a cell contained in one region."""
        x = cell.relative_interior_point()
        for R, lin, c in self.pieces:
            if R.contains(x) and R.contains_polyhedron(cell):
                return lin, c
        raise DomainError("cell is not contained in a single region of the function")

    def is_integral(self) -> bool:
        return all(all(Fraction(v).denominator == 1 for v in lin) for _, lin, _ in self.pieces)

    def check_continuity(self) -> bool:
        """Adjacent pieces agree on every shared face (checked on generators)."""
        ps = self.pieces
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                R, l1, c1 = ps[i]
                S, l2, c2 = ps[j]
                if not bboxes_overlap(R, S) or separated(R, S):
                    continue
                F = R.intersect(S)
                if F is EMPTY:
                    continue
                diff = [a - b for a, b in zip(l1, l2)]
                if any(dot(diff, v) + c1 - c2 != 0 for v in F.vertices):
                    return False
                if any(dot(diff, r) for r in F.rays) or any(dot(diff, l) for l in F.lineality):
                    return False
        return True

    # -- algebra -------------------------------------------------------

    def _combine(self, other: "PLFunction", sign: int) -> "PLFunction":
        if self.n != other.n:
            raise DimensionMismatch("functions on different spaces")
        out = []
        for R, l1, c1 in self.pieces:
            d = R.dim
            for S, l2, c2 in other.pieces:
                if not bboxes_overlap(R, S) or separated(R, S):
                    continue
                if S.contains_polyhedron(R):
                    F = R
                elif R.contains_polyhedron(S):
                    F = S
                else:
                    F = R.intersect(S)
                if F is EMPTY or F.dim != d:
                    continue
                out.append((F, tuple(a + sign * b for a, b in zip(l1, l2)), c1 + sign * c2))
        return PLFunction(self.n, out, self.complete and other.complete)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return PLFunction(self.n, [(R, tuple(-a for a in lin), -c) for R, lin, c in self.pieces],
                          self.complete)

    def scale(self, m) -> "PLFunction":
        m = as_fraction(m)
        return PLFunction(self.n, [(R, tuple(m * a for a in lin), m * c) for R, lin, c in self.pieces],
                          self.complete)

    # -- structure -------------------------------------------------------

    def restrict(self, X: TropicalCycle) -> "CarrierFunction":
        """Restriction to |X|: X refined along the regions of this function."""
        if X.ambient_dim != self.n:
            raise DimensionMismatch("cycle and function live in different spaces")
        regions = [R for R, _, _ in self.pieces]
        cells = refine_against(X.facets, regions)
        out = []
        for P, w in cells:
            lin, c = self.data_on(P)
            out.append((P, w, lin, c))
        for P, _ in ([] if self.complete else X.facets):
            if not covered_by(P, regions):
                raise DomainError("cycle leaves the domain of the function")
        return CarrierFunction(self.n, X.dim, out)

    def pullback(self, A: Sequence[Sequence[int]], shift=None) -> "PLFunction":
        """The function x -> self(A x + shift) on Q^k, k = number of columns of A."""
        m = len(A)
        if m != self.n:
            raise DimensionMismatch("map codomain does not match function domain")
        k = len(A[0]) if A else 0
        shift = qvec(shift) if shift is not None else tuple(Fraction(0) for _ in range(m))
        At = transpose(A)
        out = []
        for R, lin, c in self.pieces:
            pre = R.preimage(A, shift)
            if pre is EMPTY or pre.dim != k:
                continue
            out.append((pre, tuple(dot(lin, col) for col in At), c + dot(lin, shift)))
        return PLFunction(k, out, self.complete)

    def is_bounded(self) -> bool:
        """Linear part vanishes on the recession cone of every region."""
        for R, lin, _ in self.pieces:
            if any(dot(lin, r) for r in R.rays) or any(dot(lin, l) for l in R.lineality):
                return False
        return True


class CarrierFunction:
    """A PL function restricted to a weighted complex (the refined carrier).

    ``cells`` holds (cell, weight, linear part, constant).
    """

    __slots__ = ("n", "dim", "cells")

    def __init__(self, n: int, dim: int, cells):
        self.n = n
        self.dim = dim
        self.cells = list(cells)

    def __call__(self, x):
        x = qvec(x)
        for P, _, lin, c in self.cells:
            if P.contains(x):
                return dot(lin, x) + c
        raise DomainError("point outside the carrier")

    eval = __call__

    def is_bounded(self) -> bool:
        for P, _, lin, _ in self.cells:
            if any(dot(lin, r) for r in P.rays) or any(dot(lin, l) for l in P.lineality):
                return False
        return True

    def carrier(self) -> TropicalCycle:
        return TropicalCycle(self.n, self.dim, [(P, w) for P, w, _, _ in self.cells])


def restrict_polynomial(f, X: TropicalCycle) -> CarrierFunction:
    """Restrict a tropical polynomial (or rational expression) to a cycle."""
    return f.to_pl().restrict(X)


def is_bounded(phi) -> bool:
    return phi.is_bounded()


def pullback(phi: PLFunction, A, shift=None) -> PLFunction:
    return phi.pullback(A, shift)


def pl_from_ray_values(maximal_cones: Sequence[Polyhedron], values: dict) -> PLFunction:
    """Function linear on each simplicial cone with prescribed values on primitive rays."""
    pieces = []
    for C in maximal_cones:
        if not C.is_cone():
            raise DomainError("fan cones must have apex at the origin")
        if C.lineality or len(C.rays) != C.n:
            raise DomainError("fan is not complete and simplicial")
        rhs = []
        for r in C.rays:
            if r not in values:
                raise DomainError(f"no value given for ray {r}")
            rhs.append(as_fraction(values[r]))
        lin = solve([list(r) for r in C.rays], rhs)
        if lin is None:
            raise DomainError("cone generators are not independent")
        pieces.append((C, lin, Fraction(0)))
    return PLFunction(maximal_cones[0].n, pieces, True)


# ---------------------------------------------------------------------------
# difference of convex functions

def as_quotient(phi: PLFunction) -> RationalFunctionExpr:
    """Write a global PL function as f − g with f, g tropical polynomials.

    The convexifier is c(x) = Σ_h |h·x − b_h| over the wall hyperplanes of
    phi; g = N·c and f = phi + N·c with N the smallest integer making f convex.
    """
    n = phi.n
    if not phi.pieces or any(R.dim != n for R, _, _ in phi.pieces):
        raise DomainError("as_quotient needs a function on all of Q^n")
    if not phi.is_integral():
        raise DomainError("linear parts must be integral")
    regions = [R for R, _, _ in phi.pieces]
    worst = 0
    hyper = set()
    for R, adj in ridge_map(regions).values():
        if len(adj) != 2:
            continue
        (i, (a, b)), (j, _) = adj
        # a·x >= b on region i; eta points into region j
        eta = primitive_int(clear_denominators(a))
        scale_ = Fraction(eta[next(k for k, x in enumerate(eta) if x)]) / \
            a[next(k for k, x in enumerate(a) if x)]
        bb = b * scale_
        eta = tuple(-x for x in eta)
        bb = -bb
        li, lj = phi.pieces[i][1], phi.pieces[j][1]
        diff = [x - y for x, y in zip(lj, li)]
        # diff = lam * eta
        p = next(k for k, x in enumerate(eta) if x)
        lam = Fraction(diff[p], eta[p])
        worst = min(worst, lam)
        h, hb = eta, bb
        q = next(k for k, x in enumerate(h) if x)
        if h[q] < 0:
            h, hb = tuple(-x for x in h), -hb
        hyper.add((h, hb))
    N = ceil(-worst / 2) if worst < 0 else 0
    if N == 0:
        f_terms = _convex_pieces(phi)
        return RationalFunctionExpr(TropicalPolynomial.make(f_terms), TropicalPolynomial.constant(n))
    hyper = sorted(hyper)
    chambers = cut_by_hyperplanes(Polyhedron.whole_space(n), hyper)
    f_terms, g_terms = [], []
    for C in chambers:
        x = C.relative_interior_point()
        _, lin, c = phi.piece_at(x)
        glin = [0] * n
        gc = Fraction(0)
        for h, hb in hyper:
            s = 1 if dot(h, x) > hb else -1
            for t in range(n):
                glin[t] += s * h[t]
            gc -= s * hb
        glin = [N * v for v in glin]
        gc = N * gc
        f_terms.append((tuple(int(a + b) for a, b in zip(lin, glin)), c + gc))
        g_terms.append((tuple(glin), gc))
    return RationalFunctionExpr(TropicalPolynomial.make(f_terms), TropicalPolynomial.make(g_terms))


def _convex_pieces(phi: PLFunction):
    return [(tuple(int(v) for v in lin), c) for _, lin, c in phi.pieces]


def max_function(n: int, i: int, p) -> PLFunction:
    """max{x_i, p} on Q^n."""
    e = [0] * n
    e[i] = 1
    return TropicalPolynomial.make([(tuple(e), 0), ((0,) * n, p)]).to_pl()


def clamp_function(n: int, i: int, mu) -> PLFunction:
    """The bounded function max(x_i, 0) − max(x_i − mu, 0) on Q^n.

    Its divisor on X × R is X × {0} − X × {mu} for either sign of mu.
    """
    mu = as_fraction(mu)
    e = [0] * n
    e[i] = 1
    z = (0,) * n
    f = TropicalPolynomial.make([(tuple(e), 0), (z, 0)])
    g = TropicalPolynomial.make([(tuple(e), -mu), (z, 0)])
    return f.to_pl() - g.to_pl()


__all__ = [
    "TropicalPolynomial", "RationalFunctionExpr", "PLFunction", "CarrierFunction",
    "restrict_polynomial", "pullback", "is_bounded", "pl_from_ray_values", "as_quotient",
    "max_function", "clamp_function",
]
