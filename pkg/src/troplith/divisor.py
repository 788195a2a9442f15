"""Divisors of piecewise affine functions, balanced graphs, and fibers."""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Sequence

from .arith import clear_denominators, dot, primitive_int
from .cycle import (
    TropicalCycle,
    cut_by_hyperplanes,
    primitive_normal,
    ridge_map,
)
from .errors import DimensionMismatch, DomainError, NotBalancedError
from .plfunction import (
    CarrierFunction,
    PLFunction,
    RationalFunctionExpr,
    TropicalPolynomial,
    as_quotient,
    max_function,
)
from .polyhedron import Polyhedron


def _as_carrier(phi, X: TropicalCycle) -> CarrierFunction:
    if isinstance(phi, CarrierFunction):
        return phi
    if isinstance(phi, (TropicalPolynomial, RationalFunctionExpr)):
        phi = phi.to_pl()
    if not isinstance(phi, PLFunction):
        raise TypeError("expected a piecewise affine function")
    return phi.restrict(X)


def ridge_weights(cf: CarrierFunction):
    """Yield (ridge, weight, linear part) for ridges with nonzero divisor weight."""
    cells = cf.cells
    polys = [P for P, _, _, _ in cells]
    rm = ridge_map(polys)
    out = []
    for R, adj in rm.values():
        lins = {cells[i][2] for i, _ in adj}
        if len(lins) == 1 and len(adj) > 1:
            # one affine function around τ: both terms cancel
            continue
        first = None
        total_val = Fraction(0)
        vsum = [0] * cf.n
        for i, _ in sorted(adj):
            P, w, lin, _ = cells[i]
            u = primitive_normal(P, R)
            total_val += w * dot(lin, u)
            for t in range(cf.n):
                vsum[t] += w * u[t]
            if first is None:
                first = lin
        weight = total_val - dot(first, vsum)
        if weight:
            if Fraction(weight).denominator != 1:
                raise DomainError("divisor weight is not integral; linear parts must be integral")
            out.append((R, int(weight), first))
    return out


def divisor_cells(cf: CarrierFunction) -> list[tuple[Polyhedron, int]]:
    return [(R, w) for R, w, _ in ridge_weights(cf)]


def divisor(phi, X: TropicalCycle) -> TropicalCycle:
    """The cycle φ·X of codimension one in X."""
    if X.dim == 0 or X.is_zero():
        return TropicalCycle.zero(X.ambient_dim, max(X.dim - 1, 0))
    cf = _as_carrier(phi, X)
    return TropicalCycle(X.ambient_dim, X.dim - 1, divisor_cells(cf))


def divisor_chain(fs: Sequence, X: TropicalCycle) -> TropicalCycle:
    """Left fold of :func:`divisor` over a list of functions."""
    out = X
    for f in fs:
        if out.is_zero():
            return TropicalCycle.zero(X.ambient_dim, max(X.dim - len(fs), 0))
        out = divisor(f, out)
    return out


def graph_cycle(phi, Y: TropicalCycle) -> TropicalCycle:
    """Balanced graph of φ on Y in Q^n × Q."""
    n = Y.ambient_dim
    cf = _as_carrier(phi, Y)
    for _, _, lin, _ in cf.cells:
        if any(Fraction(x).denominator != 1 for x in lin):
            raise DomainError("graph needs integral linear parts")

    def lift(P, lin, c):
        verts = [tuple(v) + (dot(lin, v) + c,) for v in P.vertices]
        rays = [tuple(r) + (dot(lin, r),) for r in P.rays]
        lins = [tuple(l) + (dot(lin, l),) for l in P.lineality]
        return verts, rays, lins

    cells = []
    for P, w, lin, c in cf.cells:
        v, r, l = lift(P, lin, c)
        cells.append((Polyhedron.from_generators(v, r, l, n=n + 1), w))
    down = (0,) * n + (-1,)
    for R, w, lin in ridge_weights(cf):
        # R's affine data: any adjacent piece agrees on R
        c = next(cc for P, _, ll, cc in cf.cells if ll == lin and P.contains_polyhedron(R))
        v, r, l = lift(R, lin, c)
        cells.append((Polyhedron.from_generators(v, r + [down], l, n=n + 1), w))
    return TropicalCycle(n + 1, Y.dim, cells)


def fiber(F: TropicalCycle, p) -> TropicalCycle:
    """F_p: divisor of max{t, p} on F ⊆ Q^n × Q, viewed in Q^n."""
    m = F.ambient_dim
    n = m - 1
    if n < 0:
        raise DimensionMismatch("fiber needs an ambient space of the form Q^n × Q")
    D = divisor(max_function(m, n, p), F)
    proj = [[int(i == j) for j in range(m)] for i in range(n)]
    cells = [(P.linear_image(proj), w) for P, w in D.facets]
    return TropicalCycle(n, D.dim, cells)


def invert_divisor(D: TropicalCycle) -> RationalFunctionExpr:
    """Rational function f − g on Q^n whose divisor is the codim-1 fan cycle D."""
    n = D.ambient_dim
    if D.is_zero():
        z = TropicalPolynomial.constant(n)
        return RationalFunctionExpr(z, z)
    if D.dim != n - 1:
        raise DimensionMismatch("invert_divisor needs a cycle of codimension one")
    if not D.is_fan():
        raise DomainError("invert_divisor needs a fan cycle")
    hyper = set()
    for P, _ in D.facets:
        (a, _), = P.equations
        hyper.add(_oriented(a))
        for b, _ in P.inequalities:
            hyper.add(_oriented(b))
    hyper = sorted((h, Fraction(0)) for h in hyper)
    chambers = sorted(cut_by_hyperplanes(Polyhedron.whole_space(n), hyper),
                      key=Polyhedron.sort_key)
    rm = ridge_map(chambers)
    nbrs: dict[int, list] = {i: [] for i in range(len(chambers))}
    for W, adj in rm.values():
        if len(adj) != 2:
            continue
        (i, (a, _)), (j, (b, _)) = adj
        w = D.weight_at(W.relative_interior_point())
        # a·x >= 0 on chamber i, so -a points from i into j
        eta_ij = primitive_int(clear_denominators([-x for x in a]))
        nbrs[i].append((j, w, eta_ij))
        nbrs[j].append((i, w, tuple(-x for x in eta_ij)))
    lin: dict[int, tuple] = {0: (0,) * n}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j, w, eta in nbrs[i]:
            cand = tuple(x + w * y for x, y in zip(lin[i], eta))
            if j in lin:
                if lin[j] != cand:
                    raise NotBalancedError([("inconsistent gradient jump", j)])
            else:
                lin[j] = cand
                queue.append(j)
    phi = PLFunction(n, [(C, lin[i], 0) for i, C in enumerate(chambers)], True)
    return as_quotient(phi)


def _oriented(a):
    a = primitive_int(clear_denominators(a))
    p = next(i for i, x in enumerate(a) if x)
    return a if a[p] > 0 else tuple(-x for x in a)


__all__ = ["divisor", "divisor_chain", "graph_cycle", "fiber", "invert_divisor",
           "ridge_weights", "divisor_cells"]
