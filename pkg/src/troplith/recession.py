"""Recession fans of cycles, arrangement fans and simplicial completion."""

from __future__ import annotations

from itertools import product as iproduct
from typing import Sequence

from .arith import clear_denominators, primitive_int, rank
from .cycle import TropicalCycle, cut_by_hyperplanes, ridge_map
from .errors import InternalError
from .polyhedron import Polyhedron


class CompleteFan:
    """A complete polyhedral fan in Q^n given by its maximal cones."""

    def __init__(self, n: int, maximal_cones: Sequence[Polyhedron]):
        self.n = n
        self.maximal_cones = sorted(maximal_cones, key=Polyhedron.sort_key)

    def __repr__(self):
        return f"CompleteFan(n={self.n}, maximal={len(self.maximal_cones)})"

    def cones(self, k: int) -> list[Polyhedron]:
        """All k-dimensional cones (faces of maximal cones), deduplicated."""
        seen = {}
        for C in self.maximal_cones:
            for F in C.faces(k):
                seen.setdefault(F.key, F)
        return sorted(seen.values(), key=Polyhedron.sort_key)

    def rays(self) -> list[tuple]:
        out = set()
        for C in self.maximal_cones:
            out.update(C.rays)
        return sorted(out)

    def is_simplicial(self) -> bool:
        for C in self.maximal_cones:
            if C.lineality:
                return False
            if len(C.rays) != C.dim or rank(list(C.rays)) != len(C.rays):
                return False
        return True

    def audit(self, radius: int = 2) -> bool:
        """Completeness audit: ridge pairing plus covering of a point grid."""
        if any(C.dim != self.n for C in self.maximal_cones):
            return False
        if self.n == 0:
            return True
        for _, adj in ridge_map(self.maximal_cones).values():
            if len(adj) != 2:
                return False
        rng = range(-radius, radius + 1)
        for x in iproduct(rng, repeat=self.n):
            if not any(C.contains(x) for C in self.maximal_cones):
                return False
        return True


def _oriented(a):
    a = primitive_int(clear_denominators(a))
    p = next(i for i, x in enumerate(a) if x)
    return a if a[p] > 0 else tuple(-x for x in a)


def arrangement_fan(functionals: Sequence[Sequence[int]], n: int | None = None) -> CompleteFan:
    """Common refinement of the sign fans of the given linear functionals."""
    if n is None:
        if not functionals:
            raise ValueError("ambient dimension needed for an empty arrangement")
        n = len(functionals[0])
    hyper = sorted({_oriented(f) for f in functionals if any(f)})
    chambers = cut_by_hyperplanes(Polyhedron.whole_space(n), [(h, 0) for h in hyper])
    return CompleteFan(n, chambers)


def _cycle_functionals(F: TropicalCycle):
    out = []
    for P, _ in F.facets:
        out.extend(a for a, _ in P.equations)
        out.extend(a for a, _ in P.inequalities)
    return out


def _stellar(cones: list[Polyhedron], sigma: Polyhedron) -> list[Polyhedron]:
    n = sigma.n
    r = [0] * n
    for g in sigma.rays:
        for i in range(n):
            r[i] += g[i]
    r = primitive_int(r)
    zero = (0,) * n
    out = []
    for C in cones:
        if not C.contains_polyhedron(sigma):
            out.append(C)
            continue
        for rho in C.facets():
            if rho.contains(r):
                continue
            out.append(Polyhedron.from_generators([zero], list(rho.rays) + [r], n=n))
    return out


def simplicial_completion(F: TropicalCycle):
    """Complete simplicial fan Θ together with a weighted subfan representing F.

    Θ refines the arrangement of all functionals defining F's cones and the
    coordinate hyperplanes; non-simplicial cones are stellarly subdivided
    (at the sum of their primitive rays) in order of increasing dimension.
    """
    if not F.is_zero() and not F.is_fan():
        raise ValueError("simplicial completion needs a fan cycle")
    n = F.ambient_dim
    coords = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    theta = arrangement_fan(_cycle_functionals(F) + coords, n)
    cones = list(theta.maximal_cones)
    for k in range(2, n + 1):
        while True:
            fan = CompleteFan(n, cones)
            bad = [c for c in fan.cones(k) if len(c.rays) > k]
            if not bad:
                break
            cones = _stellar(cones, bad[0])
    theta = CompleteFan(n, cones)
    sub = []
    if not F.is_zero():
        for c in theta.cones(F.dim):
            x = c.relative_interior_point()
            w = F.weight_at(x)
            if w:
                sub.append((c, w))
    return theta, sub


def recession_cycle(X: TropicalCycle) -> TropicalCycle:
    """Rec(X): recession cones of full dimension with summed weights."""
    d = X.dim
    cells = []
    for P, w in X.facets:
        R = P.recession_cone()
        if R.dim == d:
            cells.append((R, w))
    out = TropicalCycle.from_cells(X.ambient_dim, cells, dim=d)
    if not out.is_fan():
        raise InternalError("recession cycle is not a fan")
    return out


__all__ = ["CompleteFan", "arrangement_fan", "simplicial_completion", "recession_cycle"]
