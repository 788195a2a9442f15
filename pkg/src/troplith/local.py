"""Local structure of cycles: stars, lineality and splitting dimensions, skeleta."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import INFINITE, Subspace, qvec, subspace_intersect, vsub
from .cycle import TropicalCycle, add, cycle_equal, scale
from .errors import OracleIncomplete
from .polyhedron import Polyhedron

UNKNOWN = "UNKNOWN"

# steps allowed for the greedy peeling certificate in dimension >= 2
PEEL_LIMIT = 4


def star(X: TropicalCycle, p) -> TropicalCycle:
    """Star_X(p): the fan of directions in which X leaves p, weights inherited."""
    p = qvec(p)
    n = X.ambient_dim
    zero = tuple(Fraction(0) for _ in range(n))
    cells = []
    for P, w in X.facets:
        if not P.contains(p):
            continue
        rays = [vsub(v, p) for v in P.vertices]
        rays = [r for r in rays if any(r)] + list(P.rays)
        cells.append((Polyhedron.from_generators([zero], rays, P.lineality, n=n), w))
    if not cells:
        return TropicalCycle.zero(n, X.dim)
    return TropicalCycle(n, X.dim, cells)


def lineality_space(F: TropicalCycle) -> Subspace:
    """Largest subspace V with F + v = F for all v in V (verified)."""
    n = F.ambient_dim
    if F.is_zero():
        return Subspace.full(n)
    V = Subspace.full(n)
    W = Subspace.full(n)
    for P, _ in F.facets:
        V = subspace_intersect(V, P.lineality_space())
        W = subspace_intersect(W, P.direction_space())
    basis = []
    for w in V.integer_basis():
        if cycle_equal(F.translate(w), F):
            basis.append(w)
    if len(basis) != V.dim:
        # drop unverified directions
        V = Subspace.span(basis, n)
    # directions allowed by every facet span but missed by a non-coarsest structure
    for w in W.integer_basis():
        if not V.contains_vector(w) and cycle_equal(F.translate(w), F):
            V = Subspace.span(list(V.basis) + [w], n)
    for w in V.integer_basis():
        if not cycle_equal(F.translate(w), F):
            raise AssertionError("lineality verification failed")
    return V


def lindim(F: TropicalCycle):
    if F.is_zero():
        return INFINITE
    return lineality_space(F).dim


def _line_split_1d(F: TropicalCycle) -> bool:
    """A 1-dimensional fan is a sum of weighted lines iff opposite rays match."""
    wt: dict = {}
    for P, w in F.facets:
        if P.lineality:
            d = P.lineality[0]
            wt[d] = wt.get(d, 0) + w
            nd = tuple(-x for x in d)
            wt[nd] = wt.get(nd, 0) + w
        else:
            r = P.rays[0]
            wt[r] = wt.get(r, 0) + w
    return all(wt.get(tuple(-x for x in d), 0) == w for d, w in wt.items())


def plane_sum(F: TropicalCycle):
    """Write F as a sum of weighted linear d-spaces if possible, else None."""
    n, d = F.ambient_dim, F.dim
    # cheap necessary test: a sum of planes is symmetric under x -> -x
    for P, w in F.facets:
        x = [0] * n
        for k, r in enumerate(P.rays):
            for t in range(n):
                x[t] += (k + 2) * r[t]
        if F.weight_at(tuple(-c for c in x)) != w:
            return None
    planes: dict = {}
    for P, w in F.facets:
        V = P.direction_space()
        if V.basis not in planes:
            planes[V.basis] = (V, w)
    zero = (0,) * n
    cells = [(Polyhedron.from_generators([zero], [], V.integer_basis(), n=n), w)
             for V, w in planes.values()]
    G = TropicalCycle.from_cells(n, cells, dim=d)
    if cycle_equal(G, F):
        return [(V, w) for V, w in planes.values()]
    return None


def _peel_certificate(F: TropicalCycle, k: int):
    """Greedy search for F = Σ F_i with lindim(F_i) >= k; returns the summands or None."""
    rest = F
    summands = []
    for _ in range(PEEL_LIMIT):
        if rest.is_zero():
            return summands
        if lindim(rest) >= k:
            summands.append(rest)
            return summands
        # star at a relative interior point of the first ridge of the remainder
        ridges = sorted((R for R, _ in rest.ridges().values()), key=Polyhedron.sort_key)
        cand = None
        for R in ridges:
            S = star(rest, R.relative_interior_point())
            if lindim(S) >= k:
                cand = S
                break
        if cand is None:
            return None
        summands.append(cand)
        rest = add(rest, scale(cand, -1))
    return None


def spldim(F: TropicalCycle):
    """Splitting dimension of a fan cycle.

    Exact in dimension <= 1.  In higher dimension the result is exact when F
    is a sum of d-planes, when lindim = d - 1, or when a sum decomposition into
    fans of lineality d - 1 is found and re-verified; otherwise ``UNKNOWN``.
    """
    if F.is_zero():
        return INFINITE
    d = F.dim
    if d == 0:
        return 0
    if d == 1:
        return 1 if _line_split_1d(F) else 0
    if plane_sum(F) is not None:
        return d
    l = lindim(F)
    if l == d - 1:
        return d - 1
    cert = _peel_certificate(F, d - 1)
    if cert is not None:
        total = cert[0]
        for G in cert[1:]:
            total = add(total, G)
        if cycle_equal(total, F):
            return d - 1
    return UNKNOWN


@dataclass(frozen=True)
class LocalProfile:
    point: tuple
    l: object
    s: object


def profile(X: TropicalCycle, p) -> LocalProfile:
    S = star(X, p)
    p = qvec(p)
    if S.is_zero():
        return LocalProfile(p, INFINITE, INFINITE)
    return LocalProfile(p, lindim(S), spldim(S))


def cell_profiles(X: TropicalCycle):
    """(cell, profile at its relative interior point) for every face of every facet."""
    seen = {}
    for P, _ in X.facets:
        for k in range(P.dim + 1):
            for F in P.faces(k):
                seen.setdefault(F.key, F)
    out = []
    for F in sorted(seen.values(), key=lambda c: (c.dim, c.sort_key())):
        out.append((F, profile(X, F.relative_interior_point())))
    return out


def _skeleton(X: TropicalCycle, k: int, which: str):
    cells = []
    for F, prof in cell_profiles(X):
        v = getattr(prof, which)
        if v == UNKNOWN:
            raise OracleIncomplete("SPLDIM_UNKNOWN", f"splitting dimension undecided near {prof.point}")
        if v <= k:
            cells.append(F)
    # keep maximal cells only
    out = [c for c in cells if not any(c is not d and d.dim > c.dim and d.contains_polyhedron(c)
                                       for d in cells)]
    return sorted(out, key=lambda c: (c.dim, c.sort_key()))


def skeleton_l(X: TropicalCycle, k: int):
    """Cells covering X^(k) = {p : l(p) <= k}."""
    return _skeleton(X, k, "l")


def skeleton_s(X: TropicalCycle, k: int):
    """Cells covering X^[k] = {p : s(p) <= k}; raises OracleIncomplete when undecided."""
    return _skeleton(X, k, "s")


def same_set(A, B) -> bool:
    """Whether two lists of polyhedra cover the same set (exact)."""
    from .cycle import covered_by
    return all(covered_by(P, B) for P in A) and all(covered_by(Q, A) for Q in B)


def star_compatibility_check(X: TropicalCycle, p, k: int) -> bool:
    """Star_X(p)^[k] equals the star at p of X^[k], and likewise for (k)."""
    p = qvec(p)
    S = star(X, p)
    for which in ("s", "l"):
        local = _skeleton(S, k, which) if not S.is_zero() else []
        glob = _skeleton(X, k, which)
        # star of a polyhedral set at p: cones of cells through p
        zero = tuple(Fraction(0) for _ in range(X.ambient_dim))
        starred = []
        for C in glob:
            if C.contains(p):
                rays = [vsub(v, p) for v in C.vertices]
                starred.append(Polyhedron.from_generators(
                    [zero], [r for r in rays if any(r)] + list(C.rays), C.lineality,
                    n=X.ambient_dim))
        if not same_set(local, starred):
            return False
    return True


__all__ = ["star", "lineality_space", "lindim", "spldim", "plane_sum", "profile",
           "cell_profiles", "skeleton_l", "skeleton_s", "star_compatibility_check",
           "LocalProfile", "UNKNOWN"]
