"""Stable intersection of cycles in Q^n and the degree pairing.

The product X × Y is cut down by the n functions max{x_i, y_i} and pushed
to the first factor.  Only product cells σ × σ' with σ ∩ σ' nonempty can
touch the diagonal; since the divisor construction is local, the others are
dropped up front and the stray cells they leave behind (all disjoint from
the diagonal) are discarded before pushing forward.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .arith import INFINITE, Lattice, dot, lattice_index, qvec
from .cycle import TropicalCycle, degree0, refine_against
from .divisor import divisor_cells
from .errors import DimensionMismatch, EmptyPolyhedronError, NonGenericError
from .morphism import IntegerAffineMap, pushforward, pushforward_cells
from .plfunction import CarrierFunction
from .polyhedron import EMPTY, Polyhedron, bboxes_overlap, separated


def _meets(P: Polyhedron, Q: Polyhedron) -> bool:
    if not bboxes_overlap(P, Q) or separated(P, Q):
        return False
    return P.intersect(Q) is not EMPTY


@lru_cache(maxsize=None)
def _max_regions(m: int, i: int, j: int):
    """Linearity regions of max{z_i, z_j} on Q^m."""
    a = [0] * m
    a[i], a[j] = 1, -1
    e_i = tuple(int(k == i) for k in range(m))
    e_j = tuple(int(k == j) for k in range(m))
    up = Polyhedron.from_inequalities([(a, 0)], n=m)
    down = Polyhedron.from_inequalities([(tuple(-x for x in a), 0)], n=m)
    return [(up, e_i), (down, e_j)]


def _divide_by_max(cells, m: int, i: int, j: int, dim: int):
    regions = _max_regions(m, i, j)
    pieces = refine_against(cells, [R for R, _ in regions])
    data = []
    for P, w in pieces:
        x = P.relative_interior_point()
        lin = next(l for R, l in regions if R.contains(x) and R.contains_polyhedron(P))
        data.append((P, w, lin, Fraction(0)))
    return divisor_cells(CarrierFunction(m, dim, data))


def stable_intersect(X: TropicalCycle, Y: TropicalCycle) -> TropicalCycle:
    """X · Y via the diagonal construction."""
    n = X.ambient_dim
    if Y.ambient_dim != n:
        raise DimensionMismatch("cycles live in different ambient spaces")
    k = X.dim + Y.dim - n
    if k < 0 or X.is_zero() or Y.is_zero():
        return TropicalCycle.zero(n, max(k, 0))
    cells = []
    for P, w in X.facets:
        for Q, v in Y.facets:
            if _meets(P, Q):
                cells.append((P.cartesian_product(Q), w * v))
    m = 2 * n
    dim = X.dim + Y.dim
    for i in range(n):
        if not cells:
            return TropicalCycle.zero(n, k)
        cells = _divide_by_max(cells, m, i, n + i, dim)
        dim -= 1
    diag = [tuple(int(t == i) - int(t == n + i) for t in range(m)) for i in range(n)]
    cells = [(P, w) for P, w in cells if all(P.value_range(a) == (0, 0) for a in diag)]
    pi = IntegerAffineMap.linear([[int(t == i) for t in range(m)] for i in range(n)])
    return TropicalCycle.from_cells(n, pushforward_cells(pi, cells), dim=k)


def displacement_vectors(n: int) -> Iterator[tuple]:
    """Deterministic candidates (1, t, t^2, ...) for t = 2, 3, ..."""
    t = 2
    while True:
        yield tuple(Fraction(t) ** i for i in range(n))
        t += 1


def displacement_oracle(X: TropicalCycle, Y: TropicalCycle, v=None) -> TropicalCycle:
    """lim_{ε→0} X ∩ (Y + εv) with transverse-intersection weights.

    Raises :class:`NonGenericError` if v is not generic for the pair.  With
    ``v=None`` the candidates of :func:`displacement_vectors` are tried.
    """
    n = X.ambient_dim
    if Y.ambient_dim != n:
        raise DimensionMismatch("cycles live in different ambient spaces")
    if v is None:
        for count, cand in enumerate(displacement_vectors(n)):
            try:
                return displacement_oracle(X, Y, cand)
            except NonGenericError:
                if count > 50:
                    raise
    v = qvec(v)
    k = X.dim + Y.dim - n
    if k < 0 or X.is_zero() or Y.is_zero():
        return TropicalCycle.zero(n, max(k, 0))
    zn = Lattice.generated_by([[int(i == j) for j in range(n)] for i in range(n)], n)
    cells = []
    for S, w in X.facets:
        for T, u in Y.facets:
            if not _meets(S, T):
                continue
            ineqs = [(tuple(a) + (0,), b) for a, b in S.inequalities]
            eqs = [(tuple(a) + (0,), b) for a, b in S.equations]
            ineqs += [(tuple(a) + (-dot(a, v),), b) for a, b in T.inequalities]
            eqs += [(tuple(a) + (-dot(a, v),), b) for a, b in T.equations]
            ineqs.append(((0,) * n + (1,), 0))
            try:
                P = Polyhedron.from_inequalities(ineqs, eqs, n=n + 1)
            except EmptyPolyhedronError:
                continue
            eps = (0,) * n + (1,)
            lo, hi = P.value_range(eps)
            if hi is not None and hi == 0:
                continue  # only touches at ε = 0
            P0 = P.intersect_halfspace(eps, 0, 0)
            if P0 is EMPTY:
                continue
            if P.dim - 1 != k:
                raise NonGenericError(f"displacement {v} is not generic")
            if P0.dim != k:
                continue
            # the moved intersection must avoid the boundaries of S and T
            z = P.relative_interior_point()
            if any(dot(a, z) == b for a, b in ineqs[:-1]):
                raise NonGenericError(f"displacement {v} slides along a boundary")
            idx = lattice_index(
                Lattice.generated_by(S.direction_space().integer_basis() +
                                     T.direction_space().integer_basis(), n), zn)
            if idx is INFINITE:
                raise NonGenericError("facet spans are not transverse")
            proj = [[int(i == j) for j in range(n + 1)] for i in range(n)]
            cells.append((P0.linear_image(proj), w * u * idx))
    return TropicalCycle.from_cells(n, cells, dim=k)


def degree_pairing(X: TropicalCycle, Z: TropicalCycle) -> int:
    """deg(X · Z) for cycles of complementary dimension."""
    if X.dim + Z.dim != X.ambient_dim:
        raise DimensionMismatch("degree pairing needs complementary dimensions")
    return degree0(stable_intersect(X, Z))


def simplex_fan(n: int, k: int) -> TropicalCycle:
    """k-skeleton of the fan spanned by e_1..e_n and -(e_1+...+e_n), weight 1."""
    gens = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    gens.append(tuple(-1 for _ in range(n)))
    zero = (0,) * n
    cells = [(Polyhedron.from_generators([zero], list(c)), 1) for c in combinations(gens, k)]
    if k == 0:
        return TropicalCycle.point(zero)
    return TropicalCycle.from_structure(n, cells, dim=k, check=False)


def coordinate_fan(n: int, idx) -> TropicalCycle:
    zero = (0,) * n
    lin = [tuple(int(i == j) for j in range(n)) for i in idx]
    return TropicalCycle(n, len(lin), [(Polyhedron.from_generators([zero], [], lin, n=n), 1)])


def probe_cycles(n: int, k: int, trials: int) -> Iterator[TropicalCycle]:
    """Deterministic family of k-dimensional test cycles for numerical pairings."""
    base = [coordinate_fan(n, c) for c in combinations(range(n), k)]
    base.append(simplex_fan(n, k))
    neg = [[-int(i == j) for j in range(n)] for i in range(n)]
    base.append(pushforward(IntegerAffineMap.linear(neg), simplex_fan(n, k)))
    for t in range(trials):
        F = base[t % len(base)]
        shift = tuple(Fraction((t + 1) * (i + 2) + i * i, i + 2 + t % 3) for i in range(n))
        yield F.translate(shift)


def find_refutation(X: TropicalCycle, Y: TropicalCycle, trials: int = 20):
    """A test cycle Z with deg(X·Z) != deg(Y·Z), or None if none is found."""
    if X.ambient_dim != Y.ambient_dim or X.dim != Y.dim:
        raise DimensionMismatch("cycles must have equal ambient space and dimension")
    n = X.ambient_dim
    for Z in probe_cycles(n, n - X.dim, trials):
        a, b = degree_pairing(X, Z), degree_pairing(Y, Z)
        if a != b:
            return Z, a, b
    return None


def numerical_equiv_sample(X: TropicalCycle, Y: TropicalCycle, trials: int = 20) -> bool:
    """Refutation-only test of numerical equivalence.

    False means a test cycle with different degrees was found.  True only
    means no such cycle was found among ``trials`` samples; it is not a proof
    of equivalence (that goes through equality of recession fans).
    """
    return find_refutation(X, Y, trials) is None


__all__ = ["stable_intersect", "displacement_oracle", "displacement_vectors", "degree_pairing",
           "numerical_equiv_sample", "find_refutation", "probe_cycles", "simplex_fan",
           "coordinate_fan"]
