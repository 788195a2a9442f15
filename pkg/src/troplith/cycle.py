"""Weighted polyhedral complexes and the group of tropical cycles.

A :class:`TropicalCycle` stores a polyhedral structure (a list of facets with
integer weights that pairwise meet in common faces).  Canonical form drops
zero weights, merges equal cells and greedily coarsens.  Since greedy
coarsening is not unique in dimension >= 2, equality is decided by testing
whether the difference is the zero cycle.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Sequence

from .arith import Subspace, dot, qvec, quotient_primitive, vsub
from .errors import DimensionMismatch, NotAComplexError, NotBalancedError
from .polyhedron import (
    EMPTY,
    Polyhedron,
    bboxes_overlap,
    is_face_of,
    separated,
)

# When set, every cycle produced by a library operation is balance-checked.
CHECK_BALANCING = False


# ---------------------------------------------------------------------------
# complex utilities

def meet_is_face(P: Polyhedron, Q: Polyhedron) -> bool:
    """True iff P ∩ Q is empty or a common face of P and Q."""
    if not bboxes_overlap(P, Q) or separated(P, Q):
        return True
    inter = P.intersect(Q)
    if inter is EMPTY:
        return True
    return is_face_of(inter, P) and is_face_of(inter, Q)


def _crossing_hyperplanes(P: Polyhedron, Q: Polyhedron):
    """Hyperplanes of Q's description that cut through the relative interior of P."""
    out = []
    for a, b in list(Q.inequalities) + list(Q.equations):
        if P.side_of(a, b) == 2:
            out.append((a, b))
    return out


def cut_by_hyperplanes(P: Polyhedron, hyperplanes) -> list[Polyhedron]:
    pieces = [P]
    for a, b in sorted(set(hyperplanes)):
        nxt = []
        for R in pieces:
            if R.side_of(a, b) == 2:
                for sense in (1, -1):
                    S = R.intersect_halfspace(a, b, sense)
                    if S is not EMPTY and S.dim == R.dim:
                        nxt.append(S)
            else:
                nxt.append(R)
        pieces = nxt
    return pieces


def _merge_identical(cells):
    acc: dict = {}
    for P, w in cells:
        if P.key in acc:
            acc[P.key][1] += w
        else:
            acc[P.key] = [P, w]
    return [(P, w) for P, w in acc.values()]


def make_complex(cells: Iterable[tuple[Polyhedron, int]]) -> list[tuple[Polyhedron, int]]:
    """Refine equal-dimensional weighted cells until they form a complex.

    Overlapping pieces are cut along each other's hyperplanes until every
    pairwise intersection is a common face; equal pieces add weights.
    """
    pieces = _merge_identical(cells)
    ok: set = set()
    while True:
        pieces.sort(key=lambda c: c[0].sort_key())
        cuts: dict[int, set] = defaultdict(set)
        N = len(pieces)
        for i in range(N):
            P = pieces[i][0]
            for j in range(i + 1, N):
                Q = pieces[j][0]
                pair = (P.key, Q.key)
                if pair in ok:
                    continue
                if meet_is_face(P, Q):
                    ok.add(pair)
                    continue
                cuts[i].update(_crossing_hyperplanes(P, Q))
                cuts[j].update(_crossing_hyperplanes(Q, P))
        if not cuts:
            return pieces
        new = []
        for i, (P, w) in enumerate(pieces):
            if i in cuts:
                new.extend((R, w) for R in cut_by_hyperplanes(P, cuts[i]))
            else:
                new.append((P, w))
        pieces = _merge_identical(new)


def refine_against(cells, regions) -> list[tuple[Polyhedron, int]]:
    """Intersect each cell with a covering complex of regions.

    Only pieces of full dimension (within the cell) are kept.  When the regions
    form a complex covering the cells, the result is again a complex.
    """
    out = []
    for P, w in cells:
        d = P.dim
        seen = set()
        for R in regions:
            if not bboxes_overlap(P, R) or separated(P, R):
                continue
            if R.contains_polyhedron(P):
                out.append((P, w))
                break
            inter = P.intersect(R)
            # a piece inside a common face of several regions is kept once
            if inter is not EMPTY and inter.dim == d and inter.key not in seen:
                seen.add(inter.key)
                out.append((inter, w))
    return out


def covered_by(P: Polyhedron, cells: Sequence[Polyhedron]) -> bool:
    """Exact test whether P lies in the union of ``cells``."""
    near = [C for C in cells if bboxes_overlap(P, C) and not separated(P, C)]
    if any(C.contains_polyhedron(P) for C in near):
        return True
    hyper = set()
    for C in near:
        hyper.update(_crossing_hyperplanes(P, C))
    for S in cut_by_hyperplanes(P, hyper):
        x = S.relative_interior_point()
        if not any(C.contains(x) for C in near):
            return False
    return True


def is_complex(cells: Sequence[Polyhedron]) -> bool:
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            if not meet_is_face(cells[i], cells[j]):
                return False
    return True


def ridge_map(cells: Sequence[Polyhedron]):
    """Map ridge key -> (ridge, [(facet index, defining inequality)])."""
    rm: dict = {}
    for i, P in enumerate(cells):
        for ineq, R in P.facet_pairs():
            if R.key in rm:
                rm[R.key][1].append((i, ineq))
            else:
                rm[R.key] = (R, [(i, ineq)])
    return rm


def primitive_normal(sigma: Polyhedron, tau: Polyhedron):
    """Canonical lift of the primitive generator of Λ_σ/Λ_τ pointing into σ."""
    v = vsub(sigma.relative_interior_point(), tau.relative_interior_point())
    return quotient_primitive(v, tau.direction_space())


def balancing_defects(cells: Sequence[tuple[Polyhedron, int]]):
    """List of (ridge, defect vector) where the weighted normal sum leaves V_τ."""
    polys = [P for P, _ in cells]
    out = []
    for R, adj in sorted(ridge_map(polys).values(), key=lambda t: t[0].sort_key()):
        n = R.n
        tot = [0] * n
        for i, _ in adj:
            w = cells[i][1]
            u = primitive_normal(polys[i], R)
            for t in range(n):
                tot[t] += w * u[t]
        V = R.direction_space()
        if not V.contains_vector(tot):
            # report the component orthogonal to V_τ
            out.append((R, tuple(tot)))
    return out


# ---------------------------------------------------------------------------
# coarsening

def _affine_key(P: Polyhedron):
    return P.equations


def _try_merge(group: list[int], cells, internal_ridges: set, others_idx, rmap_by_cell):
    """Merge the facets in ``group`` if their union is convex and the result
    still meets every other cell in a common face.  Returns the merged cell or None."""
    polys = [cells[i][0] for i in group]
    verts, rays, lin = [], [], []
    for P in polys:
        verts.extend(P.vertices)
        rays.extend(P.rays)
        lin.extend(P.lineality)
    for i, P in zip(group, polys):
        for ineq, R in P.facet_pairs():
            if R.key in internal_ridges:
                continue
            a, b = ineq
            for Q in polys:
                if Q is P:
                    continue
                if any(dot(a, v) < b for v in Q.vertices) or any(dot(a, r) < 0 for r in Q.rays) \
                        or any(dot(a, l) != 0 for l in Q.lineality):
                    return None
    U = Polyhedron.from_generators(verts, rays, lin, n=polys[0].n)
    for j in others_idx:
        T = cells[j][0]
        if not meet_is_face(U, T):
            return None
    return U


def coarsen(cells: list[tuple[Polyhedron, int]]) -> list[tuple[Polyhedron, int]]:
    """Greedy coarsening of a weighted complex.

    Repeatedly merges groups of facets glued along ridges that have exactly
    two neighbours of equal weight and equal affine span, provided the union
    is convex and the result is still a complex.
    """
    cells = sorted(cells, key=lambda c: c[0].sort_key())
    if not cells or cells[0][0].dim == 0:
        return cells
    while True:
        polys = [P for P, _ in cells]
        rm = ridge_map(polys)
        parent = list(range(len(cells)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        mergeable = []
        for key, (R, adj) in rm.items():
            if len(adj) != 2:
                continue
            (i, _), (j, _) = adj
            if cells[i][1] != cells[j][1] or _affine_key(polys[i]) != _affine_key(polys[j]):
                continue
            mergeable.append((R.sort_key(), key, i, j))
            parent[find(i)] = find(j)
        if not mergeable:
            return cells
        mergeable.sort()
        internal = {key for _, key, _, _ in mergeable}
        groups: dict[int, list[int]] = defaultdict(list)
        for i in range(len(cells)):
            groups[find(i)].append(i)
        comps = sorted((g for g in groups.values() if len(g) > 1), key=lambda g: min(g))
        touched: set[int] = set()
        merged_cells: list[tuple[Polyhedron, int]] = []
        changed = False
        for g in comps:
            others = [j for j in range(len(cells)) if j not in g and bboxes_overlap_any(polys, g, j)]
            U = _try_merge(g, cells, internal, others, None)
            if U is not None:
                merged_cells.append((U, cells[g[0]][1]))
                touched.update(g)
                changed = True
        if not changed:
            # fall back to merging single pairs
            for _, key, i, j in mergeable:
                if i in touched or j in touched:
                    continue
                g = [i, j]
                others = [k for k in range(len(cells)) if k not in g and bboxes_overlap_any(polys, g, k)]
                U = _try_merge(g, cells, {key}, others, None)
                if U is not None:
                    merged_cells.append((U, cells[i][1]))
                    touched.update(g)
                    changed = True
                    break
        if not changed:
            return cells
        cells = sorted([c for k, c in enumerate(cells) if k not in touched] + merged_cells,
                       key=lambda c: c[0].sort_key())


def bboxes_overlap_any(polys, group, j) -> bool:
    return any(bboxes_overlap(polys[i], polys[j]) for i in group)


# ---------------------------------------------------------------------------

class TropicalCycle:
    """A weighted rational polyhedral complex of pure dimension ``dim`` in Q^n.

    Construct with :meth:`from_cells` (arbitrary overlapping cells, refined
    into a complex) or :meth:`from_structure` (cells already forming a
    complex).  Instances are kept in canonical form.
    """

    __slots__ = ("ambient_dim", "dim", "facets", "_cache")

    def __init__(self, ambient_dim: int, dim: int, facets, _canonical=False):
        self.ambient_dim = ambient_dim
        self.dim = dim
        if not _canonical:
            facets = canonicalize(list(facets))
        self.facets: tuple[tuple[Polyhedron, int], ...] = tuple(facets)
        self._cache: dict = {}
        if CHECK_BALANCING and not _canonical:
            defects = balancing_defects(self.facets)
            if defects:
                raise NotBalancedError(defects)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ambient_dim: int, dim: int) -> "TropicalCycle":
        return cls(ambient_dim, dim, (), _canonical=True)

    @classmethod
    def from_cells(cls, ambient_dim: int, cells, dim: int | None = None) -> "TropicalCycle":
        """Cycle whose weight at a generic point is the sum over cells containing it.

        Cells of dimension below ``dim`` are ignored.
        """
        cells = [(P, int(w)) for P, w in cells if w]
        if dim is None:
            if not cells:
                raise ValueError("dimension of an empty cycle must be given")
            dim = max(P.dim for P, _ in cells)
        for P, _ in cells:
            if P.n != ambient_dim:
                raise DimensionMismatch("cell lives in the wrong ambient space")
            if P.dim > dim:
                raise DimensionMismatch("cell dimension exceeds cycle dimension")
        cells = [(P, w) for P, w in cells if P.dim == dim]
        return cls(ambient_dim, dim, make_complex(cells))

    @classmethod
    def from_structure(cls, ambient_dim: int, cells, dim: int | None = None,
                       check: bool = True) -> "TropicalCycle":
        """Cycle from cells that already form a polyhedral complex."""
        cells = [(P, int(w)) for P, w in cells]
        if dim is None:
            if not cells:
                raise ValueError("dimension of an empty cycle must be given")
            dim = cells[0][0].dim
        for P, _ in cells:
            if P.n != ambient_dim:
                raise DimensionMismatch("cell lives in the wrong ambient space")
            if P.dim != dim:
                raise DimensionMismatch("structure is not pure-dimensional")
        if check and not is_complex([P for P, _ in cells]):
            raise NotAComplexError("cells do not meet in common faces")
        return cls(ambient_dim, dim, cells)

    @classmethod
    def whole_space(cls, n: int, weight: int = 1) -> "TropicalCycle":
        return cls(n, n, [(Polyhedron.whole_space(n), weight)])

    @classmethod
    def point(cls, p, weight: int = 1) -> "TropicalCycle":
        P = Polyhedron.point(p)
        return cls(P.n, 0, [(P, weight)])

    # -- queries ----------------------------------------------------------

    @property
    def cells(self) -> list[Polyhedron]:
        return [P for P, _ in self.facets]

    @property
    def weights(self) -> list[int]:
        return [w for _, w in self.facets]

    def is_zero(self) -> bool:
        return not self.facets

    def is_fan(self) -> bool:
        return all(P.is_cone() for P, _ in self.facets)

    def balancing_check(self):
        return balancing_defects(self.facets)

    def is_balanced(self) -> bool:
        return not self.balancing_check()

    def ridges(self):
        """Ridge key -> (ridge, [(facet index, inequality)]), cached."""
        if 'ridges' not in self._cache:
            self._cache['ridges'] = ridge_map(self.cells)
        return self._cache['ridges']

    def contains_point(self, x) -> bool:
        x = qvec(x)
        return any(P.contains(x) for P, _ in self.facets)

    def weight_at(self, x) -> int:
        """Weight of the facet whose relative interior holds x (0 off the support)."""
        x = qvec(x)
        for P, w in self.facets:
            if P.contains(x) and not any(dot(a, x) == b for a, b in P.inequalities):
                return w
        return 0

    def __repr__(self):
        return f"TropicalCycle(n={self.ambient_dim}, dim={self.dim}, facets={len(self.facets)})"

    def sort_key(self):
        return tuple((P.sort_key(), w) for P, w in self.facets)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "TropicalCycle") -> "TropicalCycle":
        return add(self, other)

    def __neg__(self) -> "TropicalCycle":
        return scale(self, -1)

    def __sub__(self, other: "TropicalCycle") -> "TropicalCycle":
        return add(self, scale(other, -1))

    def __rmul__(self, m: int) -> "TropicalCycle":
        return scale(self, m)

    def __eq__(self, other):
        if not isinstance(other, TropicalCycle):
            return NotImplemented
        return cycle_equal(self, other)

    __hash__ = None

    def translate(self, v) -> "TropicalCycle":
        v = qvec(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("translation vector has the wrong length")
        facets = sorted(((P.translate(v), w) for P, w in self.facets),
                        key=lambda c: c[0].sort_key())
        return TropicalCycle(self.ambient_dim, self.dim, facets, _canonical=True)


def canonicalize(cells: list[tuple[Polyhedron, int]]) -> list[tuple[Polyhedron, int]]:
    cells = [(P, w) for P, w in _merge_identical(cells) if w]
    return coarsen(cells)


def add(X: TropicalCycle, Y: TropicalCycle) -> TropicalCycle:
    if X.ambient_dim != Y.ambient_dim:
        raise DimensionMismatch("cycles live in different ambient spaces")
    if X.is_zero() and X.dim != Y.dim:
        return Y
    if Y.is_zero() and X.dim != Y.dim:
        return X
    if X.dim != Y.dim:
        raise DimensionMismatch("cannot add cycles of different dimensions")
    if X.is_zero():
        return Y
    if Y.is_zero():
        return X
    return TropicalCycle(X.ambient_dim, X.dim, make_complex(list(X.facets) + list(Y.facets)))


def add_all(cycles: Sequence[TropicalCycle], ambient_dim: int, dim: int) -> TropicalCycle:
    cells = [c for X in cycles for c in X.facets]
    return TropicalCycle(ambient_dim, dim, make_complex(cells))


def scale(X: TropicalCycle, m: int) -> TropicalCycle:
    m = int(m)
    if m == 0:
        return TropicalCycle.zero(X.ambient_dim, X.dim)
    return TropicalCycle(X.ambient_dim, X.dim, [(P, m * w) for P, w in X.facets],
                         _canonical=True)


scalar_multiple = scale


def product(X: TropicalCycle, Y: TropicalCycle) -> TropicalCycle:
    """Cartesian product X × Y in Q^(n+m) with multiplied weights."""
    cells = [(P.cartesian_product(Q), w * v) for P, w in X.facets for Q, v in Y.facets]
    return TropicalCycle(X.ambient_dim + Y.ambient_dim, X.dim + Y.dim, cells)


def degree0(X: TropicalCycle) -> int:
    if X.dim != 0:
        raise DimensionMismatch("degree is defined for 0-cycles only")
    return sum(X.weights)


def cycle_equal(X: TropicalCycle, Y: TropicalCycle) -> bool:
    if X.ambient_dim != Y.ambient_dim:
        return False
    if X.is_zero() and Y.is_zero():
        return True
    if X.dim != Y.dim:
        return False
    if X.sort_key() == Y.sort_key():
        return True
    return add(X, scale(Y, -1)).is_zero()


def is_fan(X: TropicalCycle) -> bool:
    return X.is_fan()


def balancing_check(X) -> list:
    """Violations (ridge, defect vector); accepts a cycle or a list of (cell, weight)."""
    if isinstance(X, TropicalCycle):
        return X.balancing_check()
    cells = list(X)
    if not is_complex([P for P, _ in cells]):
        raise NotAComplexError("cells do not meet in common faces")
    return balancing_defects(cells)


def common_refinement(A: TropicalCycle, regions: Sequence[Polyhedron]) -> list:
    """Structure of A refined against a complex of regions covering |A|."""
    return refine_against(A.facets, regions)


def check_balanced(X: TropicalCycle) -> TropicalCycle:
    if CHECK_BALANCING:
        d = X.balancing_check()
        if d:
            raise NotBalancedError(d)
    return X


def support_subspace(X: TropicalCycle) -> Subspace:
    """Span of all facet direction spaces (for fans: the linear span of |X|)."""
    vecs = []
    for P, _ in X.facets:
        vecs.extend(P.direction_space().basis)
        vecs.extend(P.vertices)
    return Subspace.span([v for v in vecs if any(v)], X.ambient_dim)


__all__ = [
    "TropicalCycle", "add", "add_all", "scale", "scalar_multiple", "product", "degree0",
    "cycle_equal", "is_fan", "balancing_check", "common_refinement", "coarsen",
    "make_complex", "refine_against", "is_complex", "primitive_normal",
]
