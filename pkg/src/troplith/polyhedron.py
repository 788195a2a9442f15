"""Exact rational polyhedra with both descriptions.

A :class:`Polyhedron` always carries a canonical generator description
(vertices projected onto the orthogonal complement of the lineality space,
primitive extreme rays, Hermite-reduced lineality basis) and an irredundant
inequality description.  Conversion goes through an integer double
description routine on the homogenized cone.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .arith import (
    IntVec,
    QVec,
    Subspace,
    as_fraction,
    clear_denominators,
    dot,
    nullspace,
    primitive_int,
    qvec,
    rank,
    rref,
    vsub,
)
from .errors import DimensionMismatch, EmptyPolyhedronError

EMPTY = None  # intersect() returns this for an empty result


# ---------------------------------------------------------------------------
# double description on integer cones

def cone_generators(ineqs: Sequence[IntVec], eqs: Sequence[IntVec], m: int):
    """Generators of the cone {y in Q^m : A y >= 0, E y = 0}.

    Returns ``(lineality, rays)``: a basis of the lineality space and the
    extreme rays modulo lineality, all primitive integer vectors.  Also
    returns, for each ray, the bitmask of inequality rows tight on it.
    """
    if eqs:
        lin = [primitive_int(clear_denominators(v)) for v in nullspace(eqs, m)]
    else:
        lin = [tuple(int(i == j) for j in range(m)) for i in range(m)]
    rays: list[tuple[IntVec, int]] = []
    for idx, a in enumerate(ineqs):
        bit = 1 << idx
        vals = [dot(a, l) for l in lin]
        k = next((i for i, c in enumerate(vals) if c), None)
        if k is not None:
            l0 = lin.pop(k)
            c0 = vals.pop(k)
            if c0 < 0:
                l0 = tuple(-x for x in l0)
                c0 = -c0
            new_lin = []
            for l, c in zip(lin, vals):
                if c:
                    l = primitive_int([c0 * x - c * y for x, y in zip(l, l0)])
                new_lin.append(l)
            new_rays = []
            for r, mask in rays:
                c = dot(a, r)
                if c:
                    r = primitive_int([c0 * x - c * y for x, y in zip(r, l0)])
                new_rays.append((r, mask | bit))
            new_rays.append((l0, bit - 1))
            lin, rays = new_lin, new_rays
            continue
        pos, neg, new = [], [], []
        for r, mask in rays:
            c = dot(a, r)
            if c > 0:
                pos.append((r, mask, c))
                new.append((r, mask))
            elif c < 0:
                neg.append((r, mask, c))
            else:
                new.append((r, mask | bit))
        if neg and pos:
            masks = [mask for _, mask in rays]
            for p, mp, cp in pos:
                for q, mq, cq in neg:
                    common = mp & mq
                    adjacent = True
                    for mr in masks:
                        if mr & common == common and mr != mp and mr != mq:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    v = [cp * y - cq * x for x, y in zip(p, q)]
                    new.append((primitive_int(v), common | bit))
        rays = new
    return lin, [r for r, _ in rays], [m for _, m in rays]


# ---------------------------------------------------------------------------
# helpers

def _canonical_lineality(vectors, n) -> tuple[IntVec, ...]:
    vs = [v for v in vectors if any(v)]
    if not vs:
        return ()
    return tuple(Subspace.span(vs, n).integer_basis())


def _projector(lineality: Sequence[IntVec]):
    """Return a function projecting vectors onto the complement of span(lineality)."""
    if not lineality:
        return lambda v: tuple(as_fraction(x) for x in v)
    L = [qvec(l) for l in lineality]
    k = len(L)
    G = [[dot(L[i], L[j]) for j in range(k)] for i in range(k)]
    # Gram inverse via solving against identity columns
    R, _ = rref([G[i] + [int(i == j) for j in range(k)] for i in range(k)], 2 * k)
    Ginv = [row[k:] for row in R]

    def proj(v):
        v = qvec(v)
        c = [dot(l, v) for l in L]
        coef = [dot(row, c) for row in Ginv]
        out = list(v)
        for ci, l in zip(coef, L):
            if ci:
                for t in range(len(out)):
                    out[t] -= ci * l[t]
        return tuple(out)

    return proj


def _canonical_equations(rows: Sequence[Sequence[Fraction]], n: int):
    """Canonical basis of an affine equation system given as rows (a | b)."""
    if not rows:
        return (), []
    R, pivots = rref(rows, n + 1)
    eqs = []
    for r in R:
        a = clear_denominators(r[:n])
        a = primitive_int(a)
        # scale factor mapping r[:n] to a
        p = next(i for i, x in enumerate(r[:n]) if x)
        s = Fraction(a[p]) / r[p]
        eqs.append((a, r[n] * s))
    return tuple(eqs), [(list(r[:n]), r[n], p) for r, p in zip(R, pivots)]


def _reduce_ineq(a: Sequence, b, eq_rows) -> tuple[IntVec, Fraction] | None:
    """Reduce a·x >= b modulo the equations and scale to a primitive integer a."""
    a = [as_fraction(x) for x in a]
    b = as_fraction(b)
    for ea, eb, p in eq_rows:
        c = a[p]
        if c:
            a = [x - c * y for x, y in zip(a, ea)]
            b = b - c * eb
    if not any(a):
        return None
    ai = clear_denominators(a)
    g = 0
    from math import gcd
    for x in ai:
        g = gcd(g, x)
    ai = tuple(x // g for x in ai)
    p = next(i for i, x in enumerate(a) if x)
    s = Fraction(ai[p]) / a[p]
    return ai, b * s


# ---------------------------------------------------------------------------

class Polyhedron:
    """A nonempty rational polyhedron in Q^n.

    Instances are immutable; equality and hashing use the canonical generator
    description.
    """

    __slots__ = ("n", "vertices", "rays", "lineality", "_ineqs", "_eqs",
                 "_key", "_hash", "_dim", "_dirspace", "_faces_cache", "_relint")

    def __init__(self, n, vertices, rays, lineality, ineqs=None, eqs=None):
        # low-level: callers pass canonical data
        self.n = n
        self.vertices = vertices
        self.rays = rays
        self.lineality = lineality
        self._ineqs = ineqs
        self._eqs = eqs
        self._key = (vertices, rays, lineality)
        self._hash = hash((n, self._key))
        self._dim = None
        self._dirspace = None
        self._faces_cache = {}
        self._relint = None

    # -- construction ------------------------------------------------------

    @classmethod
    def from_inequalities(cls, ineqs: Iterable = (), eqs: Iterable = (), n: int | None = None):
        """Build from ``a·x >= b`` rows ``(a, b)`` and ``a·x = b`` rows.

        Raises :class:`EmptyPolyhedronError` if the system is infeasible.
        """
        ineqs = [(qvec(a), as_fraction(b)) for a, b in ineqs]
        eqs = [(qvec(a), as_fraction(b)) for a, b in eqs]
        if n is None:
            if ineqs:
                n = len(ineqs[0][0])
            elif eqs:
                n = len(eqs[0][0])
            else:
                raise ValueError("ambient dimension needed for an unconstrained polyhedron")
        for a, _ in ineqs + eqs:
            if len(a) != n:
                raise DimensionMismatch("constraint length does not match ambient dimension")
        m = n + 1
        hrows = [primitive_int(clear_denominators(list(a) + [-b])) for a, b in ineqs]
        hrows = [r for r in dict.fromkeys(hrows) if any(r)]
        erows = [clear_denominators(list(a) + [-b]) for a, b in eqs]
        erows = [r for r in erows if any(r)]
        tpos = tuple([0] * n + [1])
        all_rows = hrows + [tpos]
        lin, rays, masks = cone_generators(all_rows, erows, m)
        points = [r for r in rays if r[n] > 0]
        if not points:
            raise EmptyPolyhedronError("inequality system is infeasible")
        lin_n = [l[:n] for l in lin]
        lineality = _canonical_lineality(lin_n, n)
        proj = _projector(lineality)
        vertices = sorted({proj([Fraction(x, r[n]) for x in r[:n]]) for r in points})
        rayset = set()
        for r in rays:
            if r[n] == 0:
                pr = proj(r[:n])
                if any(pr):
                    rayset.add(primitive_int(clear_denominators(pr)))
        rays_c = sorted(rayset)

        # irredundant H from tight sets of the homogenized generators
        cone_dim = rank(list(rays) + list(lin)) if (rays or lin) else 0
        eq_rows = [list(a) + [b] for a, b in eqs]
        facet_rows = []
        seen_masks = set()
        for i, row in enumerate(hrows):
            bit = 1 << i
            tight = [r for r, mk in zip(rays, masks) if mk & bit]
            if len(tight) == len(rays):
                # implicit equation (lineality is automatically tight)
                a = row[:n]
                eq_rows.append([Fraction(x) for x in a] + [Fraction(-row[n])])
                continue
            mask = sum(1 << j for j, mk in enumerate(masks) if mk & bit)
            if mask in seen_masks:
                continue
            if rank(tight + lin) == cone_dim - 1:
                seen_masks.add(mask)
                facet_rows.append(row)
        eqs_c, eq_red = _canonical_equations(eq_rows, n)
        ineqs_c = set()
        for row in facet_rows:
            red = _reduce_ineq(row[:n], Fraction(-row[n]), eq_red)
            if red is not None:
                ineqs_c.add(red)
        P = cls(n, tuple(vertices), tuple(rays_c), lineality,
                tuple(sorted(ineqs_c)), eqs_c)
        return P

    @classmethod
    def from_generators(cls, vertices: Iterable, rays: Iterable = (), lineality: Iterable = (),
                        n: int | None = None):
        """Build from points, ray directions and lineality directions.

        At least one vertex is required (polyhedra are nonempty).
        """
        vertices = [qvec(v) for v in vertices]
        if not vertices:
            raise EmptyPolyhedronError("a polyhedron needs at least one point")
        if n is None:
            n = len(vertices[0])
        rays = [primitive_int(clear_denominators(r)) for r in rays if any(r)]
        lin = [primitive_int(clear_denominators(l)) for l in lineality if any(l)]
        for v in vertices + [tuple(r) for r in rays + lin]:
            if len(v) != n:
                raise DimensionMismatch("generator length does not match ambient dimension")
        lineality_c = _canonical_lineality(lin, n)
        proj = _projector(lineality_c)
        verts = sorted({proj(v) for v in vertices})
        rset = set()
        for r in rays:
            pr = proj(r)
            if any(pr):
                rset.add(primitive_int(clear_denominators(pr)))
        rays_p = sorted(rset)
        # dual cone: (a, beta) with a·v + beta >= 0, a·r >= 0, a·l = 0
        m = n + 1
        grows = [clear_denominators(list(v) + [1]) for v in verts]
        grows += [tuple(r) + (0,) for r in rays_p]
        erows = [tuple(l) + (0,) for l in lineality_c]
        dlin, drays, _ = cone_generators(grows, erows, m)
        eq_rows = [[Fraction(x) for x in w[:n]] + [Fraction(-w[n])] for w in dlin]
        eqs_c, eq_red = _canonical_equations(eq_rows, n)
        ineqs_c = set()
        for w in drays:
            red = _reduce_ineq(w[:n], Fraction(-w[n]), eq_red)
            if red is not None:
                ineqs_c.add(red)
        ineqs_c = tuple(sorted(ineqs_c))
        # true lineality: directions annihilated by every constraint
        all_a = [a for a, _ in eqs_c] + [a for a, _ in ineqs_c]
        if all_a:
            true_lin = [clear_denominators(v) for v in nullspace(all_a, n)]
        else:
            true_lin = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        if len(true_lin) != len(lineality_c):
            lineality_c = _canonical_lineality(true_lin, n)
            proj = _projector(lineality_c)
            verts = sorted({proj(v) for v in verts})
            rset = set()
            for r in rays_p:
                pr = proj(r)
                if any(pr):
                    rset.add(primitive_int(clear_denominators(pr)))
            rays_p = sorted(rset)
        # drop redundant generators
        eq_lin = [list(a) for a, _ in eqs_c]
        lin_rows = [list(l) for l in lineality_c]
        keep_v = []
        for v in verts:
            tight = [list(a) for a, b in ineqs_c if dot(a, v) == b]
            if rank(eq_lin + tight + lin_rows) == n:
                keep_v.append(v)
        keep_r = []
        for r in rays_p:
            tight = [list(a) for a, b in ineqs_c if dot(a, r) == 0]
            if rank(eq_lin + tight + lin_rows) == n - 1:
                keep_r.append(r)
        return cls(n, tuple(keep_v), tuple(keep_r), lineality_c, ineqs_c, eqs_c)

    @classmethod
    def whole_space(cls, n: int) -> "Polyhedron":
        lin = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return cls(n, (tuple(Fraction(0) for _ in range(n)),), (), lin, (), ())

    @classmethod
    def point(cls, p) -> "Polyhedron":
        p = qvec(p)
        n = len(p)
        eqs = tuple((tuple(int(i == j) for j in range(n)), p[i]) for i in range(n))
        return cls(n, (p,), (), (), (), eqs)

    # -- descriptions ------------------------------------------------------

    @property
    def inequalities(self) -> tuple[tuple[IntVec, Fraction], ...]:
        return self._ineqs

    @property
    def equations(self) -> tuple[tuple[IntVec, Fraction], ...]:
        return self._eqs

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Polyhedron) and self.n == other.n and self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.vertices, self.rays, self.lineality)

    def __repr__(self):
        def f(v):
            return "(" + ",".join(str(x) for x in v) + ")"
        parts = [f"V={[f(v) for v in self.vertices]}"]
        if self.rays:
            parts.append(f"R={[f(r) for r in self.rays]}")
        if self.lineality:
            parts.append(f"L={[f(l) for l in self.lineality]}")
        return f"Polyhedron({', '.join(parts)})"

    # -- basic invariants --------------------------------------------------

    @property
    def dim(self) -> int:
        if self._dim is None:
            self._dim = self.direction_space().dim
        return self._dim

    def direction_space(self) -> Subspace:
        """Linear span of P − P (the space V_P)."""
        if self._dirspace is None:
            v0 = self.vertices[0]
            vecs = [vsub(v, v0) for v in self.vertices[1:]]
            vecs += list(self.rays) + list(self.lineality)
            self._dirspace = Subspace.span([v for v in vecs if any(v)], self.n)
        return self._dirspace

    def affine_span(self) -> tuple[QVec, Subspace]:
        return self.vertices[0], self.direction_space()

    def lineality_space(self) -> Subspace:
        return Subspace.span(self.lineality, self.n)

    def is_bounded(self) -> bool:
        return not self.rays and not self.lineality

    def is_cone(self) -> bool:
        """True iff P is a cone with apex at the origin."""
        return len(self.vertices) == 1 and not any(self.vertices[0])

    def contains(self, x) -> bool:
        x = qvec(x)
        if len(x) != self.n:
            raise DimensionMismatch("point dimension mismatch")
        return all(dot(a, x) == b for a, b in self._eqs) and all(
            dot(a, x) >= b for a, b in self._ineqs)

    def contains_polyhedron(self, Q: "Polyhedron") -> bool:
        for a, b in self._eqs:
            if any(dot(a, v) != b for v in Q.vertices):
                return False
            if any(dot(a, r) for r in Q.rays) or any(dot(a, l) for l in Q.lineality):
                return False
        for a, b in self._ineqs:
            if any(dot(a, v) < b for v in Q.vertices):
                return False
            if any(dot(a, r) < 0 for r in Q.rays) or any(dot(a, l) for l in Q.lineality):
                return False
        return True

    def relative_interior_point(self) -> QVec:
        """Average of the vertices plus the sum of the primitive rays."""
        if self._relint is None:
            k = len(self.vertices)
            p = [sum(v[i] for v in self.vertices) / k for i in range(self.n)]
            for r in self.rays:
                for i in range(self.n):
                    p[i] += r[i]
            self._relint = tuple(p)
        return self._relint

    def value_range(self, a: Sequence) -> tuple:
        """(min, max) of the linear functional a over P; None marks unbounded."""
        if any(dot(a, l) for l in self.lineality):
            return None, None
        vals = [dot(a, v) for v in self.vertices]
        lo, hi = min(vals), max(vals)
        for r in self.rays:
            c = dot(a, r)
            if c > 0:
                hi = None
            elif c < 0:
                lo = None
        return lo, hi

    def side_of(self, a: Sequence, b) -> int:
        """Position relative to the hyperplane a·x = b.

        Returns 1 (P ⊆ {a·x >= b}), -1 (P ⊆ {a·x <= b}), 0 (P ⊆ hyperplane)
        or 2 (the hyperplane meets the relative interior of P transversally).
        """
        lo, hi = self.value_range(a)
        if lo is not None and hi is not None and lo == hi == b:
            return 0
        if lo is not None and lo >= b:
            return 1
        if hi is not None and hi <= b:
            return -1
        return 2

    # -- operations --------------------------------------------------------

    def all_constraints(self):
        return list(self._ineqs), list(self._eqs)

    def intersect(self, other: "Polyhedron"):
        """Intersection, or ``EMPTY`` (None) if disjoint."""
        if self.n != other.n:
            raise DimensionMismatch("ambient dimensions differ")
        if self.contains_polyhedron(other):
            return other
        if other.contains_polyhedron(self):
            return self
        try:
            return Polyhedron.from_inequalities(
                list(self._ineqs) + list(other._ineqs),
                list(self._eqs) + list(other._eqs), n=self.n)
        except EmptyPolyhedronError:
            return EMPTY

    def intersect_halfspace(self, a, b, sense: int = 1):
        """P ∩ {a·x >= b} (sense=1), {a·x <= b} (sense=-1) or {a·x = b} (sense=0)."""
        a = qvec(a)
        b = as_fraction(b)
        ineqs = list(self._ineqs)
        eqs = list(self._eqs)
        if sense == 0:
            eqs.append((a, b))
        elif sense > 0:
            ineqs.append((a, b))
        else:
            ineqs.append((tuple(-x for x in a), -b))
        try:
            return Polyhedron.from_inequalities(ineqs, eqs, n=self.n)
        except EmptyPolyhedronError:
            return EMPTY

    def translate(self, v) -> "Polyhedron":
        v = qvec(v)
        if not any(v):
            return self
        proj = _projector(self.lineality)
        pv = proj(v)
        verts = tuple(sorted(tuple(x + y for x, y in zip(u, pv)) for u in self.vertices))
        ineqs = tuple(sorted((a, b + dot(a, v)) for a, b in self._ineqs))
        eqs = tuple((a, b + dot(a, v)) for a, b in self._eqs)
        return Polyhedron(self.n, verts, self.rays, self.lineality, ineqs, eqs)

    def recession_cone(self) -> "Polyhedron":
        zero = tuple(Fraction(0) for _ in range(self.n))
        if not self.rays and not self.lineality:
            return Polyhedron.point(zero)
        C = Polyhedron(self.n, (zero,), self.rays, self.lineality, None, None)
        ineqs = [(a, Fraction(0)) for a, _ in self._ineqs]
        eqs = [(a, Fraction(0)) for a, _ in self._eqs]
        return _complete_h(C, ineqs, eqs)

    def cartesian_product(self, other: "Polyhedron") -> "Polyhedron":
        n, m = self.n, other.n
        z_n = (0,) * n
        z_m = (0,) * m
        verts = tuple(sorted(u + v for u in self.vertices for v in other.vertices))
        rays = tuple(sorted([r + z_m for r in self.rays] + [z_n + r for r in other.rays]))
        lin = _canonical_lineality([l + z_m for l in self.lineality] +
                                   [z_n + l for l in other.lineality], n + m)
        ineqs = tuple(sorted([(a + z_m, b) for a, b in self._ineqs] +
                             [(z_n + a, b) for a, b in other._ineqs]))
        eq_rows = [list(a + z_m) + [b] for a, b in self._eqs] + \
                  [list(z_n + a) + [b] for a, b in other._eqs]
        eqs, _ = _canonical_equations(eq_rows, n + m)
        return Polyhedron(n + m, verts, rays, lin, ineqs, eqs)

    def linear_image(self, A: Sequence[Sequence[int]], shift=None) -> "Polyhedron":
        """Image under x -> A x + shift."""
        m = len(A)
        shift = qvec(shift) if shift is not None else tuple(Fraction(0) for _ in range(m))

        def ap(v):
            return tuple(dot(row, v) for row in A)

        verts = [tuple(x + s for x, s in zip(ap(v), shift)) for v in self.vertices]
        rays = [ap(r) for r in self.rays]
        lin = [ap(l) for l in self.lineality]
        return Polyhedron.from_generators(verts, rays, lin, n=m)

    def preimage(self, A: Sequence[Sequence[int]], shift=None):
        """{x : A x + shift ∈ P} as a polyhedron, or EMPTY."""
        ncols = len(A[0]) if A else 0
        shift = qvec(shift) if shift is not None else tuple(Fraction(0) for _ in range(self.n))
        At = list(zip(*A))

        def pull(a, b):
            return tuple(dot(a, col) for col in At), b - dot(a, shift)

        try:
            return Polyhedron.from_inequalities([pull(a, b) for a, b in self._ineqs],
                                                [pull(a, b) for a, b in self._eqs], n=ncols)
        except EmptyPolyhedronError:
            return EMPTY

    # -- faces -------------------------------------------------------------

    def face_from_constraint(self, a, b) -> "Polyhedron":
        """The face cut out by a valid inequality a·x >= b made tight."""
        verts = tuple(v for v in self.vertices if dot(a, v) == b)
        if not verts:
            raise EmptyPolyhedronError("inequality is not tight anywhere on P")
        rays = tuple(r for r in self.rays if dot(a, r) == 0)
        return _lazy_face(self, verts, rays, tuple(a), as_fraction(b))

    def facet_pairs(self) -> list[tuple[tuple[IntVec, Fraction], "Polyhedron"]]:
        """Facets together with the inequality that cuts each one out."""
        if 'facets' not in self._faces_cache:
            out = []
            for a, b in self._ineqs:
                verts = tuple(v for v in self.vertices if dot(a, v) == b)
                rays = tuple(r for r in self.rays if dot(a, r) == 0)
                out.append(((a, b), _lazy_face(self, verts, rays, a, b)))
            self._faces_cache['facets'] = out
        return self._faces_cache['facets']

    def facets(self) -> list["Polyhedron"]:
        """Faces of codimension one."""
        return [F for _, F in self.facet_pairs()]

    def bbox(self) -> tuple[tuple, ...]:
        """Per-coordinate (lo, hi) bounds; None marks an unbounded side."""
        if 'bbox' not in self._faces_cache:
            out = []
            for i in range(self.n):
                e = [0] * self.n
                e[i] = 1
                out.append(self.value_range(e))
            self._faces_cache['bbox'] = tuple(out)
        return self._faces_cache['bbox']

    def faces(self, k: int) -> list["Polyhedron"]:
        """All k-dimensional faces; ``faces(dim)`` is ``[self]``."""
        d = self.dim
        if k > d or k < 0:
            return []
        if k == d:
            return [self]
        if k in self._faces_cache:
            return self._faces_cache[k]
        layer = {self}
        for _ in range(d - k):
            nxt = {}
            for F in layer:
                for G in F.facets():
                    nxt.setdefault(G.key, G)
            layer = set(nxt.values())
        out = sorted(layer, key=Polyhedron.sort_key)
        out = [F for F in out if F.dim == k]
        self._faces_cache[k] = out
        return out

    def minimal_face_containing(self, x) -> "Polyhedron":
        """Smallest face of P containing the point x (x must lie in P)."""
        x = qvec(x)
        tight = [(a, b) for a, b in self._ineqs if dot(a, x) == b]
        if not tight:
            return self
        verts = tuple(v for v in self.vertices if all(dot(a, v) == b for a, b in tight))
        rays = tuple(r for r in self.rays if all(dot(a, r) == 0 for a, _ in tight))
        F = Polyhedron(self.n, verts, rays, self.lineality, None, None)
        extra_eqs = list(self._eqs) + tight
        ineqs = [(a, b) for a, b in self._ineqs if (a, b) not in tight]
        return _complete_h(F, ineqs, extra_eqs)


def _with_h(P: Polyhedron, ineqs, eqs) -> Polyhedron:
    P._ineqs = tuple(ineqs)
    P._eqs = tuple(eqs)
    return P


def _complete_h(F: Polyhedron, ineqs, eqs) -> Polyhedron:
    """Attach an irredundant H-description to a face given by its generators.

    ``ineqs``/``eqs`` is a valid (possibly redundant) description of F.
    """
    n = F.n
    eq_rows = [list(a) + [b] for a, b in eqs]
    # equations of the affine hull
    v0 = F.vertices[0]
    dirs = [vsub(v, v0) for v in F.vertices[1:]] + list(F.rays) + list(F.lineality)
    ann = nullspace([d for d in dirs if any(d)], n) if any(any(d) for d in dirs) else [
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    hull_rows = [list(a) + [dot(a, v0)] for a in ann]
    eqs_c, eq_red = _canonical_equations(hull_rows, n)
    dim_target = F.dim
    facets = set()
    seen = set()
    for a, b in ineqs:
        tv = frozenset(i for i, v in enumerate(F.vertices) if dot(a, v) == b)
        tr = frozenset(i for i, r in enumerate(F.rays) if dot(a, r) == 0)
        if len(tv) == len(F.vertices) and len(tr) == len(F.rays):
            continue
        if not tv or (tv, tr) in seen:
            continue
        # facet test: tight generators span an affine space of dimension dim-1
        v1 = F.vertices[min(tv)]
        vecs = [vsub(F.vertices[i], v1) for i in tv] + [F.rays[i] for i in tr] + list(F.lineality)
        vecs = [v for v in vecs if any(v)]
        if (rank(vecs) if vecs else 0) != dim_target - 1:
            continue
        seen.add((tv, tr))
        red = _reduce_ineq(a, b, eq_red)
        if red is not None:
            facets.add(red)
    F._ineqs = tuple(sorted(facets))
    F._eqs = eqs_c
    return F


def _lazy_face(P: Polyhedron, verts, rays, a, b) -> Polyhedron:
    F = Polyhedron(P.n, verts, rays, P.lineality, None, None)
    ineqs = [(c, d) for c, d in P._ineqs if (c, d) != (a, b)]
    eqs = list(P._eqs) + [(a, b)]
    return _complete_h(F, ineqs, eqs)


def bboxes_overlap(P: Polyhedron, Q: Polyhedron) -> bool:
    for (lo1, hi1), (lo2, hi2) in zip(P.bbox(), Q.bbox()):
        if lo1 is not None and hi2 is not None and hi2 < lo1:
            return False
        if lo2 is not None and hi1 is not None and hi1 < lo2:
            return False
    return True


def separated(P: Polyhedron, Q: Polyhedron) -> bool:
    """Cheap sufficient test for disjointness: a constraint of one misses the other."""
    for A, B in ((P, Q), (Q, P)):
        for a, b in A.inequalities:
            lo, hi = B.value_range(a)
            if hi is not None and hi < b:
                return True
        for a, b in A.equations:
            lo, hi = B.value_range(a)
            if (hi is not None and hi < b) or (lo is not None and lo > b):
                return True
    return False


def is_face_of(F: Polyhedron, P: Polyhedron) -> bool:
    """True iff F (a subset of P) is a face of P."""
    if F is P or F == P:
        return True
    x = F.relative_interior_point()
    tight = [(a, b) for a, b in P.inequalities if dot(a, x) == b]
    if not tight:
        return False
    verts = tuple(v for v in P.vertices if all(dot(a, v) == b for a, b in tight))
    rays = tuple(r for r in P.rays if all(dot(a, r) == 0 for a, _ in tight))
    return (verts, rays, P.lineality) == F.key
