"""Exact integer and rational linear algebra.

Everything here works on plain Python ``int`` and :class:`fractions.Fraction`;
matrices are lists (or tuples) of rows.  Nothing in the library uses floating
point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch, DomainError

INFINITE = math.inf

IntVec = tuple[int, ...]
QVec = tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# scalars

def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected on purpose.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def format_fraction(q: Fraction) -> str:
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def qvec(v: Iterable) -> QVec:
    return tuple(as_fraction(x) for x in v)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b) if x and y)


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return g


def primitive_int(v: Sequence[int]) -> IntVec:
    """Divide an integer vector by the gcd of its entries (sign kept)."""
    g = content(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def clear_denominators(v: Sequence) -> IntVec:
    """Scale a rational vector by the lcm of denominators (positive factor)."""
    v = [x if isinstance(x, (int, Fraction)) else as_fraction(x) for x in v]
    den = 1
    for x in v:
        d = x.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    return tuple(int(x.numerator) * (den // x.denominator) for x in v)


def primitive_vector(v: Sequence) -> IntVec:
    """Primitive integer generator of the ray spanned by a nonzero rational v."""
    w = clear_denominators(v)
    if not any(w):
        raise DomainError("primitive_vector of the zero vector")
    return primitive_int(w)


# ---------------------------------------------------------------------------
# rational elimination

def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q.

    Returns ``(R, pivots)`` with the zero rows removed.
    """
    A = [[as_fraction(x) for x in r] for r in rows]
    if not A:
        return [], []
    n = len(A[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        if piv != 1:
            A[r] = [x / piv if x else x for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y if y else x for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q; uses fraction-free elimination on integer input."""
    A = [list(r) for r in rows if any(r)]
    if not A:
        return 0
    if all(isinstance(x, int) for r in A for x in r):
        return _int_rank(A)
    return len(rref(A)[0])


def _int_rank(A: list[list[int]]) -> int:
    n = len(A[0])
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pr = A[r]
        a = pr[c]
        for i in range(r + 1, len(A)):
            b = A[i][c]
            if b:
                row = [a * x - b * y for x, y in zip(A[i], pr)]
                g = content(row)
                A[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(A):
            break
    return r


def nullspace(rows: Sequence[Sequence], n: int) -> list[QVec]:
    """Basis of {x : rows @ x = 0} over Q (one vector per free column)."""
    R, pivots = rref(rows, n) if rows else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> QVec | None:
    """One rational solution of rows @ x = rhs, or None if inconsistent."""
    if not rows:
        return None
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return tuple(x)


def transpose(M):
    return [list(c) for c in zip(*M)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def det(M) -> Fraction:
    """Determinant over Q by elimination."""
    A = [[as_fraction(x) for x in r] for r in M]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


# ---------------------------------------------------------------------------
# integer normal forms

def _egcd(a: int, b: int):
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hermite_form(M: Sequence[Sequence[int]]):
    """Row-style Hermite normal form with transform.

    Returns ``(H, U)`` with ``H = U @ M``, ``U`` unimodular, ``H`` in row
    echelon form with positive pivots, entries above each pivot reduced into
    ``[0, pivot)`` and zero rows at the bottom.
    """
    A = [list(map(int, r)) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = A[i][c]
            if b == 0:
                continue
            a = A[r][c]
            g, x, y = _egcd(a, b)
            ag, bg = a // g, b // g
            Ar, Ai = A[r], A[i]
            A[r] = [x * p + y * q for p, q in zip(Ar, Ai)]
            A[i] = [ag * q - bg * p for p, q in zip(Ar, Ai)]
            Ur, Ui = U[r], U[i]
            U[r] = [x * p + y * q for p, q in zip(Ur, Ui)]
            U[i] = [ag * q - bg * p for p, q in zip(Ur, Ui)]
        piv = A[r][c]
        if piv == 0:
            continue
        if piv < 0:
            A[r] = [-v for v in A[r]]
            U[r] = [-v for v in U[r]]
            piv = -piv
        for i in range(r):
            q = A[i][c] // piv
            if q:
                A[i] = [p - q * s for p, s in zip(A[i], A[r])]
                U[i] = [p - q * s for p, s in zip(U[i], U[r])]
        r += 1
    return A, U


def smith_diagonal(M: Sequence[Sequence[int]]) -> list[int]:
    """Elementary divisors d1 | d2 | ... of an integer matrix.

    The list has ``min(rows, cols)`` entries; trailing zeros mark rank
    deficiency.
    """
    A = [list(map(int, r)) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero entry in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if not done:
                # move the smallest remaining nonzero of row/col t to the pivot
                cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cands)
                if j == t:
                    A[t], A[i] = A[i], A[t]
                else:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    diag += [0] * (min(m, n) - len(diag))
    # enforce the divisibility chain
    k = len(diag)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = diag[i], diag[j]
            if a == 0 and b != 0:
                diag[i], diag[j] = b, 0
                continue
            if a and b:
                g = math.gcd(a, b)
                diag[i], diag[j] = g, a * b // g
    return diag


def integer_kernel(M: Sequence[Sequence], n: int) -> list[IntVec]:
    """Hermite-reduced basis of the lattice {x in Z^n : M x = 0}.

    Rational rows are scaled to integers first.  The kernel of an integer
    matrix is saturated, so the result is a basis of V ∩ Z^n for V = ker M.
    """
    rows = [clear_denominators(r) for r in M if any(r)]
    if not rows:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    H, U = hermite_form(transpose(rows))
    ker = [tuple(U[i]) for i in range(n) if not any(H[i])]
    return hermite_basis(ker)


def hermite_basis(vectors: Iterable[Sequence[int]]) -> list[IntVec]:
    """Canonical (HNF) basis of the lattice generated by integer vectors."""
    vs = [tuple(map(int, v)) for v in vectors if any(v)]
    if not vs:
        return []
    H, _ = hermite_form(vs)
    return [tuple(r) for r in H if any(r)]


# ---------------------------------------------------------------------------
# subspaces and lattices

@dataclass(frozen=True)
class Subspace:
    """A rational linear subspace, stored by its reduced echelon basis."""

    ambient_dim: int
    basis: tuple[QVec, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vs = [qvec(v) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise DimensionMismatch("vector length does not match ambient dimension")
        R, _ = rref(vs, ambient_dim) if vs else ([], [])
        return cls(ambient_dim, tuple(tuple(r) for r in R))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains_vector(self, v: Sequence) -> bool:
        if not any(v):
            return True
        return rank(list(self.basis) + [qvec(v)]) == self.dim

    def complement(self) -> "Subspace":
        """Orthogonal complement with respect to the standard pairing."""
        return Subspace.span(nullspace(self.basis, self.ambient_dim), self.ambient_dim)

    def integer_basis(self) -> list[IntVec]:
        return list(_saturated_basis(self))

    def lattice(self) -> "Lattice":
        return Lattice(self.ambient_dim, _saturated_basis(self))

    def project(self, v: Sequence) -> QVec:
        """Orthogonal projection of v onto this subspace."""
        return _orth_project(self.basis, qvec(v))

    def __le__(self, other: "Subspace") -> bool:
        return subspace_contains(other, self)


def _check_dims(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_dims(a, b)
    return Subspace.span(list(a.basis) + list(b.basis), a.ambient_dim)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_dims(a, b)
    n = a.ambient_dim
    # x in a ∩ b  <=>  x is annihilated by both orthogonal complements
    eqs = list(a.complement().basis) + list(b.complement().basis)
    return Subspace.span(nullspace(eqs, n) if eqs else Subspace.full(n).basis, n)


def subspace_contains(a: Subspace, b: Subspace) -> bool:
    """True iff b ⊆ a."""
    _check_dims(a, b)
    return all(a.contains_vector(v) for v in b.basis)


def _orth_project(basis: Sequence[QVec], v: QVec) -> QVec:
    if not basis:
        return tuple(Fraction(0) for _ in v)
    k = len(basis)
    G = [[dot(basis[i], basis[j]) for j in range(k)] for i in range(k)]
    c = solve(G, [dot(b, v) for b in basis])
    out = [Fraction(0)] * len(v)
    for ci, b in zip(c, basis):
        if ci:
            for t in range(len(v)):
                out[t] += ci * b[t]
    return tuple(out)


@lru_cache(maxsize=4096)
def _saturated_basis(V: Subspace) -> tuple[IntVec, ...]:
    n = V.ambient_dim
    if V.dim == 0:
        return ()
    if V.dim == n:
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    ann = integer_kernel(V.basis, n)
    return tuple(integer_kernel(ann, n))


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^n given by its Hermite-reduced basis."""

    ambient_dim: int
    basis: tuple[IntVec, ...]

    @classmethod
    def generated_by(cls, vectors: Iterable[Sequence[int]], ambient_dim: int) -> "Lattice":
        return cls(ambient_dim, tuple(hermite_basis(vectors)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def span(self) -> Subspace:
        return Subspace.span(self.basis, self.ambient_dim)


def lattice_index(sub: Lattice, sup: Lattice):
    """Order of sup/sub, or INFINITE when rank(sub) < rank(sup).

    Requires span(sub) ⊆ span(sup).
    """
    if sub.ambient_dim != sup.ambient_dim:
        raise DimensionMismatch("lattices live in different ambient spaces")
    S = sup.span()
    if not all(S.contains_vector(v) for v in sub.basis):
        raise DomainError("sub-lattice is not contained in the span of the super-lattice")
    if sub.rank < sup.rank:
        return INFINITE
    if sup.rank == 0:
        return 1
    return _index_in_saturation(sub.basis) // _index_in_saturation(sup.basis)


def _index_in_saturation(rows) -> int:
    """[ (span ∩ Z^n) : lattice ] = product of nonzero elementary divisors."""
    out = 1
    for d in smith_diagonal(rows):
        if d:
            out *= d
    return out


def generated_index(vectors: Sequence[Sequence[int]]) -> int:
    """Index of the lattice generated by ``vectors`` in its saturation."""
    vs = [v for v in vectors if any(v)]
    if not vs:
        return 1
    return _index_in_saturation(vs)


@lru_cache(maxsize=4096)
def _quotient_data(V: Subspace):
    n = V.ambient_dim
    Q = integer_kernel(V.basis, n) if V.dim else [
        tuple(int(i == j) for j in range(n)) for i in range(n)]
    k = len(Q)
    H, U = hermite_form(transpose(Q))
    for i in range(k):
        for j in range(k):
            if H[i][j] != int(i == j):
                raise ArithmeticError("annihilator lattice is not primitive")
    lifts = [tuple(U[i]) for i in range(k)]
    return tuple(Q), tuple(lifts), _saturated_basis(V)


def quotient_coordinates(v: Sequence, V: Subspace) -> QVec:
    """Coordinates of the class of v in R^n / V w.r.t. a basis of Z^n/(V∩Z^n)."""
    Q, _, _ = _quotient_data(V)
    vq = qvec(v)
    return tuple(dot(q, vq) for q in Q)


def quotient_primitive(v: Sequence, V: Subspace) -> IntVec:
    """Canonical integer lift of the primitive generator of the class of v.

    The returned vector lies in V + Rv, its class in Z^n/(V∩Z^n) is primitive
    and positively proportional to the class of v, and it is reduced against
    the Hermite basis of V∩Z^n.
    """
    if len(v) != V.ambient_dim:
        raise DimensionMismatch("vector and subspace live in different spaces")
    Q, lifts, lat = _quotient_data(V)
    vq = qvec(v)
    coords = [dot(q, vq) for q in Q]
    if not any(coords):
        raise DomainError("vector lies in the subspace; its class is zero")
    w = primitive_vector(coords)
    n = V.ambient_dim
    x = [0] * n
    for wi, u in zip(w, lifts):
        if wi:
            for t in range(n):
                x[t] += wi * u[t]
    return reduce_mod_lattice(x, lat)


def reduce_mod_lattice(x: Sequence[int], hnf_basis: Sequence[IntVec]) -> IntVec:
    """Canonical representative of x modulo a lattice in Hermite form."""
    x = list(x)
    for h in hnf_basis:
        p = next(i for i, a in enumerate(h) if a)
        q = x[p] // h[p]
        if q:
            x = [a - q * b for a, b in zip(x, h)]
    return tuple(x)
