"""Decomposition into translated fan cycles and equivalence tests on Q^n."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import INFINITE, Subspace, qvec, vsub
from .cycle import TropicalCycle, add, add_all, cycle_equal, degree0, product, scale
from .divisor import divisor, fiber
from .errors import InternalError, LoopGuardExceeded, OracleIncomplete
from .intersection import find_refutation, stable_intersect
from .local import UNKNOWN, cell_profiles, star
from .morphism import IntegerAffineMap, pushforward
from .plfunction import clamp_function, is_bounded, max_function
from .polyhedron import Polyhedron
from .recession import recession_cycle


@dataclass(frozen=True)
class AffineSubspace:
    """point + span(direction); the point is reduced to be orthogonal to the span."""

    point: tuple
    direction: Subspace

    @classmethod
    def of_cell(cls, P: Polyhedron) -> "AffineSubspace":
        V = P.direction_space()
        x = qvec(P.vertices[0])
        pr = V.project(x)
        return cls(tuple(a - b for a, b in zip(x, pr)), V)

    def contains(self, x) -> bool:
        return self.direction.contains_vector(vsub(qvec(x), self.point))

    def sort_key(self):
        return (self.direction.dim, self.point, self.direction.basis)


@dataclass
class DecompositionWitness:
    summands: list = field(default_factory=list)  # (fan cycle, point)
    target: TropicalCycle | None = None

    def resum(self) -> TropicalCycle:
        X = self.target
        parts = [F.translate(p) for F, p in self.summands]
        return add_all(parts, X.ambient_dim, X.dim) if parts else TropicalCycle.zero(
            X.ambient_dim, X.dim)

    def verify(self) -> bool:
        return cycle_equal(self.resum(), self.target)


def minimal_splitting_locus(X: TropicalCycle, profiles=None):
    """(s, [W_1, ..., W_l], cells): minimal splitting dimension and its locus.

    ``cells`` maps each W to the s-dimensional cells of X lying in it with s(p) = s.
    """
    if X.is_zero():
        return INFINITE, [], {}
    if profiles is None:
        profiles = cell_profiles(X)
    for F, prof in profiles:
        if prof.s == UNKNOWN:
            raise OracleIncomplete("SPLDIM_UNKNOWN",
                                   f"splitting dimension undecided at {list(map(str, prof.point))}")
    s = min(prof.s for _, prof in profiles)
    locus: dict = {}
    for F, prof in profiles:
        if prof.s == s and F.dim == s:
            W = AffineSubspace.of_cell(F)
            locus.setdefault(W, []).append(F)
    for F, prof in profiles:
        if prof.s == s and F.dim < s and not any(W.contains(F.relative_interior_point())
                                                   for W in locus):
            raise InternalError("splitting locus is not a union of affine subspaces")
    Ws = sorted(locus, key=AffineSubspace.sort_key)
    return s, Ws, locus


def subtract_star_step(X: TropicalCycle, locus=None):
    """Subtract the translated star at a point of the first locus subspace.

    Returns (X̃, (fan, point)).  Verifies that p ∉ |X̃| and that the locus at
    level s shrank.
    """
    if locus is None:
        locus = minimal_splitting_locus(X)
    s, Ws, cells = locus
    W = Ws[0]
    cell = sorted(cells[W], key=Polyhedron.sort_key)[0]
    p = cell.relative_interior_point()
    F = star(X, p)
    Xt = add(X, scale(F.translate(p), -1))
    if Xt.contains_point(p):
        raise InternalError("subtracted point still lies on the remainder")
    return Xt, (F, p), (s, W)


def _check_progress(prev, Xt: TropicalCycle, profiles):
    s, W = prev
    if Xt.is_zero():
        return
    s2 = min(pr.s for _, pr in profiles)
    if s2 > s:
        return
    if s2 < s:
        raise InternalError("splitting dimension dropped after a subtraction step")
    for F, pr in profiles:
        if pr.s == s and F.dim == s and AffineSubspace.of_cell(F) == W:
            raise InternalError("locus subspace survived its subtraction step")


def decompose(X: TropicalCycle) -> DecompositionWitness:
    """X = Σ F_i + p_i with fan cycles F_i; the witness is re-verified."""
    n, d = X.ambient_dim, X.dim
    ncells = sum(sum(len(P.faces(k)) for k in range(P.dim + 1)) for P, _ in X.facets)
    guard = max(1, ncells) * (d + 1) ** 2
    witness = DecompositionWitness([], X)
    cur = X
    profiles = cell_profiles(cur) if not cur.is_zero() else []
    steps = 0
    while not cur.is_zero():
        steps += 1
        if steps > guard:
            raise LoopGuardExceeded(f"decomposition exceeded {guard} steps")
        locus = minimal_splitting_locus(cur, profiles)
        cur, (F, p), prev = subtract_star_step(cur, locus)
        witness.summands.append((F, p))
        profiles = cell_profiles(cur) if not cur.is_zero() else []
        if not any(pr.s == UNKNOWN for _, pr in profiles):
            _check_progress(prev, cur, profiles)
    if not witness.verify():
        raise InternalError("decomposition witness does not re-sum to the input")
    return witness


# ---------------------------------------------------------------------------

@dataclass
class EquivalenceReport:
    verdict: str
    rec_x: TropicalCycle
    rec_y: TropicalCycle
    test_cycle: TropicalCycle | None = None
    degrees: tuple | None = None


def recession_equiv(X: TropicalCycle, Y: TropicalCycle, trials: int = 20) -> EquivalenceReport:
    """Decide bounded rational equivalence on Q^n by comparing recession fans."""
    rx, ry = recession_cycle(X), recession_cycle(Y)
    if cycle_equal(rx, ry):
        return EquivalenceReport("EQUIVALENT", rx, ry)
    rep = EquivalenceReport("NOT_EQUIVALENT", rx, ry)
    if X.dim == Y.dim:
        ref = find_refutation(X, Y, trials)
        if ref is not None:
            rep.test_cycle, a, b = ref
            rep.degrees = (a, b)
    return rep


@dataclass
class BoundedEquivWitness:
    morphism: IntegerAffineMap
    function: object
    source: TropicalCycle
    claim: TropicalCycle

    def bounded(self) -> bool:
        return is_bounded(self.function.restrict(self.source))

    def verify(self) -> bool:
        return self.bounded() and cycle_equal(
            pushforward(self.morphism, divisor(self.function, self.source)), self.claim)


def translation_witness(X: TropicalCycle, v) -> list[BoundedEquivWitness]:
    """Witnesses chaining X to X + v, one per nonzero coordinate of v."""
    v = qvec(v)
    n = X.ambient_dim
    out = []
    cur = X
    Y = product(X, TropicalCycle.whole_space(1))
    for i, mu in enumerate(v):
        if mu == 0:
            continue
        A = [[int(r == c) for c in range(n)] + [int(r == i)] for r in range(n)]
        f = IntegerAffineMap.linear(A)
        phi = clamp_function(n + 1, n, mu)
        e = [Fraction(0)] * n
        e[i] = mu
        claim = add(cur, scale(cur.translate(e), -1))
        w = BoundedEquivWitness(f, phi, product(cur, TropicalCycle.whole_space(1)), claim)
        if not w.verify():
            raise InternalError("translation witness failed verification")
        out.append(w)
        cur = cur.translate(e)
    del Y
    return out


def family_fibers_check(F: TropicalCycle, p, q) -> bool:
    """π_*((max{t,p} − max{t,q}) · F) = F_p − F_q."""
    m = F.ambient_dim
    n = m - 1
    phi = max_function(m, n, p) - max_function(m, n, q)
    pi = IntegerAffineMap.linear([[int(r == c) for c in range(m)] for r in range(n)])
    lhs = pushforward(pi, divisor(phi, F))
    rhs = add(fiber(F, p), scale(fiber(F, q), -1))
    return cycle_equal(lhs, rhs)


def bezout_check(X: TropicalCycle, Y: TropicalCycle) -> bool:
    """Rec(X · Y) = Rec(X) · Rec(Y)."""
    lhs = recession_cycle(stable_intersect(X, Y))
    rhs = stable_intersect(recession_cycle(X), recession_cycle(Y))
    return cycle_equal(lhs, rhs)


__all__ = ["AffineSubspace", "DecompositionWitness", "minimal_splitting_locus",
           "subtract_star_step", "decompose", "EquivalenceReport", "recession_equiv",
           "BoundedEquivWitness", "translation_witness", "family_fibers_check", "bezout_check",
           "degree0"]
