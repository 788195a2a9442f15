"""Acceptance criteria 1-15, all checked exactly.

Run with pytest (a summary line per criterion is printed at the end) or as
a script: ``python3 tests/test_acceptance.py``.
"""

import random
import sys
from fractions import Fraction

import pytest

from troplith import (
    IntegerAffineMap,
    OracleIncomplete,
    PLFunction,
    RationalFunctionExpr,
    TropicalCycle,
    TropicalPolynomial,
    UNKNOWN,
    add,
    bezout_check,
    cycle_equal,
    decompose,
    degree0,
    degree_pairing,
    displacement_oracle,
    divisor,
    family_fibers_check,
    fiber,
    graph_cycle,
    invert_divisor,
    numerical_equiv_sample,
    profile,
    projection_formula_check,
    pushforward,
    recession_cycle,
    recession_equiv,
    scale,
    simplicial_completion,
    spldim,
    stable_intersect,
    star,
    subtract_star_step,
    translation_witness,
)
from troplith.cycle import add_all, product
from troplith.corpus import (
    marked_curve,
    random_curve,
    random_fan_curve,
    random_polynomial,
    random_surface,
    random_vector,
    staircase_curve,
    tropical_line,
)

try:
    from conftest import criterion
except ImportError:  # pragma: no cover
    from tests.conftest import criterion


def whole(n):
    return TropicalCycle.whole_space(n)


def hypersurface(rng, n, nterms=3):
    while True:
        D = divisor(random_polynomial(rng, n, nterms, 1), whole(n))
        if not D.is_zero():
            return D


def random_matrix(rng, m, n, lo=-2, hi=2):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def some_vertex(X):
    for P, _ in X.facets:
        if P.vertices:
            return P.vertices[0]
    return tuple(Fraction(0) for _ in range(X.ambient_dim))


# ---------------------------------------------------------------------------

@criterion(1, "balancing closure on a 50-cycle corpus")
def test_balancing_closure(corpus50):
    rng = random.Random(101)
    assert len(corpus50) >= 50
    checked = 0
    for name, X in corpus50:
        n = X.ambient_dim
        assert X.is_balanced(), name
        outs = []
        outs.append(divisor(random_polynomial(rng, n, 3, 1), X))
        A = random_matrix(rng, n - 1, n) if rng.randint(0, 1) else random_matrix(rng, n, n)
        outs.append(pushforward(IntegerAffineMap.linear(A), X))
        outs.append(stable_intersect(X, hypersurface(rng, n)))
        outs.append(recession_cycle(X))
        outs.append(star(X, some_vertex(X)))
        outs.append(add(X, scale(X.translate(random_vector(rng, n)), rng.choice((-1, 2)))))
        for Y in outs:
            assert Y.balancing_check() == [], name
            checked += 1
    assert checked >= 300


@criterion(2, "divisor ground truth")
def test_divisor_ground_truth(corpus50):
    f = TropicalPolynomial.make([((1, 0), 0), ((0, 1), 0), ((0, 0), 0)])
    L = divisor(f, whole(2))
    assert L.dim == 1
    got = sorted((P.vertices, P.rays, w) for P, w in L.facets)
    zero = (Fraction(0), Fraction(0))
    assert got == sorted([((zero,), ((-1, 0),), 1), ((zero,), ((0, -1),), 1),
                          ((zero,), ((1, 1),), 1)])
    assert cycle_equal(L, tropical_line(2))
    rng = random.Random(2)
    for name, X in corpus50[:20]:
        n = X.ambient_dim
        lin = [rng.randint(-3, 3) for _ in range(n)]
        aff = PLFunction.affine(lin, Fraction(rng.randint(-5, 5), 2))
        assert divisor(aff, X).is_zero(), name


@criterion(3, "projection formula on 200 triples")
def test_projection_formula():
    rng = random.Random(3)
    count = 0
    while count < 200:
        n = rng.choice((2, 3))
        m = rng.choice((1, 2)) if n == 2 else rng.choice((2, 3))
        Z = random_curve(rng, n) if rng.randint(0, 3) else random_fan_curve(rng, n)
        A = random_matrix(rng, m, n)
        shift = random_vector(rng, m)
        f = IntegerAffineMap(A, shift)
        phi = random_polynomial(rng, m, rng.choice((2, 3)), 1).to_pl()
        assert projection_formula_check(f, phi, Z)
        count += 1


def _ring_pairs():
    rng = random.Random(4)
    pairs = []
    for _ in range(8):
        pairs.append((random_curve(rng, 2), random_curve(rng, 2)))
    for _ in range(4):
        pairs.append((random_surface(rng, 3), random_curve(rng, 3)))
    for _ in range(3):
        pairs.append((random_surface(rng, 3), random_surface(rng, 3)))
    pairs.append((tropical_line(2), tropical_line(2).translate((1, 2))))
    pairs.append((staircase_curve(), tropical_line(2).translate((Fraction(1, 2), 3))))
    return pairs


@criterion(4, "stable intersection ring laws and displacement oracle")
def test_intersection_ring():
    rng = random.Random(40)
    pairs = _ring_pairs()
    for X, Y in pairs:
        n = X.ambient_dim
        assert cycle_equal(stable_intersect(X, whole(n)), X)
        XY = stable_intersect(X, Y)
        assert cycle_equal(XY, stable_intersect(Y, X))
        assert cycle_equal(XY, displacement_oracle(X, Y))
        f = random_polynomial(rng, n, 3, 1)
        if X.dim + Y.dim - n >= 1:
            lhs = stable_intersect(divisor(f, X), Y)
            rhs = divisor(f, XY)
            assert cycle_equal(lhs, rhs)
    # associativity on triples of surfaces and curves in Q^3, curves in Q^2
    for _ in range(3):
        S1, S2 = random_surface(rng, 3), random_surface(rng, 3)
        C = random_curve(rng, 3) if rng.randint(0, 1) else random_surface(rng, 3)
        lhs = stable_intersect(stable_intersect(S1, S2), C)
        rhs = stable_intersect(S1, stable_intersect(S2, C))
        assert cycle_equal(lhs, rhs)
    for _ in range(2):
        A, B = random_curve(rng, 2), random_curve(rng, 2)
        lhs = stable_intersect(stable_intersect(A, hypersurface(rng, 2)), whole(2))
        rhs = stable_intersect(A, stable_intersect(hypersurface(rng, 2), whole(2)))
        assert lhs.dim == rhs.dim == 0
        assert cycle_equal(stable_intersect(stable_intersect(A, B), whole(2)),
                           stable_intersect(A, stable_intersect(B, whole(2))))


@criterion(5, "Bezout for tropical lines")
def test_bezout_lines():
    L = tropical_line(2)
    for v in [(1, 2), (-3, 1), (Fraction(1, 2), Fraction(-5, 3)), (2, -7)]:
        assert degree_pairing(L, L.translate(v)) == 1
    assert degree_pairing(L, L) == 1


@criterion(6, "recession fan suite")
def test_recession_suite():
    rng = random.Random(6)
    for i in range(20):
        n = 2 + i % 3
        F = random_fan_curve(rng, n) if i % 2 else recession_cycle(random_surface(rng, 3))
        v = random_vector(rng, F.ambient_dim)
        assert cycle_equal(recession_cycle(F.translate(v)), F)
        assert cycle_equal(recession_cycle(F), F)
    for i in range(50):
        n = 2 + i % 2
        X, Y = random_curve(rng, n), random_curve(rng, n)
        lhs = recession_cycle(add(X, Y))
        rhs = add(recession_cycle(X), recession_cycle(Y))
        assert cycle_equal(lhs, rhs)


@criterion(7, "decomposition of curves into translated fans")
def test_decompose_curves():
    rng = random.Random(7)
    curves = [random_curve(rng, 2 + i % 2) for i in range(30)] + [staircase_curve()]
    for X in curves:
        w = decompose(X)
        assert cycle_equal(w.resum(), X)
        fans = add_all([F for F, _ in w.summands], X.ambient_dim, X.dim)
        assert cycle_equal(fans, recession_cycle(X))
        assert all(F.is_fan() and not F.is_zero() for F, _ in w.summands)
    # first step on the staircase: a new vertex on the leg {x = 2, y < -2}
    X = staircase_curve()
    Xt, _, _ = subtract_star_step(X)
    new = set()
    for P, w in Xt.facets:
        for v in P.vertices:
            if v[0] == 2 and v[1] < -2:
                new.add((v, w))
    assert new and any(w == -1 for _, w in new)
    w = decompose(X)
    assert 3 <= len(w.summands) <= 4


@criterion(8, "recession decider for bounded equivalence")
def test_equivalence_decider():
    rng = random.Random(8)
    for i in range(10):
        X = random_curve(rng, 2 + i % 2)
        v = random_vector(rng, X.ambient_dim)
        assert recession_equiv(X, X.translate(v)).verdict == "EQUIVALENT"
    L = tropical_line(2)
    rep = recession_equiv(L, scale(L, 2))
    assert rep.verdict == "NOT_EQUIVALENT"
    assert rep.test_cycle is not None and rep.degrees[0] != rep.degrees[1]
    assert degree_pairing(L, rep.test_cycle) == rep.degrees[0]
    for i in range(30):
        n = 2 if i < 27 else 3
        X = random_curve(rng, n)
        Y = X.translate(random_vector(rng, n)) if i % 2 else recession_cycle(X)
        assert cycle_equal(recession_cycle(X), recession_cycle(Y))
        assert numerical_equiv_sample(X, Y, 20)


@criterion(9, "general Bezout on 50 pairs")
def test_general_bezout():
    rng = random.Random(9)
    count = 0
    for i in range(50):
        kind = i % 5
        if kind < 3:
            X, Y = random_curve(rng, 2), random_curve(rng, 2)
        elif kind == 3:
            X, Y = random_surface(rng, 3), random_curve(rng, 3)
        else:
            X, Y = random_surface(rng, 3), random_surface(rng, 3)
        assert bezout_check(X, Y)
        count += 1
    assert count >= 50


@criterion(10, "bounded witnesses of 0-cycles have degree 0")
def test_witness_degree_zero():
    rng = random.Random(10)
    seen = 0
    for i in range(12):
        n = 1 + i % 3
        pts = [TropicalCycle.point(random_vector(rng, n), rng.choice((1, 2, -1)))
               for _ in range(1 + i % 2)]
        X = add_all(pts, n, 0)
        if X.is_zero():
            continue
        v = random_vector(rng, n)
        for w in translation_witness(X, v):
            assert w.claim.dim == 0
            assert w.bounded()
            assert degree0(w.claim) == 0
            seen += 1
    P = TropicalCycle.point((0,))
    (w,) = translation_witness(P, (1,))
    assert cycle_equal(w.claim, add(P, scale(TropicalCycle.point((1,)), -1)))
    assert seen >= 10


def _bounded_phi(rng, n):
    lin = tuple(rng.choice((-1, 0, 1, 2)) for _ in range(n))
    if not any(lin):
        lin = (1,) + lin[1:]
    a = Fraction(rng.randint(-3, 0))
    b = a + rng.randint(1, 3)
    zero = (0,) * n
    num = TropicalPolynomial.make([(lin, 0), (zero, a)])
    den = TropicalPolynomial.make([(lin, 0), (zero, b)])
    return RationalFunctionExpr(num, den), min(a, b) - 1, max(a, b) + 1


@criterion(11, "family fibers bridge")
def test_family_fibers():
    rng = random.Random(11)
    families = 0
    # products X x Q: all fibers agree
    for _ in range(8):
        X = random_curve(rng, 2)
        F = product(X, whole(1))
        assert family_fibers_check(F, rng.randint(-3, 3), rng.randint(-3, 3))
        assert fiber(F, 0) == X
        families += 1
    # graphs of bounded functions: far fibers are 0 and the divisor
    for i in range(12):
        Y = random_curve(rng, 2)
        phi, lo, hi = _bounded_phi(rng, 2)
        G = graph_cycle(phi, Y)
        assert G.is_balanced()
        assert fiber(G, hi + 5).is_zero()
        assert cycle_equal(fiber(G, lo - 5), divisor(phi, Y))
        assert family_fibers_check(G, lo - 5, hi + 5)
        if i % 3 == 0:
            # push the family forward along f x id
            A = random_matrix(rng, 2, 2, -1, 1)
            fx = IntegerAffineMap.linear([row + [0] for row in A] + [[0, 0, 1]])
            H = pushforward(fx, G)
            f = IntegerAffineMap.linear(A)
            assert cycle_equal(fiber(H, lo - 5), pushforward(f, divisor(phi, Y)))
            assert fiber(H, hi + 5).is_zero()
        families += 1
    # pencils of translated lines: (x, t) -> (x + t v, t) applied to L x Q
    L = tropical_line(2)
    for _ in range(10):
        v = [rng.randint(-2, 2), rng.randint(-2, 2)]
        shear = IntegerAffineMap.linear([[1, 0, v[0]], [0, 1, v[1]], [0, 0, 1]])
        F = pushforward(shear, product(L, whole(1)))
        p, q = rng.randint(-3, 3), rng.randint(-3, 3)
        assert family_fibers_check(F, p, q)
        assert cycle_equal(fiber(F, p), L.translate((p * v[0], p * v[1])))
        families += 1
    assert families >= 30


@criterion(12, "local profiles of the marked curve")
def test_marked_curve_profiles():
    X, (p1, p2, p3) = marked_curve()
    got = [(profile(X, p).l, profile(X, p).s) for p in (p1, p2, p3)]
    assert got == [(0, 1), (1, 1), (0, 0)]


@criterion(13, "simplicial completion of 20 fans in Q^3")
def test_simplicial_completion():
    rng = random.Random(13)
    for i in range(20):
        if i % 2:
            F = random_fan_curve(rng, 3, 3 + i % 2)
        else:
            F = recession_cycle(random_surface(rng, 3))
        theta, sub = simplicial_completion(F)
        assert theta.is_simplicial()
        assert theta.audit()
        cones = {C.key for C in theta.cones(F.dim)}
        assert all(C.key in cones for C, _ in sub)
        assert cycle_equal(TropicalCycle.from_cells(3, sub, dim=F.dim), F)


def _random_codim1_fan(rng, n):
    if n == 2:
        return random_fan_curve(rng, 2, rng.choice((3, 4)))
    kind = rng.randint(0, 2)
    if kind == 0:
        return product(random_fan_curve(rng, 2), whole(1))
    if kind == 1:
        while True:
            f = random_polynomial(rng, 3, 3, 1)
            f = TropicalPolynomial.make([(e, 0) for e, _ in f.terms])
            D = divisor(f, whole(3))
            if not D.is_zero():
                return D
    A = random_matrix(rng, 3, 3, -1, 1)
    while _det3(A) == 0:
        A = random_matrix(rng, 3, 3, -1, 1)
    return pushforward(IntegerAffineMap.linear(A), product(tropical_line(2), whole(1)))


def _det3(A):
    return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
            - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
            + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))


@criterion(14, "divisor inversion round trip")
def test_invert_divisor_roundtrip():
    rng = random.Random(14)
    for i in range(20):
        n = 2 if i < 10 else 3
        D = _random_codim1_fan(rng, n)
        assert D.is_balanced() and D.is_fan()
        q = invert_divisor(D)
        assert cycle_equal(divisor(q, whole(n)), D)


@criterion(15, "inconclusive splitting search is reported, never guessed")
def test_oracle_incomplete(tmp_path):
    from troplith import io
    from troplith.cli import main
    from troplith.intersection import simplex_fan

    plane = simplex_fan(3, 2)
    assert spldim(plane) == UNKNOWN
    rng = random.Random(15)
    inputs = [plane.translate((1, 2, 3)),
              add(plane, plane.translate((5, 0, 0)))]
    for X in inputs:
        with pytest.raises(OracleIncomplete):
            decompose(X)
    path = tmp_path / "plane.json"
    path.write_text(io.dumps(io.cycle_to_doc(inputs[0])))
    import contextlib
    import io as sio
    buf = sio.StringIO()
    with contextlib.redirect_stdout(buf):
        rc = main(["decompose", str(path)])
    assert rc == 4
    doc = io.loads(buf.getvalue())
    assert doc["error"] == "ORACLE_INCOMPLETE" and doc["reason"] == "SPLDIM_UNKNOWN"
    assert "summands" not in doc
    # dimension 2 cases the oracle does decide still decompose
    S = product(random_curve(rng, 2), whole(1))
    assert cycle_equal(decompose(S).resum(), S)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
