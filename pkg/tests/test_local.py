import pytest

from troplith.arith import INFINITE
from troplith.corpus import marked_curve, tropical_line
from troplith.cycle import TropicalCycle, add, cycle_equal, product
from troplith.errors import OracleIncomplete
from troplith.intersection import simplex_fan
from troplith.local import (
    UNKNOWN,
    lindim,
    lineality_space,
    profile,
    skeleton_l,
    skeleton_s,
    spldim,
    star,
    star_compatibility_check,
)
from troplith.morphism import IntegerAffineMap, pushforward
from troplith.polyhedron import Polyhedron

G = Polyhedron.from_generators


def cross():
    return TropicalCycle(2, 1, [(G([(0, 0)], [], [(1, 0)]), 1), (G([(0, 0)], [], [(0, 1)]), 1)])


def test_star_at_vertex_and_edge():
    L = tropical_line(2).translate((1, 1))
    assert cycle_equal(star(L, (1, 1)), tropical_line(2))
    S = star(L, (1, 0))
    assert cycle_equal(S, TropicalCycle(2, 1, [(G([(0, 0)], [], [(0, 1)]), 1)]))
    assert star(L, (5, 0)).is_zero()


def test_lineality():
    assert lindim(tropical_line(2)) == 0
    P = product(tropical_line(2), TropicalCycle.whole_space(1))
    V = lineality_space(P)
    assert V.dim == 1 and V.contains_vector((0, 0, 1))
    assert lindim(TropicalCycle.zero(2, 1)) == INFINITE


def test_spldim_values():
    assert spldim(cross()) == 1
    assert spldim(tropical_line(2)) == 0
    assert spldim(TropicalCycle.zero(2, 1)) == INFINITE
    assert spldim(TropicalCycle.point((0, 0))) == 0
    P = product(tropical_line(2), TropicalCycle.whole_space(1))
    assert spldim(P) == 1
    planes = add(TropicalCycle(3, 2, [(G([(0, 0, 0)], [], [(1, 0, 0), (0, 1, 0)]), 1)]),
                 TropicalCycle(3, 2, [(G([(0, 0, 0)], [], [(0, 1, 0), (0, 0, 1)]), 2)]))
    assert spldim(planes) == 2
    assert spldim(simplex_fan(3, 2)) == UNKNOWN


def test_spldim_peel_certificate():
    A = product(tropical_line(2), TropicalCycle.whole_space(1))
    B = pushforward(IntegerAffineMap.linear([[0, 0, 1], [1, 0, 0], [0, 1, 0]]), A)
    F = add(A, B)
    assert lindim(F) == 0
    assert spldim(F) == 1


def test_marked_curve_profiles():
    X, (p1, p2, p3) = marked_curve()
    assert [(profile(X, p).l, profile(X, p).s) for p in (p1, p2, p3)] == [(0, 1), (1, 1), (0, 0)]


def test_skeleta_of_marked_curve():
    X, (_, _, p3) = marked_curve()
    s0 = skeleton_s(X, 0)
    assert len(s0) == 1 and s0[0].vertices == (p3,)
    l0 = skeleton_l(X, 0)
    assert len(l0) == 2


def test_skeleton_reports_unknown():
    with pytest.raises(OracleIncomplete):
        skeleton_s(simplex_fan(3, 2), 0)


def test_star_compatibility():
    X, pts = marked_curve()
    for p in pts:
        for k in (0, 1):
            assert star_compatibility_check(X, p, k)
