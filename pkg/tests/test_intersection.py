from fractions import Fraction

import pytest

from troplith.corpus import tropical_line
from troplith.polyhedron import Polyhedron
from troplith.cycle import TropicalCycle, cycle_equal, product, scale
from troplith.errors import DimensionMismatch, NonGenericError
from troplith.intersection import (
    degree_pairing,
    displacement_oracle,
    find_refutation,
    numerical_equiv_sample,
    simplex_fan,
    stable_intersect,
)

L = tropical_line(2)


def test_two_lines_meet_in_one_point():
    Z = stable_intersect(L, L.translate((1, 2)))
    assert cycle_equal(Z, TropicalCycle.point((1, 1)))


def test_self_intersection_is_vertex():
    assert cycle_equal(stable_intersect(L, L), TropicalCycle.point((0, 0)))


def test_degree_scales():
    assert degree_pairing(scale(L, 2), L.translate((3, -1))) == 2


def test_negative_expected_dimension():
    Z = stable_intersect(TropicalCycle.point((0, 0)), L)
    assert Z.is_zero()


def test_ambient_mismatch():
    with pytest.raises(DimensionMismatch):
        stable_intersect(L, TropicalCycle.whole_space(3))


def test_displacement_matches_with_explicit_vector():
    M = L.translate((Fraction(1, 2), 2))
    assert cycle_equal(displacement_oracle(L, M, (1, 3)), stable_intersect(L, M))


def test_non_generic_displacement():
    # v lies in the span of the spine of X and the direction of Y: the moved
    # line keeps crossing the spine and would be counted on every sheet
    X = product(L, TropicalCycle.whole_space(1))
    Y = TropicalCycle(3, 1, [(Polyhedron.from_generators([(0, 0, 0)], [], [(1, 1, -2)]), 1)])
    with pytest.raises(NonGenericError):
        displacement_oracle(X, Y, (1, 1, 0))
    assert cycle_equal(displacement_oracle(X, Y), stable_intersect(X, Y))


def test_simplex_fan_balanced():
    for n, k in [(2, 1), (3, 1), (3, 2), (4, 2)]:
        assert simplex_fan(n, k).is_balanced()


def test_numerical_refutation():
    assert numerical_equiv_sample(L, L.translate((5, 1)))
    Z, a, b = find_refutation(L, scale(L, 2))
    assert (a, b) == (degree_pairing(L, Z), 2 * degree_pairing(L, Z))
