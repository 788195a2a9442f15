from fractions import Fraction

import pytest

from troplith.arith import INFINITE
from troplith.corpus import tropical_line
from troplith.cycle import TropicalCycle, cycle_equal
from troplith.errors import DomainError
from troplith.morphism import (
    IntegerAffineMap,
    compose,
    image_weight,
    projection,
    projection_formula_check,
    pushforward,
)
from troplith.plfunction import TropicalPolynomial
from troplith.polyhedron import Polyhedron


def test_doubling_map_weight():
    f = IntegerAffineMap.linear([[2]])
    Z = pushforward(f, TropicalCycle.whole_space(1))
    assert [w for _, w in Z.facets] == [2]


def test_projection_of_line():
    Z = pushforward(projection(2, [0]), tropical_line(2))
    assert cycle_equal(Z, TropicalCycle.whole_space(1))


def test_contracted_cells_vanish():
    P = Polyhedron.from_generators([(0, 0)], [(0, 1)])
    _, idx = image_weight(projection(2, [0]), P)
    assert idx == INFINITE


def test_compose_order():
    f = IntegerAffineMap([[1, 1]], (1,))
    g = IntegerAffineMap([[3]], (-2,))
    h = compose(f, g)
    assert h((2, 5)) == g(f((2, 5)))


def test_domain_check():
    L = tropical_line(2)
    with pytest.raises(DomainError):
        IntegerAffineMap(((1, 0), (0, 1)), (0, 0), domain=L, codomain=L.translate((1, 0)))


def test_non_integral_matrix_rejected():
    with pytest.raises(DomainError):
        IntegerAffineMap(((Fraction(1, 2),),), (0,))


def test_projection_formula_simple():
    f = IntegerAffineMap.linear([[1, 1], [0, 1]])
    phi = TropicalPolynomial.make([((1, 0), 0), ((0, 1), 1), ((0, 0), 0)]).to_pl()
    assert projection_formula_check(f, phi, tropical_line(2).translate((1, 2)))
