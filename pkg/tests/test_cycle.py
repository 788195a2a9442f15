from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from troplith.corpus import staircase_curve, tropical_line
from troplith.cycle import (
    TropicalCycle,
    add,
    balancing_check,
    cycle_equal,
    degree0,
    product,
    scale,
)
from troplith.errors import NotAComplexError
from troplith.polyhedron import Polyhedron

G = Polyhedron.from_generators


def test_subdivided_line_equals_line():
    line = TropicalCycle(2, 1, [(G([(0, 0)], [], [(1, 0)]), 1)])
    pieces = TropicalCycle.from_cells(2, [
        (G([(0, 0)], [(1, 0)]), 1),
        (G([(0, 0), (-3, 0)]), 1),
        (G([(-3, 0)], [(-1, 0)]), 1),
    ])
    assert cycle_equal(line, pieces)
    assert len(pieces.facets) == 1


def test_add_negative_is_zero():
    X = staircase_curve()
    assert add(X, scale(X, -1)).is_zero()
    assert (X - X).is_zero()


def test_overlapping_cells_add_weights():
    X = TropicalCycle.from_cells(1, [(G([(0,), (2,)]), 1), (G([(1,), (3,)]), 1)])
    assert X.weight_at((Fraction(3, 2),)) == 2
    assert X.weight_at((Fraction(1, 2),)) == 1
    assert X.weight_at((5,)) == 0


def test_translate_and_back():
    L = tropical_line(2)
    assert cycle_equal(L.translate((1, 2)).translate((-1, -2)), L)
    assert not cycle_equal(L.translate((1, 2)), L)


def test_from_structure_rejects_non_complex():
    with pytest.raises(NotAComplexError):
        TropicalCycle.from_structure(1, [(G([(0,), (2,)]), 1), (G([(1,), (3,)]), 1)])


def test_balancing_check_reports_defect():
    cells = [(G([(0, 0)], [(1, 0)]), 1), (G([(0, 0)], [(0, 1)]), 1)]
    defects = balancing_check(cells)
    assert len(defects) == 1
    assert defects[0][1] == (1, 1)
    assert tropical_line(2).balancing_check() == []


def test_product_dimensions():
    L = tropical_line(2)
    P = product(L, TropicalCycle.whole_space(1))
    assert (P.ambient_dim, P.dim) == (3, 2)
    assert P.is_balanced()


def test_degree0():
    Z = add(TropicalCycle.point((0, 0), 3), TropicalCycle.point((1, 1), -1))
    assert degree0(Z) == 2


@settings(max_examples=25, deadline=None)
@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(1, 4), st.integers(1, 3))
def test_translation_commutes_with_scaling(a, b, den, m):
    L = staircase_curve()
    v = (Fraction(a, den), Fraction(b, den))
    assert cycle_equal(scale(L, m).translate(v), scale(L.translate(v), m))
