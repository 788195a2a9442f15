from troplith.corpus import staircase_curve, tropical_line
from troplith.cycle import TropicalCycle, cycle_equal, product, scale
from troplith.intersection import simplex_fan
from troplith.polyhedron import Polyhedron
from troplith.recession import arrangement_fan, recession_cycle, simplicial_completion


def test_coordinate_arrangement():
    fan = arrangement_fan([(1, 0), (0, 1)], 2)
    assert len(fan.maximal_cones) == 4
    assert fan.is_simplicial() and fan.audit()


def test_recession_of_translate():
    L = tropical_line(2)
    assert cycle_equal(recession_cycle(L.translate((3, -7))), L)


def test_recession_of_staircase_doubles_line():
    R = recession_cycle(staircase_curve())
    assert cycle_equal(R, scale(tropical_line(2), 2))
    assert R.is_balanced()


def test_bounded_parts_drop_out():
    X = TropicalCycle.from_cells(1, [(Polyhedron.from_generators([(0,), (1,)]), 1)])
    assert recession_cycle(X).is_zero()


def test_completion_of_plane_fan():
    F = simplex_fan(3, 2)
    theta, sub = simplicial_completion(F)
    assert theta.is_simplicial() and theta.audit()
    assert cycle_equal(TropicalCycle.from_cells(3, sub, dim=2), F)


def test_completion_of_product_fan():
    F = product(tropical_line(2), TropicalCycle.whole_space(1))
    theta, sub = simplicial_completion(F)
    assert theta.audit()
    assert cycle_equal(TropicalCycle.from_cells(3, sub, dim=2), F)
